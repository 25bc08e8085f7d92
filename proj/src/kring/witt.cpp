#include "kbg/kring/witt.hpp"

#include <algorithm>
#include <sstream>

#include "kbg/errors.hpp"

namespace kbg::kring {

WittSeries::WittSeries(int order) : a_(order + 1, LClass(0)) { a_[0] = LClass(1); }

WittSeries WittSeries::from_coeffs(std::vector<LClass> a) {
  if (a.empty() || a[0] != LClass(1)) throw InvalidArgument("Witt series must start with 1");
  WittSeries w;
  w.a_ = std::move(a);
  return w;
}

WittSeries WittSeries::operator*(const WittSeries& o) const {
  int N = std::min(order(), o.order());
  WittSeries r(N);
  for (int n = 1; n <= N; ++n) {
    LClass s(0);
    for (int k = 0; k <= n; ++k)
      if (!a_[k].is_zero() && !o.a_[n - k].is_zero()) s += a_[k] * o.a_[n - k];
    r.a_[n] = s;
  }
  return r;
}

WittSeries WittSeries::inverse() const {
  int N = order();
  WittSeries r(N);
  for (int n = 1; n <= N; ++n) {
    LClass s(0);
    for (int k = 1; k <= n; ++k)
      if (!a_[k].is_zero() && !r.a_[n - k].is_zero()) s += a_[k] * r.a_[n - k];
    r.a_[n] = -s;
  }
  return r;
}

WittSeries WittSeries::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  WittSeries r(order()), b(*this);
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

WittSeries WittSeries::scale(const LClass& c) const {
  WittSeries r(*this);
  LClass p(1);
  for (int n = 1; n <= order(); ++n) {
    p *= c;
    r.a_[n] = a_[n] * p;
  }
  return r;
}

namespace {

// (1 + c t)^n truncated at order N, for any integer n.
WittSeries binomial_series(const LClass& c, const BigInt& n, int N) {
  WittSeries r(N);
  LClass cp(1);
  BigInt coeff = 1;  // generalised binomial coefficient C(n, k)
  for (int k = 1; k <= N; ++k) {
    coeff = coeff * (n - (k - 1)) / k;
    cp *= c;
    r.coeff(k) = LClass(LPoly::constant(coeff)) * cp;
  }
  return r;
}

}  // namespace

WittSeries lambda_series(const LPoly& f, int order) {
  WittSeries r(order);
  for (const auto& [e, n] : f.terms()) r = r * binomial_series(LClass(LPoly::monomial(e)), n, order);
  return r;
}

WittSeries sigma_series(const LPoly& f, int order) {
  WittSeries r(order);
  for (const auto& [e, n] : f.terms())
    r = r * binomial_series(LClass(LPoly::monomial(e, -1)), BigInt(-n), order);
  return r;
}

WittSeries witt_product_with_poly(const LPoly& f, const WittSeries& y) {
  WittSeries r(y.order());
  for (const auto& [e, n] : f.terms()) {
    if (!n.fits_sint_p()) throw SizeLimit("coefficient too large for Witt power");
    r = r * y.scale(LClass(LPoly::monomial(e))).pow(static_cast<int>(n.get_si()));
  }
  return r;
}

WittSeries witt_localized_inverse(const LPoly& f, int order) {
  if (!factor_cyclotomic(f))
    throw NotInS(f.to_string() + " is not of the form +-L^a prod Phi_d^e");
  std::vector<LClass> a(order + 1, LClass(0));
  a[0] = LClass(1);
  for (int n = 1; n <= order; ++n) {
    std::vector<LClass> head(a.begin(), a.begin() + n + 1);
    head[n] = LClass(0);
    WittSeries partial = witt_product_with_poly(f, WittSeries::from_coeffs(head));
    LClass target(n == 1 ? 1 : 0);
    a[n] = (target - partial.coeff(n)) / LClass(f.substitute_power(n));
  }
  return WittSeries::from_coeffs(std::move(a));
}

EulerSeries::EulerSeries(std::map<int, BigInt> c, int depth) : depth_(depth) {
  for (auto& [k, v] : c)
    if (v != 0 && k <= depth) c_[k] = v;
}

BigInt EulerSeries::coeff(int k) const {
  auto it = c_.find(k);
  return it == c_.end() ? BigInt(0) : it->second;
}

EulerSeries EulerSeries::operator+(const EulerSeries& o) const {
  std::map<int, BigInt> c = c_;
  for (const auto& [k, v] : o.c_) c[k] += v;
  return EulerSeries(std::move(c), std::min(depth_, o.depth_));
}

EulerSeries EulerSeries::operator-(const EulerSeries& o) const {
  std::map<int, BigInt> c = c_;
  for (const auto& [k, v] : o.c_) c[k] -= v;
  return EulerSeries(std::move(c), std::min(depth_, o.depth_));
}

EulerSeries EulerSeries::operator*(const EulerSeries& o) const {
  int da = depth_ + (o.c_.empty() ? 0 : o.min_index());
  int db = o.depth_ + (c_.empty() ? 0 : min_index());
  int d = std::min(da, db);
  std::map<int, BigInt> c;
  for (const auto& [k1, v1] : c_)
    for (const auto& [k2, v2] : o.c_)
      if (k1 + k2 <= d) c[k1 + k2] += v1 * v2;
  return EulerSeries(std::move(c), d);
}

EulerSeries EulerSeries::truncate(int depth) const {
  if (depth > depth_) throw InvalidArgument("cannot extend a truncated series");
  return EulerSeries(c_, depth);
}

std::string EulerSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : c_) {
    if (!first) os << (v < 0 ? " - " : " + ");
    else if (v < 0) os << "-";
    BigInt a = abs(v);
    int e = -k;
    if (a != 1 || e == 0) os << a.get_str();
    if (e != 0) os << (a != 1 ? "*" : "") << "q" << (e != 1 ? "^" + std::to_string(e) : "");
    first = false;
  }
  if (first) os << "0";
  os << " + O(q^" << -(depth_ + 1) << ")";
  return os.str();
}

namespace {

int denominator_degree(const LClass& x) {
  int b = x.den_lpow();
  for (int n : x.den_cyc()) b += n;
  return b;
}

}  // namespace

int default_euler_depth(const LClass& x) {
  int deg = denominator_degree(x);
  if (!x.is_zero()) deg = std::max(deg, std::abs(x.numerator().max_exp()));
  return 2 * deg + 4;
}

EulerSeries euler_specialize(const LClass& x, int depth) {
  if (x.is_zero()) return EulerSeries({}, depth);
  int B = denominator_degree(x);
  int mmax = depth - B + x.numerator().max_exp();
  std::map<int, BigInt> out;
  if (mmax < 0) return EulerSeries({}, depth);
  // G(u) = prod 1/(1 - u^n)
  std::vector<BigInt> g(mmax + 1);
  g[0] = 1;
  for (int n : x.den_cyc())
    for (int m = n; m <= mmax; ++m) g[m] += g[m - n];
  for (const auto& [e, c] : x.numerator().terms())
    for (int m = 0; m <= mmax; ++m) {
      int k = B - e + m;
      if (k > depth) break;
      if (g[m] != 0) out[k] += c * g[m];
    }
  return EulerSeries(std::move(out), depth);
}

}  // namespace kbg::kring
