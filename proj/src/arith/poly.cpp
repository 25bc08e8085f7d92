#include "kbg/arith/poly.hpp"

#include <sstream>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"

namespace kbg {

IntPoly::IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  for (long v : coeffs) c_.emplace_back(v);
  trim();
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(int degree, const BigInt& c) {
  std::vector<BigInt> v(degree + 1);
  v[degree] = c;
  return IntPoly(std::move(v));
}

IntPoly IntPoly::x_pow_minus_one(int n) {
  std::vector<BigInt> v(n + 1);
  v[0] = -1;
  v[n] += 1;
  return IntPoly(std::move(v));
}

BigInt IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

int IntPoly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return 0;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<BigInt> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-() const {
  std::vector<BigInt> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<BigInt> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const BigInt& s) const {
  std::vector<BigInt> r(c_);
  for (auto& x : r) x *= s;
  return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(int e) const {
  IntPoly r = IntPoly::constant(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

IntPoly IntPoly::substitute_power(int k) const {
  if (is_zero()) return IntPoly();
  std::vector<BigInt> r(static_cast<size_t>(degree()) * k + 1);
  for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::shift(int k) const {
  if (is_zero()) return IntPoly();
  if (k >= 0) {
    std::vector<BigInt> r(c_.size() + k);
    for (size_t i = 0; i < c_.size(); ++i) r[i + k] = c_[i];
    return IntPoly(std::move(r));
  }
  if (valuation() < -k) throw InvalidArgument("negative shift would leave a Laurent tail");
  return IntPoly(std::vector<BigInt>(c_.begin() - k, c_.end()));
}

BigInt IntPoly::eval(const BigInt& x) const {
  BigInt r = 0;
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

std::pair<IntPoly, IntPoly> IntPoly::divmod_monic(const IntPoly& m) const {
  if (m.is_zero()) throw InvalidArgument("division by zero polynomial");
  const BigInt& lc = m.leading();
  if (lc != 1 && lc != -1) throw InvalidArgument("divisor leading coefficient is not a unit");
  std::vector<BigInt> r(c_);
  int dm = m.degree();
  if (degree() < dm) return {IntPoly(), *this};
  std::vector<BigInt> q(degree() - dm + 1);
  for (int i = degree(); i >= dm; --i) {
    if (r[i] == 0) continue;
    BigInt f = r[i] * lc;  // lc is its own inverse
    q[i - dm] = f;
    for (int j = 0; j <= dm; ++j) r[i - dm + j] -= f * m.c_[j];
  }
  return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

std::optional<IntPoly> IntPoly::divide_exact(const IntPoly& d) const {
  if (d.is_zero()) throw InvalidArgument("division by zero polynomial");
  if (is_zero()) return IntPoly();
  if (degree() < d.degree()) return std::nullopt;
  std::vector<BigInt> r(c_);
  int dd = d.degree();
  std::vector<BigInt> q(degree() - dd + 1);
  for (int i = degree(); i >= dd; --i) {
    if (r[i] == 0) continue;
    BigInt f;
    if (!divides_exactly(r[i], d.leading(), f)) return std::nullopt;
    q[i - dd] = f;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
  }
  for (const auto& x : r)
    if (x != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = c_[i];
    if (c == 0) continue;
    BigInt a = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (i == 0 || a != 1) os << a.get_str();
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

IntPoly cyclotomic_poly(int n) {
  if (n < 1) throw InvalidArgument("cyclotomic index must be positive");
  IntPoly num = IntPoly::constant(1), den = IntPoly::constant(1);
  for (auto d : divisors(n)) {
    int mu = mobius(n / d);
    if (mu == 1) num *= IntPoly::x_pow_minus_one(static_cast<int>(d));
    if (mu == -1) den *= IntPoly::x_pow_minus_one(static_cast<int>(d));
  }
  auto q = num.divide_exact(den);
  return *q;
}

}  // namespace kbg
