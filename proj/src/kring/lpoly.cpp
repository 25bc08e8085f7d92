#include "kbg/kring/lpoly.hpp"

#include <sstream>

#include "kbg/errors.hpp"

namespace kbg::kring {

LPoly::LPoly(long c) {
  if (c != 0) t_[0] = c;
}

LPoly LPoly::constant(const BigInt& c) { return monomial(0, c); }

LPoly LPoly::monomial(int exp, const BigInt& c) {
  LPoly p;
  if (c != 0) p.t_[exp] = c;
  return p;
}

LPoly LPoly::l_pow_minus_one(int n) { return monomial(n) - LPoly(1); }

LPoly LPoly::from_poly(const IntPoly& p, int shift) {
  LPoly r;
  for (int i = 0; i <= p.degree(); ++i)
    if (p.coeffs()[i] != 0) r.t_[i + shift] = p.coeffs()[i];
  return r;
}

BigInt LPoly::coeff(int e) const {
  auto it = t_.find(e);
  return it == t_.end() ? BigInt(0) : it->second;
}

void LPoly::set(int e, const BigInt& c) {
  if (c == 0)
    t_.erase(e);
  else
    t_[e] = c;
}

LPoly& LPoly::operator+=(const LPoly& o) {
  for (const auto& [e, c] : o.t_) {
    auto& slot = t_[e];
    slot += c;
    if (slot == 0) t_.erase(e);
  }
  return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) {
  for (const auto& [e, c] : o.t_) {
    auto& slot = t_[e];
    slot -= c;
    if (slot == 0) t_.erase(e);
  }
  return *this;
}

LPoly LPoly::operator+(const LPoly& o) const {
  LPoly r(*this);
  r += o;
  return r;
}

LPoly LPoly::operator-(const LPoly& o) const {
  LPoly r(*this);
  r -= o;
  return r;
}

LPoly LPoly::operator-() const {
  LPoly r;
  for (const auto& [e, c] : t_) r.t_[e] = -c;
  return r;
}

LPoly LPoly::operator*(const LPoly& o) const {
  LPoly r;
  for (const auto& [e1, c1] : t_)
    for (const auto& [e2, c2] : o.t_) r.t_[e1 + e2] += c1 * c2;
  for (auto it = r.t_.begin(); it != r.t_.end();) {
    if (it->second == 0)
      it = r.t_.erase(it);
    else
      ++it;
  }
  return r;
}

LPoly LPoly::operator*(const BigInt& s) const {
  if (s == 0) return LPoly();
  LPoly r(*this);
  for (auto& [e, c] : r.t_) c *= s;
  return r;
}

LPoly LPoly::shift(int k) const {
  LPoly r;
  for (const auto& [e, c] : t_) r.t_[e + k] = c;
  return r;
}

LPoly LPoly::substitute_power(int k) const {
  if (k == 0) {
    BigInt s = 0;
    for (const auto& [e, c] : t_) s += c;
    return constant(s);
  }
  LPoly r;
  for (const auto& [e, c] : t_) r.t_[e * k] = c;
  return r;
}

LPoly LPoly::pow(int e) const {
  if (e < 0) throw InvalidArgument("negative power of a Laurent polynomial");
  LPoly r(1), b(*this);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

IntPoly LPoly::to_poly(int& shift) const {
  if (is_zero()) {
    shift = 0;
    return IntPoly();
  }
  shift = min_exp();
  std::vector<BigInt> v(max_exp() - shift + 1);
  for (const auto& [e, c] : t_) v[e - shift] = c;
  return IntPoly(std::move(v));
}

BigInt LPoly::eval(const BigInt& x) const {
  BigRat r = eval_rational(BigRat(x));
  if (r.get_den() != 1) throw NonIntegral("Laurent polynomial value is not an integer");
  return r.get_num();
}

BigRat LPoly::eval_rational(const BigRat& x) const {
  BigRat r = 0;
  for (const auto& [e, c] : t_) {
    BigRat p = 1;
    BigRat b = e >= 0 ? x : BigRat(1) / x;
    for (int i = 0; i < std::abs(e); ++i) p *= b;
    r += p * BigRat(c);
  }
  return r;
}

std::string LPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    int e = it->first;
    const BigInt& c = it->second;
    BigInt a = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (e == 0 || a != 1) os << a.get_str();
    if (e != 0) os << "L";
    if (e != 0 && e != 1) os << "^" << e;
    first = false;
  }
  return os.str();
}

}  // namespace kbg::kring
