#pragma once

#include <map>
#include <string>

#include "kbg/arith/bigint.hpp"
#include "kbg/arith/poly.hpp"

namespace kbg::kring {

// Laurent polynomial in L with integer coefficients; zero coefficients are never stored.
class LPoly {
 public:
  LPoly() = default;
  LPoly(long c);  // NOLINT: integers embed as constants
  static LPoly constant(const BigInt& c);
  static LPoly monomial(int exp, const BigInt& c = 1);
  static LPoly L() { return monomial(1); }
  // L^n - 1
  static LPoly l_pow_minus_one(int n);
  // shift * p, with p a polynomial in L
  static LPoly from_poly(const IntPoly& p, int shift = 0);

  const std::map<int, BigInt>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  int min_exp() const { return t_.begin()->first; }
  int max_exp() const { return t_.rbegin()->first; }
  BigInt coeff(int e) const;
  void set(int e, const BigInt& c);

  LPoly operator+(const LPoly& o) const;
  LPoly operator-(const LPoly& o) const;
  LPoly operator-() const;
  LPoly operator*(const LPoly& o) const;
  LPoly operator*(const BigInt& s) const;
  LPoly& operator+=(const LPoly& o);
  LPoly& operator-=(const LPoly& o);
  LPoly& operator*=(const LPoly& o) { return *this = *this * o; }
  bool operator==(const LPoly& o) const { return t_ == o.t_; }
  bool operator!=(const LPoly& o) const { return !(*this == o); }

  LPoly shift(int k) const;
  // p(L^k)
  LPoly substitute_power(int k) const;
  LPoly pow(int e) const;
  // Requires min_exp() >= shift_to_zero; returns L^{-min_exp} p as a polynomial.
  IntPoly to_poly(int& shift) const;
  BigInt eval(const BigInt& x) const;  // requires min_exp >= 0 or x a unit
  BigRat eval_rational(const BigRat& x) const;

  std::string to_string() const;

 private:
  std::map<int, BigInt> t_;
};

}  // namespace kbg::kring
