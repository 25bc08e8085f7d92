#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbg/arith/bigint.hpp"

namespace kbg {

// Dense univariate polynomial with integer coefficients, lowest degree first.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(int degree, const BigInt& c = 1);
  // x^n - 1
  static IntPoly x_pow_minus_one(int n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  BigInt coeff(int i) const;
  const BigInt& leading() const { return c_.back(); }
  // Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  int valuation() const;

  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator-() const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const BigInt& s) const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return !(*this == o); }

  IntPoly pow(int e) const;
  // p(x^k)
  IntPoly substitute_power(int k) const;
  // x^k * p(x); k may be negative only if the low coefficients vanish.
  IntPoly shift(int k) const;
  BigInt eval(const BigInt& x) const;
  // Divide by a polynomial with unit leading coefficient.
  std::pair<IntPoly, IntPoly> divmod_monic(const IntPoly& m) const;
  // Quotient if the division is exact over Z, nullopt otherwise.
  std::optional<IntPoly> divide_exact(const IntPoly& d) const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

IntPoly cyclotomic_poly(int n);

}  // namespace kbg
