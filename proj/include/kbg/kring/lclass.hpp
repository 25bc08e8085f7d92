#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kbg/kring/lpoly.hpp"

namespace kbg::kring {

// Element of Z[L, L^-1, (L^n - 1)^-1] held in the canonical form
//   num / (L^den_lpow * prod_i (L^{den_cyc[i]} - 1))
// The fraction is first reduced (cyclotomic factors cancelled), then its
// denominator is rewritten as a product of factors L^n - 1 by repeatedly taking
// the largest remaining cyclotomic index. The power of L sits entirely in the
// numerator or entirely in the denominator.
class LClass {
 public:
  LClass() = default;
  LClass(long c);  // NOLINT
  explicit LClass(const LPoly& p);
  // Canonicalises an arbitrary representative.
  static LClass from_parts(const LPoly& num, const std::vector<int>& den_cyc, int den_lpow);
  static LClass L() { return LClass(LPoly::L()); }

  const LPoly& numerator() const { return num_; }
  const std::vector<int>& den_cyc() const { return den_cyc_; }
  int den_lpow() const { return den_lpow_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_cyc_.empty() && den_lpow_ == 0; }

  LClass operator+(const LClass& o) const;
  LClass operator-(const LClass& o) const;
  LClass operator-() const;
  LClass operator*(const LClass& o) const;
  // Throws DivisionByNonUnit unless o is a unit.
  LClass operator/(const LClass& o) const;
  LClass& operator+=(const LClass& o) { return *this = *this + o; }
  LClass& operator-=(const LClass& o) { return *this = *this - o; }
  LClass& operator*=(const LClass& o) { return *this = *this * o; }
  bool operator==(const LClass& o) const;
  bool operator!=(const LClass& o) const { return !(*this == o); }
  bool operator<(const LClass& o) const;  // arbitrary total order for containers

  bool is_unit() const;
  LClass inverse() const;
  LClass pow(int e) const;
  // f(L) -> f(L^k), k >= 1.
  LClass substitute_power(int k) const;
  // Value at L = q for an integer q >= 2.
  BigRat evaluate(const BigInt& q) const;

  std::string to_string() const;
  static LClass parse(const std::string& text);

 private:
  LPoly num_;
  std::vector<int> den_cyc_;
  int den_lpow_ = 0;
};

// Cyclotomic exponents of prod_i (L^{n_i} - 1): d -> multiplicity of Phi_d.
std::map<int, int> cyclotomic_exponents(const std::vector<int>& ns);

// Factor p = sign * L^shift * prod Phi_d^{e_d}; nullopt if p has another factor.
struct CyclotomicFactorisation {
  int sign = 1;
  int shift = 0;
  std::map<int, int> exps;
};
std::optional<CyclotomicFactorisation> factor_cyclotomic(const LPoly& p);

}  // namespace kbg::kring
