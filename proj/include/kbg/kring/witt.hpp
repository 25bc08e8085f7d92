#pragma once

#include <vector>

#include "kbg/kring/lclass.hpp"

namespace kbg::kring {

// Truncated big Witt vector 1 + a_1 t + ... + a_N t^N with coefficients in
// the localised ring. "Addition" of Witt vectors is the series product.
class WittSeries {
 public:
  explicit WittSeries(int order = 0);
  static WittSeries from_coeffs(std::vector<LClass> a);  // a[0] must be 1

  int order() const { return static_cast<int>(a_.size()) - 1; }
  const LClass& coeff(int n) const { return a_.at(n); }
  LClass& coeff(int n) { return a_.at(n); }
  const std::vector<LClass>& coeffs() const { return a_; }

  WittSeries operator*(const WittSeries& o) const;  // series product
  WittSeries inverse() const;                        // series inverse
  WittSeries pow(int e) const;                       // e may be negative
  // t -> c t
  WittSeries scale(const LClass& c) const;
  bool operator==(const WittSeries& o) const { return a_ == o.a_; }
  bool operator!=(const WittSeries& o) const { return !(*this == o); }

 private:
  std::vector<LClass> a_;
};

// lambda_t(f) = prod_i (1 + L^i t)^{n_i} for f = sum n_i L^i.
WittSeries lambda_series(const LPoly& f, int order);
// sigma_t(f) = prod_m (1 - L^m t)^{-c_m}.
WittSeries sigma_series(const LPoly& f, int order);

// Witt product of lambda_t(f) with y: prod_i y(L^i t)^{n_i}.
WittSeries witt_product_with_poly(const LPoly& f, const WittSeries& y);

// The unique y with lambda_t(f) * y = 1 + t in the Witt ring, for f a unit of
// the localisation; throws NotInS otherwise.
WittSeries witt_localized_inverse(const LPoly& f, int order);

// Euler-characteristic style specialisation: L -> q, expanded as a Laurent
// series in u = q^{-1}; coefficient k is the coefficient of q^{-k}, and the
// series is exact for k <= depth.
class EulerSeries {
 public:
  EulerSeries() = default;
  EulerSeries(std::map<int, BigInt> c, int depth);
  const std::map<int, BigInt>& coeffs() const { return c_; }
  int depth() const { return depth_; }
  BigInt coeff(int k) const;
  int min_index() const { return c_.empty() ? depth_ : c_.begin()->first; }

  EulerSeries operator+(const EulerSeries& o) const;
  EulerSeries operator-(const EulerSeries& o) const;
  EulerSeries operator*(const EulerSeries& o) const;
  EulerSeries truncate(int depth) const;
  bool operator==(const EulerSeries& o) const { return depth_ == o.depth_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  std::map<int, BigInt> c_;
  int depth_ = 0;
};

// Default depth: twice the total degree of the canonical form plus 4.
int default_euler_depth(const LClass& x);
EulerSeries euler_specialize(const LClass& x, int depth);

}  // namespace kbg::kring
