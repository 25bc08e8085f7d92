#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/poly.hpp"
#include "kbg/reps/character.hpp"
#include "kbg/toric/fan.hpp"

namespace kbg::toric {

// Polynomial (or truncated series) in one variable with character coefficients.
struct CharSeries {
  reps::GroupPtr group;
  std::vector<reps::VirtualCharacter> coeffs;
  std::string var = "s";
  int truncation = -1;  // -1: exact polynomial
  bool operator==(const CharSeries& o) const { return coeffs == o.coeffs; }
  int degree() const;
  std::string to_string() const;
  nlohmann::json to_json() const;
};

// det(1 - s A) as a polynomial.
IntPoly det_one_minus(const IntMatrix& A);

// Hilbert series of the Chow ring as characters: for each g the value is
// det(1 - s g|N) sum_{gT = T} s^|T| prod_{cycles c of g on T} 1/(1 - s^|c|).
// Throws NonPolynomial if the value at some g is not a polynomial of degree <= n.
CharSeries chow_characters(const GFan& f);

// sum over g-stable faces of (-1)^|T| sign(g on T), including the empty face.
reps::VirtualCharacter signature_character(const GFan& f);

struct DegreeCheck {
  int k = 0;
  bool pass = false;
  reps::VirtualCharacter computed;  // from the inclusion-exclusion
  reps::VirtualCharacter expected;
};

struct NsReport {
  std::string fan;
  int n = 0;
  CharSeries ns;  // NS_s({U}) from the stratification
  std::vector<DegreeCheck> part1;  // NS^k = (-1)^(n-k) Lambda^(n-k) M
  bool part1_pass = false;
  reps::VirtualCharacter ker_minus_rays;  // {ker f} - {Z[S]}
  bool part2_pass = false;
  bool signature_pass = false;  // signature character = (-1)^n Lambda^n M
  bool telescopes = false;      // degree exactly n with trivial leading coefficient
  bool pass() const { return part1_pass && part2_pass && signature_pass && telescopes; }
  nlohmann::json to_json() const;
};

NsReport ns_torus_check(const GFan& f);

// Finite abelian group sum Z/orders[i] with a group acting through integer matrices
// on coordinate vectors (one matrix per group element).
struct FiniteModule {
  std::vector<long> orders;
  reps::GroupPtr group;
  std::vector<IntMatrix> action;
  std::string name;
  IntVec reduce(const IntVec& v) const;
  static FiniteModule cyclic_trivial(int n);
  static FiniteModule mu(int p);  // Z/p with (Z/p)^* acting by multiplication
  static FiniteModule z4_inversion();
};

struct BAReport {
  std::string module;
  CharSeries via_tori;  // lambda_t({M'}) lambda_t({M})^{-1}, t = -1/s
  CharSeries direct;    // lambda_t({M'} - {M})
  bool agree = false;
  reps::VirtualCharacter class_of_a;  // {M'} - {M}
  bool degree_one_matches = false;    // coefficient of t is {M'} - {M}
  bool trivial_action = false;
  bool is_one = false;
  // Z[S]/N' recovers the module: invariant factors of the kernel lattice index
  std::vector<BigInt> quotient_invariants;
  bool quotient_matches = false;
  nlohmann::json to_json() const;
};

// S: G-stable generating set of A. Throws NotGenerating otherwise.
BAReport bclass_abelian_series(const FiniteModule& a, const std::vector<IntVec>& s, int order = 6);
// All non-zero elements of the module as the generating set.
std::vector<IntVec> all_nonzero(const FiniteModule& a);

}  // namespace kbg::toric
