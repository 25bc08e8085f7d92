#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/cyclotomic_field.hpp"
#include "kbg/arith/poly.hpp"

namespace kbg::cyclo {

// Character mod m with values in mu_N, N = carmichael(m).
// exps[a] = k means chi(a) = zeta_N^k; -1 marks gcd(a, m) > 1.
class DirichletChar {
 public:
  DirichletChar(long modulus, std::vector<int> exps);

  long modulus() const { return m_; }
  int value_order() const { return N_; }  // N
  long conductor() const { return f_; }
  int order() const;                     // order of chi in the character group
  bool is_odd() const;
  bool is_primitive() const { return f_ == m_; }
  int exponent_at(long a) const;         // -1 when gcd(a, m) > 1
  CycloRat value(long a) const;
  // character mod the conductor inducing this one
  DirichletChar primitive() const;
  std::string to_string() const;

 private:
  long m_;
  int N_;
  long f_ = 1;
  std::vector<int> exps_;
};

// All phi(m) characters mod m, trivial first.
std::vector<DirichletChar> dirichlet_group(long m);

// B_{1,chi} = (1/f) sum_{a=1}^{f} chi(a) a for the primitive character attached to chi.
CycloRat bernoulli_b1(const DirichletChar& chi);

struct HMinusReport {
  long m = 0;
  long field_m = 0;  // m with m = 2 mod 4 replaced by m/2
  BigInt h_minus;
  long q_index = 1;
  long roots_of_unity = 2;
  int odd_characters = 0;
  bool galois_fixed = false;
  double oracle_mid = 0;
  double oracle_radius = 0;
  std::vector<std::string> b1;  // one per odd character
  nlohmann::json to_json() const;
};

constexpr long kMaxHMinusConductor = 100;

HMinusReport h_minus_report(long m);
inline BigInt h_minus(long m) { return h_minus_report(m).h_minus; }

// Ball-arithmetic evaluation of Q w prod(-B_{1,chi}/2) in floating point; mid and radius.
std::pair<double, double> h_minus_oracle(long m);

// The list of conductors with h(Q(zeta_m)) = 1 used by the triviality check.
const std::vector<long>& triviality_list();

// Element of Z[C_n] = Z[x]/(x^n - 1).
struct GroupRingElt {
  int n = 1;
  std::vector<BigInt> c;
  GroupRingElt() = default;
  GroupRingElt(int n, std::vector<BigInt> coeffs);
  static GroupRingElt parse(int n, const std::string& text);  // "x^3+x^2-1"
  static GroupRingElt monomial(int n, int k);
  GroupRingElt operator*(const GroupRingElt& o) const;
  bool operator==(const GroupRingElt& o) const { return n == o.n && c == o.c; }
  bool is_one() const;
  // x -> x^k
  GroupRingElt substitute(int k) const;
  std::string to_string() const;
};

// Inverse in Z[C_n], or NotAUnit with the determinant of multiplication as certificate.
GroupRingElt unit_inverse(const GroupRingElt& u);

struct UnitImageReport {
  int n = 0;
  long units_mod2 = 0;       // |(Z/2[C_n])^*|
  long image = 0;            // order of the image of +-C_n and the extra units
  std::vector<long> cokernel;
  std::vector<std::string> extras, inverses;
  bool surjective() const { return cokernel.empty(); }
  nlohmann::json to_json() const;
};

constexpr int kMaxUnitCheckN = 15;

UnitImageReport unit_image_check(int n, const std::vector<GroupRingElt>& extras = {});

}  // namespace kbg::cyclo
