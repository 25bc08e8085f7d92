#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/bigint.hpp"

namespace kbg::pointcount {

// Varieties whose F_{q^r}-point counts are known in closed form.
class CountExpr {
 public:
  enum class Kind { Point, Affine, Gm, Etale, Sum, Product };

  static CountExpr point();
  static CountExpr affine(int m);
  static CountExpr gm();
  // Finite etale scheme; perm[i] is the image of geometric point i under Frobenius (0-based).
  static CountExpr etale(std::vector<int> perm);
  static CountExpr sum(std::vector<CountExpr> parts);
  static CountExpr product(std::vector<CountExpr> factors);
  // Grammar: pt | A{m} | A<m> | Gm | etale[2,1,3] | etale[(12)(3)] | ( e ) with + and *.
  static CountExpr parse(const std::string& text);

  Kind kind() const { return kind_; }
  int dim() const { return m_; }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<CountExpr>& parts() const { return parts_; }
  std::string to_string() const;

 private:
  Kind kind_ = Kind::Point;
  int m_ = 0;
  std::vector<int> perm_;
  std::vector<CountExpr> parts_;
};

// Throws InvalidQ unless q is a prime power.
void check_q(const BigInt& q);

// |X(F_{q^r})|.
BigInt count_points(const CountExpr& x, long q, int r);

// Point counts as a function of r (the extension degree).
using CountFn = std::function<BigInt(int r)>;
CountFn counts_of(const CountExpr& x, long q);

// b_1..b_N with sum b_n t^n = exp(sum_r c(r) t^r / r); NonIntegralCount if some b_n is not integral.
std::vector<BigInt> sym_power_counts(const CountFn& c, int N);
std::vector<BigInt> sym_power_counts(const CountExpr& x, long q, int N);

// Cycle type as multiplicities: m[l] = number of l-cycles (index 0 unused).
struct CycleType {
  std::vector<int> m;
  static CycleType from_partition(const std::vector<int>& parts);
  int size() const;
  // n! / prod l^{m_l} m_l!
  BigInt class_size() const;
  std::string to_string() const;
};

std::vector<CycleType> cycle_types(int n);

// Elements of F_{q^l} of exact degree l over F_q.
BigInt exact_degree_count(long q, int l);

// Tuples in Conf^n(A^1) fixed by sigma o Frob for sigma of the given type.
BigInt twisted_conf_count(const CycleType& lambda, long q);

// |(X^n x_{Sigma_n} Conf^n(A^1))(F_q)| where c(r) = |X(F_{q^r})|.
BigInt sigma_Y_count(const CountFn& c, int n, long q);
BigInt sigma_Y_count(const CountExpr& x, int n, long q);

// prod_i Z_i^{n_i} x_{prod Sigma_{n_i}} Conf^{sum n_i}(A^1): the configuration
// points are distinct across groups as well as within them.
struct Group {
  CountFn counts;
  int n = 0;
};
BigInt joint_sigma_Y_count(const std::vector<Group>& groups, long q);

struct SymmetricIdentityReport {
  int n = 0;
  long q = 0;
  BigInt lhs;
  BigInt rhs;
  std::vector<std::pair<std::string, BigInt>> rhs_terms;  // per partition
  // Same partition sum with each group given its own configuration space
  // (prod_i sigma_Y^{n_i}); differs from lhs once a partition has two distinct parts.
  BigInt separate_rhs;
  bool identity_holds = false;
  BigInt sym_x;  // |sigma^n X(F_q)|
  bool scaling_holds = false;  // lhs == q^n |sigma^n X|
  nlohmann::json to_json() const;
};

SymmetricIdentityReport verify_symmetric_identity(const CountExpr& x, int n, long q);

// Monic degree-n polynomials over F_q whose root multiplicities form the
// partition lambda: tuples of pairwise coprime squarefree factors, one per
// multiplicity, counted by twisted configurations.
BigInt stratum_count(const std::vector<int>& lambda, long q);

}  // namespace kbg::pointcount
