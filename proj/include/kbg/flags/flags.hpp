#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/bigint.hpp"
#include "kbg/arith/poly.hpp"
#include "kbg/kring/lclass.hpp"

namespace kbg::flags {

// Set partition of {1..n}; blocks are sorted lists ordered by (size, smallest element).
struct SetPartition {
  int n = 0;
  std::vector<std::vector<int>> blocks;

  static SetPartition from_blocks(int n, std::vector<std::vector<int>> blocks);
  static SetPartition discrete(int n);
  static SetPartition full(int n);
  // "12|3|45"; blocks may also be comma separated ("10,11|1,2,...") for n > 9.
  static SetPartition parse(const std::string& text);
  std::string to_string() const;

  bool is_discrete() const { return static_cast<int>(blocks.size()) == n; }
  bool is_full() const { return blocks.size() == 1; }
  // Every block of *this lies inside a block of coarser.
  bool refines(const SetPartition& coarser) const;
  bool operator==(const SetPartition& o) const { return n == o.n && blocks == o.blocks; }
};

// Strict chain R_1 < ... < R_k of non-discrete partitions (R_0 discrete implicit).
struct EquivFlag {
  int n = 0;
  std::vector<SetPartition> chain;

  static EquivFlag parse(int n, const std::string& text);  // "12|3 < 123"
  std::string to_string() const;
  // Throws InvalidArgument unless strictly increasing and non-discrete.
  void validate() const;
  int length() const { return static_cast<int>(chain.size()); }
};

// Decomposition of the flag stabiliser into products and wreath products.
struct StabiliserTree {
  enum class Kind { Symmetric, Wreath, Product };
  Kind kind = Kind::Symmetric;
  int t = 1;                              // Symmetric(t) or Wreath(inner, t)
  std::vector<StabiliserTree> children;  // inner for Wreath, factors for Product

  static StabiliserTree symmetric(int t);
  static StabiliserTree wreath(StabiliserTree inner, int t);  // simplifies trivial cases
  static StabiliserTree product(std::vector<StabiliserTree> factors);
  BigInt order() const;
  std::string to_string() const;
  bool operator==(const StabiliserTree& o) const;
};

struct FlagClass {
  EquivFlag rep;
  int n_f = 0;
  int d_f = 0;
  BigInt stab_order;
  BigInt orbit_size;
  StabiliserTree stabiliser;
  int sign() const { return n_f % 2 == 1 ? 1 : -1; }  // (-1)^{n_f+1}
};

// Isomorphism-invariant encoding of the leveled tree of a flag. Two flags are
// conjugate under Sigma_n exactly when their codes agree.
std::string canonical_code(const EquivFlag& f);

std::vector<FlagClass> enumerate_flag_classes(int n, int max_n = 9);
StabiliserTree stabiliser_decomposition(const EquivFlag& f);

// phi of the standard permutation representation: x^n - x (n >= 2), x (n = 1).
IntPoly char_poly_sigma(int n);

struct RecursionTerm {
  std::string flag;
  int n_f = 0;
  int d_f = 0;
  int sign = 1;
  kring::LClass value;  // sign * L^{d_f}
};

struct RecursionReport {
  bool holds = false;
  kring::LClass lhs;  // L^n
  kring::LClass rhs;  // (L^n - L^{n-1}) + flag sum
  kring::LClass flag_sum;
  std::vector<RecursionTerm> terms;
};

RecursionReport recursion_identity(int n, int max_n = 9);

// Derivation that {B Sigma_n} = 1 from the recursion and the inductive
// hypotheses {B Sigma_t} = 1 for t < n.
nlohmann::json bsigma_certificate(int n, int max_n = 9);

struct CertificateCheck {
  bool valid = false;
  kring::LClass value;
  std::vector<std::string> problems;
};

// Structural validation: recomputes orders, checks that every citation is of
// a strictly smaller symmetric group, and re-derives the value.
CertificateCheck validate_certificate(const nlohmann::json& cert);

}  // namespace kbg::flags
