#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace kbg::reps {

// 0-based images: p[x] is the image of x.
using Perm = std::vector<int>;

Perm perm_compose(const Perm& a, const Perm& b);  // (a*b)(x) = a(b(x))
Perm perm_inverse(const Perm& a);
// Cycles with 1-based points, e.g. {{1,2},{3,4}}, on {1..m}.
Perm perm_from_cycles(const std::vector<std::vector<int>>& cycles, int m);

// Finite group with elements numbered 0..order-1.
class FinGroup {
 public:
  static constexpr int kMaxOrder = 10000;

  static FinGroup from_permutations(const std::vector<Perm>& gens, int max_order = kMaxOrder);
  // table[a][b] = index of a*b. Checks identity, inverses and associativity.
  static FinGroup from_table(const std::vector<std::vector<int>>& table);
  // {"perm_gens": [[[1,2],[3]], ...]} (cycles, 1-based) or {"table": [[...]]}
  static FinGroup from_json(const nlohmann::json& j);

  static FinGroup cyclic(int n);
  static FinGroup symmetric(int n);
  static FinGroup alternating(int n);
  static FinGroup dihedral(int n);    // order 2n
  static FinGroup quaternion(int n);  // generalised quaternion of order n = 2^k >= 8
  static FinGroup abelian(const std::vector<int>& cyclic_orders);
  static FinGroup direct_product(const FinGroup& a, const FinGroup& b);
  // (Z/n)^*, element i is the residue units_mod_residues(n)[i].
  static FinGroup units_mod(int n);

  int order() const { return n_; }
  int identity() const { return id_; }
  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  int power(int a, long k) const;
  int element_order(int a) const { return ord_[a]; }
  int exponent() const { return exponent_; }
  bool is_abelian() const;

  const std::vector<int>& generators() const { return gens_; }
  const std::vector<std::vector<int>>& classes() const { return classes_; }
  int class_of(int g) const { return class_of_[g]; }
  // class of g^k for g in class c
  int class_power(int c, long k) const { return class_of_[power(classes_[c].front(), k)]; }

  // Elements of the subgroup generated by gens, sorted.
  std::vector<int> generated(const std::vector<int>& gens) const;
  std::vector<int> centralizer(const std::vector<int>& elems) const;
  bool is_subgroup(const std::vector<int>& elems) const;

  bool has_permutations() const { return !perms_.empty(); }
  const Perm& perm(int g) const { return perms_[g]; }
  int degree() const { return perms_.empty() ? 0 : static_cast<int>(perms_.front().size()); }
  // label of element i (cycle notation for permutations, residue for units_mod, ...)
  const std::string& label(int g) const { return labels_[g]; }
  const std::string& name() const { return name_; }
  void set_name(std::string s) { name_ = std::move(s); }
  // residues for units_mod groups, empty otherwise
  const std::vector<long>& residues() const { return residues_; }

  nlohmann::json table_json() const;

 private:
  void finish();
  int n_ = 0;
  int id_ = 0;
  std::vector<std::uint16_t> table_;  // n*n, present when small enough
  std::vector<Perm> perms_;
  std::unordered_map<std::string, int> perm_index_;
  std::vector<int> inv_, ord_, gens_, class_of_;
  std::vector<std::vector<int>> classes_;
  std::vector<std::string> labels_;
  std::vector<long> residues_;
  int exponent_ = 1;
  std::string name_;
};

using GroupPtr = std::shared_ptr<const FinGroup>;

}  // namespace kbg::reps
