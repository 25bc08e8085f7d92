#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/reps/group.hpp"

namespace kbg::bogomolov {

constexpr int kMaxGroupOrder = 128;

// Spanning tree of the right Cayley graph from the identity. Edges (x, s) not in the
// tree are numbered 0..m-1; they are the unknowns of a gauge-fixed 2-cocycle.
struct CayleyTree {
  std::vector<int> gens;                 // distinct, non-identity
  std::vector<int> bfs;                  // elements in BFS order, identity first
  std::vector<int> parent, parent_gen;   // x = parent[x] * gens[parent_gen[x]]
  std::vector<std::vector<int>> edge;    // edge[x][i] = index of (x, gens[i]) or -1 for a tree edge
  std::vector<std::vector<int>> letters; // letters[x] = generator indices of the tree path to x
  int m = 0;
};

CayleyTree cayley_tree(const reps::FinGroup& g);

// p-primary part of H^2(G, Q/Z), cocycles with values in Z/p^k = (1/p^k)Z/Z.
struct PrimeComponent {
  long p = 0;
  int k = 0;
  long q = 1;
  std::vector<long> orders;               // order of each basis class (> 1)
  std::vector<std::vector<long>> basis;   // normalised cocycle tables, f[a*n+b], values mod q
};

struct CocycleSpace {
  reps::GroupPtr group;
  long modulus = 1;
  std::vector<PrimeComponent> components;
  std::vector<long> invariants() const;  // invariant factors, each dividing the next
  long order() const;
  // basis cocycle with values in Z/modulus
  std::vector<long> cocycle_mod_e(size_t component, size_t j) const;
};

// modulus 0 means |G|; otherwise it must be a multiple of |G|.
CocycleSpace h2_qz(const reps::GroupPtr& g, long modulus = 0);

// Subgroup of H^2(G,Q/Z): per component, generators as coefficient vectors on the basis.
struct ClassSubgroup {
  std::vector<std::vector<std::vector<long>>> generators;
  std::vector<long> invariants;
  long order() const;
};

ClassSubgroup restriction_kernel(const CocycleSpace& space, const std::vector<int>& subgroup);

struct B0Result {
  std::string group;
  int order = 0;
  std::vector<long> h2;
  std::vector<long> b0;
  long commuting_pairs = 0;
  std::optional<std::vector<long>> witness;  // cocycle table mod |G| of a non-zero class
  nlohmann::json to_json() const;
};

// Classes whose restriction to every subgroup generated by a commuting pair vanishes.
// On <x,y> abelian the restriction is zero iff f(x,y) = f(y,x), so each pair gives one condition.
B0Result b0(const reps::GroupPtr& g, bool parallel = true);
inline B0Result b0_serial(const reps::GroupPtr& g) { return b0(g, false); }

// Independent route through the Hopf formula: R/[F,R] for the presentation read off the
// Cayley graph, M(G) its torsion, and B0 the torsion after killing commutators of commuting lifts.
struct HopfResult {
  std::vector<long> h2;
  std::vector<long> b0;
  int free_rank = 0;
};
HopfResult b0_hopf(const reps::FinGroup& g);

// Check the 2-cocycle identity and normalisation for a table mod q.
bool is_normalised_cocycle(const reps::FinGroup& g, const std::vector<long>& f, long q);

// Named groups for the fast check: abelian groups of order <= max_order, dihedral and quaternion
// groups of order <= max_order, S4 and S5.
std::vector<reps::GroupPtr> b0_suite(int max_order = 32);
std::vector<reps::GroupPtr> abelian_groups(int max_order);

// invariant factors from a list of cyclic orders
std::vector<long> invariant_factors(const std::vector<long>& cyclic_orders);

}  // namespace kbg::bogomolov
