#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/intmatrix.hpp"
#include "kbg/reps/character.hpp"

namespace kbg::reps {

// Kernel I_n of Z[mu_n^*] -> mu_n = Z/n, [zeta^a] -> a, with its (Z/n)^* action.
// Coordinates on Z[mu_n^*] are indexed by the residues in galois->residues().
struct SwanModule {
  int n = 0;
  std::shared_ptr<const FinGroup> galois;
  IntMatrix augmentation;  // 1 x phi(n): the residues a
  IntMatrix basis;         // columns: a Z-basis of I_n inside Z^phi(n)
  std::vector<IntMatrix> ambient_action;  // per group element, permutation matrix on Z^phi(n)
  std::vector<IntMatrix> action;          // per group element, matrix on I_n in the basis above
  bool surjective = false;
  int rank = 0;
  std::vector<BigInt> index_invariants;  // Smith form of basis: Z^phi / I_n
  VirtualCharacter character;            // of I_n
  VirtualCharacter ambient_character;    // of Z[mu_n^*]
  nlohmann::json report() const;
};

SwanModule swan_module(int n);

// Does the candidate list form a Z-basis of I_n made of Galois-stable lines?
struct BasisCheck {
  bool in_module = false;  // every vector lies in I_n
  bool is_basis = false;   // and they span I_n over Z
  bool stable_lines = false;  // each vector is mapped to +-itself by every Galois element
  std::vector<std::string> problems;
  std::vector<BigInt> smith_diagonal;  // Smith form of the candidate in basis coordinates
  std::vector<VirtualCharacter> line_characters;
  bool ok() const { return in_module && is_basis && stable_lines; }
  nlohmann::json to_json() const;
};

BasisCheck check_swan_basis(const SwanModule& m, const std::vector<IntVec>& vectors);

// "[i]-[-i]" style text for n = 4, "[z^a]" terms otherwise.
std::string describe_vector(const SwanModule& m, const IntVec& v);

}  // namespace kbg::reps
