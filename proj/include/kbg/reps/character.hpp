#pragma once

#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/cyclotomic_field.hpp"
#include "kbg/arith/intmatrix.hpp"
#include "kbg/reps/group.hpp"

namespace kbg::reps {

// Class function with values in Z[zeta_e], e the exponent of the group.
class VirtualCharacter {
 public:
  VirtualCharacter() = default;
  VirtualCharacter(GroupPtr g, std::vector<CycloInt> values);

  static VirtualCharacter constant(GroupPtr g, long k);
  // Rational values, one per conjugacy class (in classes() order).
  static VirtualCharacter from_integers(GroupPtr g, const std::vector<long>& values);
  // Fixed points of the permutation action; needs a permutation group.
  static VirtualCharacter permutation(GroupPtr g);
  static VirtualCharacter regular(GroupPtr g);
  // Character of a 1-dimensional representation given by g -> zeta_e^{k(g)}.
  static VirtualCharacter linear(GroupPtr g, const std::vector<long>& exponent_of_element);

  const GroupPtr& group() const { return g_; }
  const std::vector<CycloInt>& values() const { return v_; }
  const CycloInt& at_class(int c) const { return v_[c]; }
  const CycloInt& at(int element) const { return v_[g_->class_of(element)]; }
  BigInt degree() const;  // value at the identity
  bool is_rational() const;

  VirtualCharacter operator+(const VirtualCharacter& o) const;
  VirtualCharacter operator-(const VirtualCharacter& o) const;
  VirtualCharacter operator-() const;
  VirtualCharacter operator*(const VirtualCharacter& o) const;
  VirtualCharacter operator*(long s) const;
  bool operator==(const VirtualCharacter& o) const;
  bool operator!=(const VirtualCharacter& o) const { return !(*this == o); }

  // psi^k chi (g) = chi(g^k)
  VirtualCharacter adams(long k) const;
  // Newton recursion; throws NonIntegral if a division by i is inexact.
  VirtualCharacter lambda(int i) const;
  // lambda^0 .. lambda^N
  std::vector<VirtualCharacter> lambda_series(int N) const;
  // <chi, chi'> = 1/|G| sum chi(g) conj(chi'(g)); throws NonIntegral if not rational
  BigRat inner(const VirtualCharacter& o) const;

  std::string to_string() const;
  nlohmann::json to_json() const;

 private:
  GroupPtr g_;
  std::vector<CycloInt> v_;
};

// Trace character of the representation in which g.generators()[i] acts by gen_matrices[i].
// Throws NotARepresentation unless the matrices define a homomorphism.
VirtualCharacter character_of_lattice(GroupPtr g, const std::vector<IntMatrix>& gen_matrices);

// Matrices for every element of g, built from generator images.
std::vector<IntMatrix> extend_representation(const FinGroup& g, const std::vector<IntMatrix>& gen_matrices);

// Product of truncated series with character coefficients.
std::vector<VirtualCharacter> multiply_series(const std::vector<VirtualCharacter>& a,
                                              const std::vector<VirtualCharacter>& b, int N);

}  // namespace kbg::reps
