#include <random>
#include <set>

#include "doctest.h"
#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"
#include "kbg/reps/character.hpp"
#include "kbg/reps/group.hpp"
#include "kbg/reps/swan.hpp"

using namespace kbg;
using namespace kbg::reps;

namespace {

GroupPtr share(FinGroup g) { return std::make_shared<const FinGroup>(std::move(g)); }

int parity(const Perm& p) {
  int s = 0;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (size_t j = i; !seen[j]; j = p[j]) seen[j] = 1, ++len;
    s += len - 1;
  }
  return s % 2 ? -1 : 1;
}

// Character of Lambda^i of the permutation lattice: a basis of wedges e_S
// for i-subsets S; g maps e_S to +-e_{gS}; the sign is that of g restricted to S
// after sorting.
long wedge_trace(const Perm& g, int i) {
  int m = static_cast<int>(g.size());
  long tr = 0;
  for (int mask = 0; mask < (1 << m); ++mask) {
    if (__builtin_popcount(mask) != i) continue;
    int img = 0;
    for (int x = 0; x < m; ++x)
      if (mask >> x & 1) img |= 1 << g[x];
    if (img != mask) continue;
    std::vector<int> pts, images;
    for (int x = 0; x < m; ++x)
      if (mask >> x & 1) pts.push_back(x);
    for (int x : pts) images.push_back(static_cast<int>(std::find(pts.begin(), pts.end(), g[x]) - pts.begin()));
    tr += parity(images);
  }
  return tr;
}

// permutation character of the action on k-subsets of the points
VirtualCharacter subset_character(const GroupPtr& G, int k) {
  std::vector<long> vals;
  for (const auto& cls : G->classes()) {
    const Perm& g = G->perm(cls.front());
    int m = static_cast<int>(g.size());
    long fixed = 0;
    for (int mask = 0; mask < (1 << m); ++mask) {
      if (__builtin_popcount(mask) != k) continue;
      int img = 0;
      for (int x = 0; x < m; ++x)
        if (mask >> x & 1) img |= 1 << g[x];
      fixed += img == mask;
    }
    vals.push_back(fixed);
  }
  return VirtualCharacter::from_integers(G, vals);
}

IntVec vec(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("Smith normal form examples") {
  auto d1 = smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diagonal();
  CHECK(d1 == std::vector<BigInt>{1, 6});
  CHECK(smith_normal_form(IntMatrix::identity(4)).D == IntMatrix::identity(4));
  auto f = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  CHECK(f.diagonal() == std::vector<BigInt>{2, 4});
  CHECK(f.U * IntMatrix{{2, 4}, {6, 8}} * f.V == f.D);
}

TEST_CASE("group constructions") {
  CHECK(FinGroup::symmetric(4).order() == 24);
  CHECK(FinGroup::symmetric(4).classes().size() == 5);
  CHECK(FinGroup::symmetric(5).classes().size() == 7);
  CHECK(FinGroup::alternating(5).order() == 60);
  CHECK(FinGroup::alternating(5).classes().size() == 5);
  CHECK(FinGroup::dihedral(4).order() == 8);
  CHECK(FinGroup::dihedral(4).classes().size() == 5);
  auto q8 = FinGroup::quaternion(8);
  CHECK(q8.classes().size() == 5);
  CHECK(q8.exponent() == 4);
  int involutions = 0;
  for (int g = 0; g < 8; ++g) involutions += q8.element_order(g) == 2;
  CHECK(involutions == 1);
  CHECK(FinGroup::quaternion(16).order() == 16);
  CHECK(FinGroup::abelian({2, 4}).exponent() == 4);
  CHECK(FinGroup::abelian({2, 4}).is_abelian());
  CHECK_FALSE(FinGroup::dihedral(3).is_abelian());
  CHECK(FinGroup::units_mod(8).exponent() == 2);
  CHECK(FinGroup::units_mod(7).exponent() == 6);
  auto p = FinGroup::direct_product(FinGroup::cyclic(2), FinGroup::symmetric(3));
  CHECK(p.order() == 12);
  CHECK(p.classes().size() == 6);
  CHECK_THROWS_AS(FinGroup::from_permutations({perm_from_cycles({{1, 2, 3, 4, 5, 6, 7, 8}}, 8), perm_from_cycles({{1, 2}}, 8)}, 1000),
                  SizeLimit);
}

TEST_CASE("group tables are validated") {
  // a loop of order 5 which is not a group
  std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(FinGroup::from_table(loop), InconsistentTable);
  CHECK_THROWS_AS(FinGroup::from_table({{0, 1}, {1, 1}}), InconsistentTable);
  CHECK_THROWS_AS(FinGroup::from_table({{0, 1}, {0, 1}}), InconsistentTable);
  CHECK(FinGroup::from_table({{1, 0}, {0, 1}}).identity() == 1);
  auto z4 = FinGroup::from_table({{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
  CHECK(z4.exponent() == 4);
  auto s3 = FinGroup::symmetric(3);
  auto again = FinGroup::from_json(s3.table_json());
  CHECK(again.order() == 6);
  CHECK(again.classes().size() == 3);
  auto fromcycles = FinGroup::from_json(nlohmann::json::parse(R"({"perm_gens": [[[1,2]], [[1,2,3,4]]]})"));
  CHECK(fromcycles.order() == 24);
}

TEST_CASE("lattice characters") {
  auto C2 = share(FinGroup::cyclic(2));
  auto triv = character_of_lattice(C2, {IntMatrix::identity(3)});
  CHECK(triv == VirtualCharacter::constant(C2, 3));
  auto sign = character_of_lattice(C2, {IntMatrix{{-1}}});
  CHECK(sign.at(1) == CycloInt(sign.at(1).context(), BigInt(-1)));
  CHECK(sign.degree() == 1);
  CHECK_THROWS_AS(character_of_lattice(C2, {IntMatrix{{2}}}), NotARepresentation);

  auto S3 = share(FinGroup::symmetric(3));
  std::vector<IntMatrix> gens;
  for (int gi : S3->generators()) {
    const Perm& p = S3->perm(gi);
    IntMatrix M(3, 3);
    for (int x = 0; x < 3; ++x) M(p[x], x) = 1;
    gens.push_back(M);
  }
  auto perm = character_of_lattice(S3, gens);
  CHECK(perm == VirtualCharacter::permutation(S3));
  int t = -1, c = -1;
  for (int g = 0; g < 6; ++g) {
    if (S3->element_order(g) == 2) t = g;
    if (S3->element_order(g) == 3) c = g;
  }
  CHECK(perm.at(S3->identity()).rational_part() == 3);
  CHECK(perm.at(t).rational_part() == 1);
  CHECK(perm.at(c).rational_part() == 0);
  CHECK(perm.inner(perm) == 2);
}

TEST_CASE("lambda operations") {
  for (int n = 2; n <= 5; ++n) {
    auto S = share(FinGroup::symmetric(n));
    auto chi = VirtualCharacter::permutation(S);
    std::vector<long> sg;
    for (const auto& cls : S->classes()) sg.push_back(parity(S->perm(cls.front())));
    CHECK(chi.lambda(n) == VirtualCharacter::from_integers(S, sg));
    CHECK(chi.lambda(n + 1) == VirtualCharacter::constant(S, 0));
    auto triv = VirtualCharacter::constant(S, 1);
    CHECK(triv.lambda(0) == triv);
    CHECK(triv.lambda(1) == triv);
    CHECK(triv.lambda(2) == VirtualCharacter::constant(S, 0));
    // exterior powers of the permutation lattice computed from wedge bases
    for (int i = 0; i <= n; ++i) {
      std::vector<long> w;
      for (const auto& cls : S->classes()) w.push_back(wedge_trace(S->perm(cls.front()), i));
      CHECK(chi.lambda(i) == VirtualCharacter::from_integers(S, w));
    }
  }
  auto C2 = share(FinGroup::cyclic(2));
  auto reg = VirtualCharacter::regular(C2);
  CHECK(reg.lambda(2) == VirtualCharacter::from_integers(C2, {1, -1}));
  auto three = VirtualCharacter::constant(C2, 3);
  CHECK(three.lambda(2) == VirtualCharacter::constant(C2, 3));
}

TEST_CASE("lambda series are exponential") {
  std::mt19937 rng(31337);
  auto S4 = share(FinGroup::symmetric(4));
  for (int trial = 0; trial < 12; ++trial) {
    auto pick = [&]() {
      VirtualCharacter c = VirtualCharacter::constant(S4, 0);
      for (int k = 0; k <= 4; ++k) c = c + subset_character(S4, k) * static_cast<long>(rng() % 3);
      return c;
    };
    auto a = pick(), b = pick();
    auto lhs = (a + b).lambda_series(5);
    auto rhs = multiply_series(a.lambda_series(5), b.lambda_series(5), 5);
    for (int i = 0; i <= 5; ++i) CHECK(lhs[i] == rhs[i]);
  }
  // non-rational values: linear characters of C5
  auto C5 = share(FinGroup::cyclic(5));
  std::vector<long> k1(5), k2(5);
  for (int g = 0; g < 5; ++g) k1[g] = g, k2[g] = 2 * g;
  auto a = VirtualCharacter::linear(C5, k1), b = VirtualCharacter::linear(C5, k2);
  auto s = a + b + a;
  auto lhs = (s + b).lambda_series(5);
  auto rhs = multiply_series(s.lambda_series(5), b.lambda_series(5), 5);
  for (int i = 0; i <= 5; ++i) CHECK(lhs[i] == rhs[i]);
  CHECK(a.lambda(2) == VirtualCharacter::constant(C5, 0));
  CHECK(a.inner(a) == 1);
  CHECK(a.inner(b) == 0);
}

TEST_CASE("Adams operations") {
  auto D = share(FinGroup::dihedral(6));
  auto Q = share(FinGroup::quaternion(16));
  for (const auto& G : {D, Q}) {
    std::vector<long> k(G->order());
    std::mt19937 rng(7);
    std::vector<long> vals;
    for (size_t c = 0; c < G->classes().size(); ++c) vals.push_back(static_cast<long>(rng() % 7) - 3);
    auto chi = VirtualCharacter::from_integers(G, vals);
    CHECK(chi.adams(1) == chi);
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 5; ++b) CHECK(chi.adams(a).adams(b) == chi.adams(a * b));
  }
  auto C5 = share(FinGroup::cyclic(5));
  std::vector<long> k1(5);
  for (int g = 0; g < 5; ++g) k1[g] = g;
  auto a = VirtualCharacter::linear(C5, k1);
  CHECK(a.adams(2).adams(3) == a.adams(6));
  CHECK(a.adams(5) == VirtualCharacter::constant(C5, 1));
}

TEST_CASE("Swan modules") {
  auto m4 = swan_module(4);
  CHECK(m4.surjective);
  CHECK(m4.rank == 2);
  CHECK(m4.index_invariants == std::vector<BigInt>{1, 4});
  // the residues are 1 (i) and 3 (-i)
  CHECK(m4.galois->residues() == std::vector<long>{1, 3});
  auto stated = check_swan_basis(m4, {vec({1, -1}), vec({2, 2})});
  CHECK_FALSE(stated.in_module);  // [i]-[-i] maps to -1 in mu_4
  CHECK_FALSE(stated.ok());
  auto fixed = check_swan_basis(m4, {vec({1, 1}), vec({2, -2})});
  CHECK(fixed.ok());
  REQUIRE(fixed.line_characters.size() == 2);
  auto G = m4.galois;
  CHECK(fixed.line_characters[0] == VirtualCharacter::constant(G, 1));
  CHECK(fixed.line_characters[1] == VirtualCharacter::from_integers(G, {1, -1}));
  CHECK(m4.character == VirtualCharacter::from_integers(G, {2, 0}));
  CHECK(describe_vector(m4, vec({2, -2})) == "2[i]-2[-i]");

  auto m3 = swan_module(3);
  CHECK(m3.rank == 2);
  CHECK(m3.index_invariants == std::vector<BigInt>{1, 3});
  for (int p : {5, 7, 11, 13, 47}) {
    auto m = swan_module(p);
    CHECK(m.surjective);
    CHECK(m.rank == p - 1);
    CHECK(m.index_invariants.back() == p);
    // a finite-index sublattice carries the same rational character
    CHECK(m.character == m.ambient_character);
  }
  for (int n = 2; n <= 30; ++n) {
    auto m = swan_module(n);
    CHECK(m.surjective);
    CHECK(m.rank == euler_phi(n));
    BigInt idx = 1;
    for (const auto& d : m.index_invariants) idx *= d;
    CHECK(idx == n);
    for (int g = 0; g < m.galois->order(); ++g) CHECK(m.basis * m.action[g] == m.ambient_action[g] * m.basis);
  }
}
