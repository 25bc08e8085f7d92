#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "kbg/arith/numtheory.hpp"
#include "kbg/bogomolov/bogomolov.hpp"
#include "kbg/bogomolov/modmat.hpp"
#include "kbg/errors.hpp"

using namespace kbg;
using namespace kbg::bogomolov;
using reps::FinGroup;
using reps::GroupPtr;

namespace {

GroupPtr ptr(FinGroup g, const std::string& name = "") {
  if (!name.empty()) g.set_name(name);
  return std::make_shared<FinGroup>(std::move(g));
}

using Inv = std::vector<long>;

// M(A) for A = sum Z/n_i is sum_{i<j} Z/gcd(n_i, n_j)
Inv abelian_multiplier(const std::vector<int>& orders) {
  std::vector<long> cyc;
  for (size_t i = 0; i < orders.size(); ++i)
    for (size_t j = i + 1; j < orders.size(); ++j) cyc.push_back(gcd64(orders[i], orders[j]));
  return invariant_factors(cyc);
}

// |H^2(G, Q/Z)| = |Z^2(G, Z/e)| / |B^2(G, Z/e)| / |G^ab| for e = |G|, by enumerating all normalised cochains.
long brute_h2_order(const FinGroup& g) {
  int n = g.order(), e = n;
  int id = g.identity();
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != id && b != id) slots.emplace_back(a, b);
  long total = 1;
  for (size_t i = 0; i < slots.size(); ++i) total *= e;
  long cocycles = 0;
  std::vector<long> f(static_cast<size_t>(n) * n, 0);
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (auto [a, b] : slots) {
      f[static_cast<size_t>(a) * n + b] = c % e;
      c /= e;
    }
    if (is_normalised_cocycle(g, f, e)) ++cocycles;
  }
  std::set<std::vector<long>> cobound;
  long ones = 1;
  for (int i = 1; i < n; ++i) ones *= e;
  std::vector<long> h(n, 0);
  for (long code = 0; code < ones; ++code) {
    long c = code;
    for (int x = 0; x < n; ++x) {
      if (x == id) continue;
      h[x] = c % e;
      c /= e;
    }
    std::vector<long> d(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) d[static_cast<size_t>(a) * n + b] = ((h[a] + h[b] - h[g.mul(a, b)]) % e + e) % e;
    cobound.insert(d);
  }
  long ab = n;  // only used on abelian groups
  REQUIRE(g.is_abelian());
  return cocycles / static_cast<long>(cobound.size()) / ab;
}

long product(const Inv& v) {
  return std::accumulate(v.begin(), v.end(), 1L, std::multiplies<long>());
}

std::vector<int> center(const FinGroup& g) {
  std::vector<int> out;
  for (int x = 0; x < g.order(); ++x) {
    bool c = true;
    for (int s : g.generators()) c = c && g.mul(x, s) == g.mul(s, x);
    if (c) out.push_back(x);
  }
  return out;
}

FinGroup load_witness(const std::string& key) {
  std::ifstream in(std::string(KBG_DATA_DIR) + "/b0_order64.json");
  REQUIRE(in.good());
  nlohmann::json j = nlohmann::json::parse(in);
  nlohmann::json only;
  only[key] = j.at(key);
  FinGroup g = FinGroup::from_json(only);
  g.set_name(j.value("name", "witness"));
  return g;
}

}  // namespace

TEST_CASE("local smith form over Z/p^k") {
  LocalRing r(2, 3);
  CHECK(r.q == 8);
  CHECK(r.valuation(12) == 2);
  CHECK(r.valuation(0) == 3);
  CHECK(r.reduce(-3) == 5);
  CHECK(r.unit_inverse(3) * 3 % 8 == 1);
  CHECK_THROWS_AS(r.unit_inverse(2), InvalidArgument);

  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 5);
    std::vector<ModVec> A(rows, ModVec(cols));
    for (auto& row : A)
      for (auto& x : row) x = static_cast<long>(rng() % 8) * (rng() % 3 ? 2 : 1) % 8;
    LocalSmith S = local_smith(A, cols, r);
    long found = 1;
    for (const auto& gen : S.kernel()) {
      for (const auto& row : A) {
        long s = 0;
        for (int c = 0; c < cols; ++c) s += row[c] * gen.u[c];
        CHECK(s % 8 == 0);
      }
      found *= 1L << gen.exponent;
      CHECK(S.from_y(S.to_y(gen.u)) == gen.u);
    }
    // brute-force kernel size
    long count = 0, total = 1L << (3 * cols);
    for (long code = 0; code < total; ++code) {
      bool ok = true;
      for (const auto& row : A) {
        long s = 0;
        for (int c = 0; c < cols; ++c) s += row[c] * ((code >> (3 * c)) & 7);
        ok = ok && s % 8 == 0;
      }
      count += ok;
    }
    CHECK(found == count);
  }
}

TEST_CASE("cayley tree") {
  FinGroup s4 = FinGroup::symmetric(4);
  CayleyTree t = cayley_tree(s4);
  int n = s4.order(), d = static_cast<int>(t.gens.size());
  CHECK(t.m == n * (d - 1) + 1);
  CHECK(t.bfs.front() == s4.identity());
  for (int x = 0; x < n; ++x) {
    int y = s4.identity();
    for (int i : t.letters[x]) y = s4.mul(y, t.gens[i]);
    CHECK(y == x);
  }
}

TEST_CASE("H2 small groups") {
  for (int m = 1; m <= 12; ++m) CHECK(h2_qz(ptr(FinGroup::cyclic(m))).invariants().empty());
  CHECK(h2_qz(ptr(FinGroup::abelian({2, 2}))).invariants() == Inv{2});
  CHECK(h2_qz(ptr(FinGroup::quaternion(8))).invariants().empty());
  CHECK(h2_qz(ptr(FinGroup::dihedral(4))).invariants() == Inv{2});
  CHECK(h2_qz(ptr(FinGroup::dihedral(5))).invariants().empty());
  CHECK(h2_qz(ptr(FinGroup::symmetric(3))).invariants().empty());
  CHECK(h2_qz(ptr(FinGroup::alternating(4))).invariants() == Inv{2});
  CHECK(h2_qz(ptr(FinGroup::alternating(5))).invariants() == Inv{2});
  CHECK(h2_qz(ptr(FinGroup::abelian({3, 3}))).invariants() == Inv{3});
}

TEST_CASE("H2 against brute-force cochain enumeration") {
  for (const auto& g : {FinGroup::cyclic(2), FinGroup::cyclic(3), FinGroup::cyclic(4), FinGroup::abelian({2, 2})}) {
    CAPTURE(g.order());
    CHECK(h2_qz(ptr(g)).order() == brute_h2_order(g));
  }
}

TEST_CASE("H2 of abelian groups matches the gcd formula") {
  for (const auto& G : abelian_groups(32)) {
    CAPTURE(G->name());
    std::vector<int> orders;
    std::string s = G->name();
    size_t pos = 0;
    while ((pos = s.find('C', pos)) != std::string::npos) orders.push_back(std::stoi(s.substr(++pos)));
    CHECK(h2_qz(G).invariants() == abelian_multiplier(orders));
  }
}

TEST_CASE("stored cocycles are normalised") {
  for (const auto& g : {FinGroup::abelian({2, 2, 2}), FinGroup::dihedral(4), FinGroup::abelian({4, 4}), FinGroup::symmetric(4)}) {
    auto space = h2_qz(ptr(g));
    for (size_t c = 0; c < space.components.size(); ++c)
      for (size_t j = 0; j < space.components[c].basis.size(); ++j) {
        CHECK(is_normalised_cocycle(g, space.components[c].basis[j], space.components[c].q));
        CHECK(is_normalised_cocycle(g, space.cocycle_mod_e(c, j), space.modulus));
      }
  }
  auto bad = std::vector<long>(16, 0);
  bad[1 * 4 + 2] = 1;
  CHECK_FALSE(is_normalised_cocycle(FinGroup::abelian({2, 2}), bad, 4));
}

TEST_CASE("H2 is stable under doubling the modulus") {
  for (const auto& G : b0_suite(16)) {
    if (G->order() > 16) continue;
    CAPTURE(G->name());
    CHECK(h2_qz(G).order() == h2_qz(G, 2L * G->order()).order());
    CHECK(h2_qz(G).invariants() == h2_qz(G, 2L * G->order()).invariants());
  }
  CHECK_THROWS_AS(h2_qz(ptr(FinGroup::cyclic(4)), 6), InvalidArgument);
  CHECK_THROWS_AS(h2_qz(ptr(FinGroup::symmetric(6))), SizeLimit);
}

TEST_CASE("restriction kernels") {
  auto G = ptr(FinGroup::abelian({2, 2}));
  auto space = h2_qz(G);
  CHECK(restriction_kernel(space, {G->identity()}).invariants == Inv{2});
  std::vector<int> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  CHECK(restriction_kernel(space, all).invariants.empty());
  for (int x = 0; x < 4; ++x) {
    if (x == G->identity()) continue;
    CHECK(restriction_kernel(space, G->generated({x})).invariants == Inv{2});
  }
  CHECK_THROWS_AS(restriction_kernel(space, {G->identity(), G->generators().front(), G->generators().back()}), NotASubgroup);

  auto D = ptr(FinGroup::dihedral(4));
  auto ds = h2_qz(D);
  std::vector<int> dall(D->order());
  std::iota(dall.begin(), dall.end(), 0);
  CHECK(restriction_kernel(ds, dall).invariants.empty());
  CHECK(restriction_kernel(ds, {D->identity()}).invariants == Inv{2});
}

TEST_CASE("restriction kernels are conjugation invariant") {
  std::mt19937_64 rng(777);
  for (const auto& g : {FinGroup::symmetric(4), FinGroup::dihedral(6), FinGroup::alternating(4)}) {
    auto G = ptr(g);
    auto space = h2_qz(G);
    for (int trial = 0; trial < 10; ++trial) {
      int x = static_cast<int>(rng() % G->order()), y = static_cast<int>(rng() % G->order());
      auto H = G->generated({x, y});
      int c = static_cast<int>(rng() % G->order());
      std::vector<int> K;
      for (int h : H) K.push_back(G->mul(G->mul(c, h), G->inv(c)));
      CHECK(restriction_kernel(space, H).invariants == restriction_kernel(space, K).invariants);
    }
  }
}

TEST_CASE("B0 vanishes on the suite") {
  for (const auto& G : b0_suite(32)) {
    CAPTURE(G->name());
    auto r = b0(G);
    CHECK(r.b0.empty());
    CHECK_FALSE(r.witness.has_value());
  }
}

TEST_CASE("B0 of direct products of suite groups") {
  std::vector<std::pair<FinGroup, FinGroup>> pairs{{FinGroup::symmetric(3), FinGroup::cyclic(2)},
                                                   {FinGroup::dihedral(4), FinGroup::cyclic(2)},
                                                   {FinGroup::quaternion(8), FinGroup::cyclic(2)},
                                                   {FinGroup::alternating(4), FinGroup::cyclic(2)},
                                                   {FinGroup::symmetric(3), FinGroup::symmetric(3)},
                                                   {FinGroup::quaternion(8), FinGroup::cyclic(3)}};
  for (const auto& [a, b] : pairs) {
    auto G = ptr(FinGroup::direct_product(a, b));
    CAPTURE(G->order());
    CHECK(b0(G).b0.empty());
    CHECK(b0_hopf(*G).b0.empty());
  }
}

TEST_CASE("B0 lies in the kernel of restriction to the center") {
  for (const auto& g : {FinGroup::dihedral(4), FinGroup::quaternion(16), FinGroup::symmetric(4), load_witness("table")}) {
    auto G = ptr(g);
    long kz = restriction_kernel(h2_qz(G), center(*G)).order();
    long b = product(b0(G).b0);
    CHECK(kz % b == 0);
  }
}

TEST_CASE("parallel and serial B0 agree") {
  for (const auto& g : {FinGroup::symmetric(4), FinGroup::abelian({2, 2, 2, 2}), FinGroup::dihedral(8), load_witness("perm_gens")}) {
    auto G = ptr(g);
    auto a = b0(G), s = b0_serial(G);
    CHECK(a.b0 == s.b0);
    CHECK(a.h2 == s.h2);
    CHECK(a.commuting_pairs == s.commuting_pairs);
    CHECK(a.witness == s.witness);
  }
}

TEST_CASE("Hopf formula route agrees with cocycles") {
  for (const auto& G : b0_suite(32)) {
    CAPTURE(G->name());
    auto h = b0_hopf(*G);
    auto r = b0(G);
    CHECK(h.h2 == r.h2);
    CHECK(h.b0 == r.b0);
    CHECK(h.free_rank == static_cast<int>(cayley_tree(*G).gens.size()));
  }
}

TEST_CASE("order 64 witness") {
  auto fromtable = ptr(load_witness("table"));
  auto fromperm = ptr(load_witness("perm_gens"));
  REQUIRE(fromtable->order() == 64);
  REQUIRE(fromperm->order() == 64);
  auto r = b0(fromtable);
  CHECK(r.b0 == Inv{2});
  CHECK(b0(fromperm).b0 == Inv{2});
  CHECK(b0_hopf(*fromtable).b0 == Inv{2});
  CHECK(b0_hopf(*fromperm).b0 == Inv{2});
  REQUIRE(r.witness.has_value());
  const auto& w = *r.witness;
  const FinGroup& g = *fromtable;
  CHECK(is_normalised_cocycle(g, w, 64));
  // symmetric on every commuting pair, so trivial on every abelian subgroup
  for (int x = 0; x < 64; ++x)
    for (int y = 0; y < 64; ++y)
      if (g.mul(x, y) == g.mul(y, x)) CHECK(w[x * 64 + y] == w[y * 64 + x]);
  auto js = r.to_json();
  CHECK(js["b0"] == nlohmann::json::array({2}));
  CHECK(js.contains("witness"));
}

TEST_CASE("invariant factors") {
  CHECK(invariant_factors({2, 3}) == Inv{6});
  CHECK(invariant_factors({2, 4, 2}) == Inv{2, 2, 4});
  CHECK(invariant_factors({1, 6, 4}) == Inv{2, 12});
  CHECK(invariant_factors({}).empty());
}
