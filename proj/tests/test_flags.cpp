#include <map>
#include <random>

#include "doctest.h"
#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"
#include "kbg/flags/chains.hpp"
#include "kbg/flags/flags.hpp"

using namespace kbg;
using namespace kbg::flags;
using kring::LClass;

TEST_CASE("partition parsing and printing") {
  auto p = SetPartition::parse("45|3|12");
  CHECK(p.to_string() == "3|12|45");
  CHECK(p.n == 5);
  CHECK(SetPartition::parse("1,2|3").to_string() == "3|12");
  CHECK_THROWS_AS(SetPartition::parse("12|2"), ParseError);
  CHECK_THROWS_AS(SetPartition::parse("13"), ParseError);
  CHECK(SetPartition::parse("12|3").refines(SetPartition::full(3)));
  CHECK_FALSE(SetPartition::full(3).refines(SetPartition::parse("12|3")));
  auto f = EquivFlag::parse(4, "12 < 12|34");
  CHECK(f.to_string() == "3|4|12 < 12|34");
  CHECK_THROWS_AS(EquivFlag::parse(3, "123 < 12|3"), InvalidArgument);
  CHECK_THROWS_AS(EquivFlag::parse(3, "12 < 12"), InvalidArgument);
}

TEST_CASE("small enumerations") {
  CHECK(enumerate_flag_classes(1).empty());
  auto c2 = enumerate_flag_classes(2);
  REQUIRE(c2.size() == 1);
  CHECK(c2[0].n_f == 1);
  CHECK(c2[0].d_f == 1);
  CHECK(c2[0].stab_order == 2);

  auto c3 = enumerate_flag_classes(3);
  REQUIRE(c3.size() == 3);
  CHECK(c3[0].rep.to_string() == "3|12");
  CHECK(c3[1].rep.to_string() == "123");
  CHECK(c3[2].rep.to_string() == "3|12 < 123");
  CHECK(c3[0].d_f == 2);
  CHECK(c3[1].d_f == 1);
  CHECK(c3[2].d_f == 1);
  CHECK(c3[0].n_f == 1);
  CHECK(c3[1].n_f == 1);
  CHECK(c3[2].n_f == 2);
  CHECK_THROWS_AS(enumerate_flag_classes(10), SizeLimit);
}

TEST_CASE("stabiliser decompositions") {
  CHECK(stabiliser_decomposition(EquivFlag::parse(5, "12345")) == StabiliserTree::symmetric(5));
  auto pairs = stabiliser_decomposition(EquivFlag::parse(4, "12|34"));
  CHECK(pairs.to_string() == "Wreath(Symmetric(2), 2)");
  CHECK(pairs.order() == 8);
  auto t3 = stabiliser_decomposition(EquivFlag::parse(3, "12|3"));
  CHECK(t3.kind == StabiliserTree::Kind::Product);
  CHECK(t3.order() == 2);
  CHECK(t3.to_string().find("Symmetric(2)") != std::string::npos);
  CHECK(t3.to_string().find("Symmetric(1)") != std::string::npos);
}

TEST_CASE("class counts against full chain walk") {
  // tally of chains per conjugacy code, computed by walking the lattice
  for (int n = 1; n <= 6; ++n) {
    auto classes = enumerate_flag_classes(n);
    OrbitTally walked = chain_orbits_serial(n);
    OrbitTally mine;
    BigInt total = 0;
    for (const auto& c : classes) {
      mine[canonical_code(c.rep)] = c.orbit_size.get_si();
      total += c.orbit_size;
    }
    CHECK(mine == walked);
    CHECK(total == count_strict_chains(n));
  }
}

TEST_CASE("orbit count consistency for n = 7") {
  auto classes = enumerate_flag_classes(7);
  BigInt total = 0;
  for (const auto& c : classes) total += c.orbit_size;
  CHECK(total == count_strict_chains(7));
  CHECK(classes.size() == 935);
}

TEST_CASE("parallel and serial chain walks agree") {
  CHECK(chain_orbits_parallel(5, 2) == chain_orbits_serial(5));
  CHECK(chain_orbits_parallel(6) == chain_orbits_serial(6));
}

TEST_CASE("stabiliser orders by permutation search") {
  for (int n = 2; n <= 6; ++n) {
    auto nf = factorial(n);
    for (const auto& c : enumerate_flag_classes(n)) {
      CHECK(nf % c.stab_order == 0);
      CHECK(c.stab_order * c.orbit_size == nf);
      CHECK(c.stabiliser.order() == normaliser_order_bruteforce(c.rep));
      CHECK(c.d_f == static_cast<int>(c.rep.chain.back().blocks.size()));
    }
  }
}

TEST_CASE("sampled stabilisers at n = 7") {
  auto classes = enumerate_flag_classes(7);
  std::mt19937 rng(2024);
  for (int i = 0; i < 25; ++i) {
    const auto& c = classes[rng() % classes.size()];
    CHECK(c.stabiliser.order() == normaliser_order_bruteforce(c.rep));
  }
}

TEST_CASE("codes are invariant under relabelling") {
  std::mt19937 rng(99);
  for (int n = 3; n <= 7; ++n) {
    auto classes = enumerate_flag_classes(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto& c = classes[rng() % classes.size()];
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i + 1;
      std::shuffle(perm.begin(), perm.end(), rng);
      EquivFlag g;
      g.n = n;
      for (const auto& p : c.rep.chain) {
        std::vector<std::vector<int>> b;
        for (const auto& blk : p.blocks) {
          std::vector<int> ib;
          for (int x : blk) ib.push_back(perm[x - 1]);
          b.push_back(ib);
        }
        g.chain.push_back(SetPartition::from_blocks(n, b));
      }
      CHECK(canonical_code(g) == canonical_code(c.rep));
      CHECK(stabiliser_decomposition(g).order() == c.stab_order);
    }
  }
}

TEST_CASE("characteristic polynomial") {
  CHECK(char_poly_sigma(1).to_string() == "x");
  CHECK(char_poly_sigma(2).to_string() == "x^2-x");
  CHECK(char_poly_sigma(5).to_string() == "x^5-x");
  // cross-check: classes whose stabiliser is all of Sigma_n are the invariant flags
  for (int n = 1; n <= 6; ++n) {
    IntPoly phi = IntPoly::monomial(n);
    for (const auto& c : enumerate_flag_classes(n))
      if (c.stab_order == factorial(n)) phi = phi - IntPoly::monomial(c.d_f) * c.sign();
    CHECK(phi == char_poly_sigma(n));
  }
}

TEST_CASE("recursion identity") {
  auto r2 = recursion_identity(2);
  CHECK(r2.holds);
  CHECK(r2.flag_sum.to_string() == "L");
  auto r3 = recursion_identity(3);
  CHECK(r3.holds);
  CHECK(r3.flag_sum.to_string() == "L^2");
  CHECK(r3.terms.size() == 3);
  for (int n = 4; n <= 8; ++n) CHECK_MESSAGE(recursion_identity(n).holds, "n = " << n);
  CHECK_THROWS_AS(recursion_identity(10), SizeLimit);
}

TEST_CASE("recursion identity for n = 9" * doctest::timeout(300)) {
  auto r = recursion_identity(9);
  CHECK(r.holds);
  CHECK(r.flag_sum == LClass::parse("L^8"));
}

TEST_CASE("flag sum equals L^(n-1)") {
  for (int n = 2; n <= 8; ++n) CHECK(recursion_identity(n).flag_sum == LClass(kring::LPoly::monomial(n - 1)));
}

TEST_CASE("certificates") {
  auto c1 = bsigma_certificate(1);
  CHECK(c1["value"] == "1");
  CHECK(c1["derivation"].empty());
  CHECK(validate_certificate(c1).valid);

  auto c3 = bsigma_certificate(3);
  CHECK(c3["value"] == "1");
  CHECK(c3["hypotheses"] == nlohmann::json({1, 2}));
  auto v3 = validate_certificate(c3);
  CHECK(v3.valid);
  CHECK(v3.value == LClass(1));

  for (int n = 2; n <= 7; ++n) {
    auto c = bsigma_certificate(n);
    auto v = validate_certificate(c);
    CHECK_MESSAGE(v.valid, "n = " << n << (v.problems.empty() ? "" : ": " + v.problems.front()));
    for (int t : c["hypotheses"]) CHECK(t < n);
  }
}

TEST_CASE("tampered certificates are rejected") {
  auto c = bsigma_certificate(4);
  auto bad_sign = c;
  bad_sign["derivation"][0]["sign"] = -bad_sign["derivation"][0]["sign"].get<int>();
  CHECK_FALSE(validate_certificate(bad_sign).valid);

  auto dropped = c;
  dropped["derivation"].erase(dropped["derivation"].begin());
  CHECK_FALSE(validate_certificate(dropped).valid);

  auto self_cite = c;
  self_cite["derivation"][0]["stabiliser"] = {{"kind", "symmetric"}, {"t", 4}, {"cites", 4},
                                              {"order", "24"}, {"value", "1"}};
  CHECK_FALSE(validate_certificate(self_cite).valid);

  auto bad_value = c;
  bad_value["value"] = "L";
  CHECK_FALSE(validate_certificate(bad_value).valid);
}
