#include <random>

#include "doctest.h"
#include "kbg/arith/cyclotomic_field.hpp"
#include "kbg/arith/intmatrix.hpp"
#include "kbg/arith/numtheory.hpp"
#include "kbg/arith/poly.hpp"

using namespace kbg;

TEST_CASE("cyclotomic polynomials multiply to x^n - 1") {
  for (int n = 1; n <= 60; ++n) {
    IntPoly p = IntPoly::constant(1);
    for (auto d : divisors(n)) p *= cyclotomic_poly(static_cast<int>(d));
    CHECK(p == IntPoly::x_pow_minus_one(n));
    CHECK(cyclotomic_poly(n).degree() == euler_phi(n));
  }
  CHECK(cyclotomic_poly(6) == IntPoly({1, -1, 1}));
}

TEST_CASE("number theory helpers") {
  CHECK(carmichael(8) == 2);
  CHECK(carmichael(15) == 4);
  CHECK(mobius(30) == -1);
  CHECK(mobius(12) == 0);
  std::int64_t p;
  int k;
  CHECK(prime_power(27, p, k));
  CHECK((p == 3 && k == 3));
  CHECK_FALSE(prime_power(12, p, k));
  CHECK(partitions(5).size() == 7);
  CHECK(partitions(9).size() == 30);
}

TEST_CASE("Smith normal form of random matrices") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 1 + rng() % 7, n = 1 + rng() % 7;
    IntMatrix A(m, n);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = static_cast<long>(rng() % 21) - 10;
    SmithForm s = smith_normal_form(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    auto d = s.diagonal();
    for (size_t i = 0; i < d.size(); ++i) {
      for (int j = 0; j < n; ++j)
        if (static_cast<int>(i) != j && static_cast<int>(i) < m) CHECK(s.D(i, j) == 0);
      if (i + 1 < d.size() && d[i + 1] != 0) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
    }
  }
}

TEST_CASE("Smith normal form of a 40x40 matrix with large entries") {
  std::mt19937_64 rng(777);
  IntMatrix A(40, 40);
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 40; ++j) A(i, j) = static_cast<long>(rng() % 2000001) - 1000000;
  SmithForm s = smith_normal_form(A);
  CHECK(s.U * A * s.V == s.D);
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  BigInt prod = 1;
  for (auto& x : s.diagonal()) prod *= x;
  CHECK(prod == abs(determinant(A)));
}

TEST_CASE("kernel, hermite and integral solve") {
  IntMatrix A{{2, 4, 6}, {1, 3, 5}};
  IntMatrix K = kernel_basis(A);
  CHECK(K.cols() == 1);
  CHECK((A * K).is_zero());
  IntMatrix H = hermite_rows(IntMatrix{{4, 6}, {6, 9}, {2, 0}});
  CHECK(H == IntMatrix{{2, 0}, {0, 3}});
  auto x = solve_integral(IntMatrix{{2, 0}, {0, 3}}, {BigInt(4), BigInt(9)});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(solve_integral(IntMatrix{{2, 0}, {0, 3}}, {BigInt(1), BigInt(9)}));
  auto c = cokernel(IntMatrix{{2, 0}, {0, 4}, {0, 0}});
  CHECK(c.torsion.size() == 2);
  CHECK(c.free_rank == 1);
}

TEST_CASE("cyclotomic field arithmetic") {
  auto ctx = make_cyclo_context(12);
  auto z = CycloInt::zeta_power(ctx, 1);
  CycloInt one(ctx, 1);
  CycloInt p = one;
  for (int i = 0; i < 12; ++i) p *= z;
  CHECK(p == one);
  // 1 + z^4 + z^8 = 0 for a primitive 12th root.
  CHECK((one + CycloInt::zeta_power(ctx, 4) + CycloInt::zeta_power(ctx, 8)).is_zero());
  CHECK(z.galois(5) == CycloInt::zeta_power(ctx, 5));
  CHECK((z * z.conj()) == one);
}
