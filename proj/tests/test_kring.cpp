#include <random>

#include "doctest.h"
#include "kbg/errors.hpp"
#include "kbg/kring/lclass.hpp"
#include "kbg/kring/serialize.hpp"
#include "kbg/kring/witt.hpp"

using namespace kbg;
using namespace kbg::kring;

namespace {

LClass P(const std::string& s) { return LClass::parse(s); }

LPoly random_lpoly(std::mt19937_64& rng, int lo, int hi) {
  LPoly p;
  for (int e = lo; e <= hi; ++e)
    if (rng() % 2) p += LPoly::monomial(e, static_cast<long>(rng() % 7) - 3);
  return p;
}

LClass random_class(std::mt19937_64& rng) {
  std::vector<int> den;
  int k = rng() % 3;
  for (int i = 0; i < k; ++i) den.push_back(1 + rng() % 4);
  return LClass::from_parts(random_lpoly(rng, -1, 4), den, rng() % 3);
}

LClass random_unit(std::mt19937_64& rng) {
  LClass u(rng() % 2 ? 1 : -1);
  u *= LClass::L().pow(static_cast<int>(rng() % 5) - 2);
  int k = rng() % 3;
  for (int i = 0; i < k; ++i) {
    LClass f(LPoly::l_pow_minus_one(1 + rng() % 4));
    u *= rng() % 2 ? f : f.inverse();
  }
  return u;
}

}  // namespace

TEST_CASE("canonical forms") {
  CHECK(P("(L^2-1)/(L-1)") == P("L+1"));
  CHECK(P("(L^2-1)/(L-1)").is_polynomial());
  // 1/(L+1) is rewritten over L^2 - 1.
  LClass x = P("1/(L+1)");
  CHECK(x.den_cyc() == std::vector<int>{2});
  CHECK(x.to_string() == "(L-1) / (L^2-1)");
  CHECK(P("L^3").to_string() == "L^3");
  CHECK(P("L^-2").to_string() == "1 / L^2");
  CHECK(P("(L^2-L)/(L^3-L)").to_string() == "(L-1) / (L^2-1)");
  CHECK(P("(L^2-L)/(L^3-L^2)").to_string() == "1 / L");
  CHECK(P("0 / (L-1)").is_zero());
  CHECK(P("2L^3 / L^2(L-1)(L^2-1)").to_string() == "2L / (L-1)(L^2-1)");
}

TEST_CASE("printer and parser round-trip") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    LClass x = random_class(rng);
    std::string s = x.to_string();
    CHECK_MESSAGE(LClass::parse(s) == x, s);
    CHECK(LClass::parse(s).to_string() == s);
    CHECK(lclass_from_json(to_json(x)) == x);
  }
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(P("L+"), ParseError);
  CHECK_THROWS_AS(P("(L-1"), ParseError);
  CHECK_THROWS_AS(P("L^"), ParseError);
  CHECK_THROWS_AS(P("x"), ParseError);
  CHECK_THROWS_AS(P("1/(L+2)"), DivisionByNonUnit);
  CHECK_THROWS_AS(P("1/0"), DivisionByNonUnit);
}

// Evaluation at integers q >= 2 is an injective-enough ring map to serve as
// an independent oracle for the localised arithmetic.
TEST_CASE("ring operations commute with evaluation") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 150; ++i) {
    LClass a = random_class(rng), b = random_class(rng), u = random_unit(rng);
    for (long q : {2L, 3L, 7L}) {
      BigInt Q(q);
      CHECK((a + b).evaluate(Q) == a.evaluate(Q) + b.evaluate(Q));
      CHECK((a - b).evaluate(Q) == a.evaluate(Q) - b.evaluate(Q));
      CHECK((a * b).evaluate(Q) == a.evaluate(Q) * b.evaluate(Q));
      CHECK((a / u).evaluate(Q) == a.evaluate(Q) / u.evaluate(Q));
    }
    CHECK((a * u) / u == a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(u.is_unit());
    CHECK((u * u.inverse()) == LClass(1));
  }
}

TEST_CASE("unit detection") {
  CHECK(P("L^2+L+1").is_unit());
  CHECK(P("-(L^4-L^2)").is_unit());
  CHECK_FALSE(P("L+2").is_unit());
  CHECK_FALSE(P("2L").is_unit());
  CHECK(P("L^4+L^2+1").is_unit());
  CHECK_FALSE(P("L^2-L-1").is_unit());
}

TEST_CASE("substitution L -> L^k is a ring map") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    LClass a = random_class(rng), b = random_class(rng);
    for (int k : {2, 3}) {
      CHECK((a * b).substitute_power(k) == a.substitute_power(k) * b.substitute_power(k));
      CHECK((a + b).substitute_power(k) == a.substitute_power(k) + b.substitute_power(k));
      CHECK(a.substitute_power(k).evaluate(2) == a.evaluate(BigInt(1) << k));
    }
  }
}

TEST_CASE("sigma and lambda series are mutually inverse") {
  for (const char* s : {"1", "L", "L^2+3L-1", "2-L^3", "-L"}) {
    LPoly f = LClass::parse(s).numerator();
    WittSeries sig = sigma_series(f, 6);
    WittSeries lam = lambda_series(f, 6).scale(LClass(-1));
    CHECK(sig * lam == WittSeries(6));
  }
  // sigma_t(L) = 1/(1 - L t)
  WittSeries sl = sigma_series(LPoly::L(), 4);
  for (int n = 0; n <= 4; ++n) CHECK(sl.coeff(n) == LClass::L().pow(n));
}

namespace {

// Rational power series oracle: prod_i y(q^i t)^{n_i} with y given by rational coefficients.
std::vector<BigRat> rational_witt_product(const LPoly& f, const std::vector<BigRat>& y, long q) {
  int N = static_cast<int>(y.size()) - 1;
  auto mul = [N](const std::vector<BigRat>& a, const std::vector<BigRat>& b) {
    std::vector<BigRat> r(N + 1);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; i + j <= N; ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  auto inv = [N](const std::vector<BigRat>& a) {
    std::vector<BigRat> r(N + 1);
    r[0] = 1;
    for (int n = 1; n <= N; ++n)
      for (int k = 1; k <= n; ++k) r[n] -= a[k] * r[n - k];
    return r;
  };
  std::vector<BigRat> out(N + 1);
  out[0] = 1;
  for (const auto& [e, n] : f.terms()) {
    std::vector<BigRat> s(N + 1);
    BigRat qe = e >= 0 ? BigRat(pow_int(q, e)) : BigRat(1) / BigRat(pow_int(q, -e));
    BigRat p = 1;
    for (int k = 0; k <= N; ++k) {
      s[k] = y[k] * p;
      p *= qe;
    }
    long m = n.get_si();
    if (m < 0) s = inv(s);
    for (long j = 0; j < std::labs(m); ++j) out = mul(out, s);
  }
  return out;
}

}  // namespace

TEST_CASE("Witt inverse of units of the localisation") {
  for (const char* s : {"L", "L-1", "L^2-1", "L^3-L", "-(L^2+L+1)", "L^2-L"}) {
    LPoly f = LClass::parse(s).numerator();
    WittSeries y = witt_localized_inverse(f, 5);
    WittSeries one_plus_t(5);
    one_plus_t.coeff(1) = LClass(1);
    CHECK(witt_product_with_poly(f, y) == one_plus_t);
    for (long q : {2L, 3L, 5L}) {
      std::vector<BigRat> yq;
      for (const auto& c : y.coeffs()) yq.push_back(c.evaluate(q));
      auto prod = rational_witt_product(f, yq, q);
      CHECK(prod[0] == 1);
      CHECK(prod[1] == 1);
      for (int n = 2; n <= 5; ++n) CHECK(prod[n] == 0);
    }
  }
  CHECK_THROWS_AS(witt_localized_inverse(LClass::parse("L+2").numerator(), 3), NotInS);
  CHECK_THROWS_AS(witt_localized_inverse(LClass::parse("2L").numerator(), 3), NotInS);
}

TEST_CASE("Euler specialisation") {
  // 1/(L-1) = q^-1 + q^-2 + ...
  EulerSeries e = euler_specialize(P("1/(L-1)"), 6);
  for (int k = 1; k <= 6; ++k) CHECK(e.coeff(k) == 1);
  CHECK(e.coeff(0) == 0);
  CHECK(euler_specialize(P("L^2+1"), 3).coeff(-2) == 1);
  CHECK(default_euler_depth(P("1/(L-1)")) == 6);
}

TEST_CASE("Euler specialisation is a ring map and approximates the value") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 60; ++i) {
    LClass a = random_class(rng), b = random_class(rng);
    int d = 12;
    EulerSeries ea = euler_specialize(a, d + 8), eb = euler_specialize(b, d + 8);
    EulerSeries prod = ea * eb;
    int dp = std::min(prod.depth(), d);
    CHECK(euler_specialize(a * b, dp) == prod.truncate(dp));
    CHECK(euler_specialize(a + b, d) == (ea + eb).truncate(d));
    // Partial sums converge to the exact value at q = 10^4.
    BigInt q = 10000;
    BigRat partial = 0;
    EulerSeries ex = euler_specialize(a, d);
    for (const auto& [k, c] : ex.coeffs()) {
      BigRat t = BigRat(c);
      if (k >= 0)
        t /= BigRat(pow_int(q, k));
      else
        t *= BigRat(pow_int(q, -k));
      partial += t;
    }
    BigRat err = a.evaluate(q) - partial;
    BigRat bound = BigRat(1000000) / BigRat(pow_int(q, d + 1));
    CHECK(abs(err) <= bound);
  }
}
