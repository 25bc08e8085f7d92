#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace kbg {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }
inline std::string to_string(const BigRat& x) { return x.get_str(); }

inline BigInt pow_int(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline bool fits_int64(const BigInt& x) {
  return mpz_sizeinbase(x.get_mpz_t(), 2) <= 62;
}

inline std::int64_t to_int64(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return static_cast<std::int64_t>(std::stoll(x.get_str()));
}

// Exact quotient; returns false if b does not divide a.
inline bool divides_exactly(const BigInt& a, const BigInt& b, BigInt& q) {
  if (b == 0) return false;
  if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return true;
}

// Floor division and the matching nonnegative-or-sign-of-b remainder.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace kbg
