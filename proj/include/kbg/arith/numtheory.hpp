#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kbg {

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

// Extended gcd: g = a*x + b*y, g >= 0.
std::int64_t xgcd64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);

std::int64_t mod64(std::int64_t a, std::int64_t m);
std::int64_t mulmod64(std::int64_t a, std::int64_t b, std::int64_t m);
std::int64_t powmod64(std::int64_t a, std::int64_t e, std::int64_t m);

// Overflow-checked integer power; throws SizeLimit on overflow.
std::int64_t ipow64(std::int64_t b, int e);

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
int mobius(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);
// Exponent of (Z/n)^*.
std::int64_t carmichael(std::int64_t n);
bool is_prime(std::int64_t n);
// q = p^k with k >= 1.
bool prime_power(std::int64_t q, std::int64_t& p, int& k);

// Integer partitions of n, each as a non-increasing list of parts.
std::vector<std::vector<int>> partitions(int n);

}  // namespace kbg
