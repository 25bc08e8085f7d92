#pragma once

#include <map>
#include <string>
#include <vector>

#include "kbg/arith/bigint.hpp"
#include "kbg/flags/flags.hpp"

namespace kbg::flags {

// Brute force over the whole partition lattice. Used as a reference for the
// tree enumeration; only sensible for small n.

std::vector<SetPartition> all_partitions(int n);

// Number of strict chains R_1 < ... < R_k of non-discrete partitions, k >= 1.
BigInt count_strict_chains(int n);

// canonical_code -> number of chains with that code, walking every chain.
using OrbitTally = std::map<std::string, long long>;
OrbitTally chain_orbits_serial(int n);
// Same, split over top partitions with OpenMP. threads <= 0 uses the runtime default.
OrbitTally chain_orbits_parallel(int n, int threads = 0);

// |N_R| by testing every permutation of {1..n}.
BigInt normaliser_order_bruteforce(const EquivFlag& f);

}  // namespace kbg::flags
