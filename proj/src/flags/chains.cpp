#include "kbg/flags/chains.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kbg/errors.hpp"

namespace kbg::flags {

namespace {

struct Lattice {
  std::vector<SetPartition> parts;
  std::vector<std::vector<int>> below;  // strictly finer, non-discrete
};

void rgs(int n, int i, int maxl, std::vector<int>& lab, std::vector<SetPartition>& out) {
  if (i == n) {
    std::vector<std::vector<int>> blocks(maxl + 1);
    for (int x = 0; x < n; ++x) blocks[lab[x]].push_back(x + 1);
    out.push_back(SetPartition::from_blocks(n, blocks));
    return;
  }
  for (int l = 0; l <= maxl + 1; ++l) {
    lab[i] = l;
    rgs(n, i + 1, std::max(maxl, l), lab, out);
  }
}

Lattice build_lattice(int n) {
  if (n > 10) throw SizeLimit("partition lattice brute force limited to n <= 10");
  Lattice L;
  for (auto& p : all_partitions(n))
    if (!p.is_discrete()) L.parts.push_back(std::move(p));
  L.below.resize(L.parts.size());
  for (size_t a = 0; a < L.parts.size(); ++a)
    for (size_t b = 0; b < L.parts.size(); ++b)
      if (a != b && L.parts[b].blocks.size() > L.parts[a].blocks.size() && L.parts[b].refines(L.parts[a]))
        L.below[a].push_back(static_cast<int>(b));
  return L;
}

void walk(const Lattice& L, int n, std::vector<int>& stack, OrbitTally& tally) {
  EquivFlag f;
  f.n = n;
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) f.chain.push_back(L.parts[*it]);
  ++tally[canonical_code(f)];
  for (int b : L.below[stack.back()]) {
    stack.push_back(b);
    walk(L, n, stack, tally);
    stack.pop_back();
  }
}

}  // namespace

std::vector<SetPartition> all_partitions(int n) {
  std::vector<SetPartition> out;
  if (n < 1) return out;
  std::vector<int> lab(n, 0);
  rgs(n, 1, 0, lab, out);
  return out;
}

BigInt count_strict_chains(int n) {
  Lattice L = build_lattice(n);
  // c(p) = chains with top p = 1 + sum over strictly finer q of c(q);
  // finer partitions have more blocks, so process by block count descending.
  std::vector<int> order(L.parts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return L.parts[a].blocks.size() > L.parts[b].blocks.size(); });
  std::vector<BigInt> c(L.parts.size(), 0);
  BigInt total = 0;
  for (int a : order) {
    c[a] = 1;
    for (int b : L.below[a]) c[a] += c[b];
    total += c[a];
  }
  return total;
}

OrbitTally chain_orbits_serial(int n) {
  Lattice L = build_lattice(n);
  OrbitTally tally;
  std::vector<int> stack;
  for (size_t a = 0; a < L.parts.size(); ++a) {
    stack.assign(1, static_cast<int>(a));
    walk(L, n, stack, tally);
  }
  return tally;
}

OrbitTally chain_orbits_parallel(int n, int threads) {
  Lattice L = build_lattice(n);
  OrbitTally tally;
  const long long m = static_cast<long long>(L.parts.size());
#ifdef _OPENMP
  int width = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(width)
#endif
  {
    OrbitTally local;
    std::vector<int> stack;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 1)
#endif
    for (long long a = 0; a < m; ++a) {
      stack.assign(1, static_cast<int>(a));
      walk(L, n, stack, local);
    }
#ifdef _OPENMP
#pragma omp critical(kbg_chain_merge)
#endif
    for (const auto& [code, cnt] : local) tally[code] += cnt;
  }
  (void)threads;
  return tally;
}

BigInt normaliser_order_bruteforce(const EquivFlag& f) {
  f.validate();
  int n = f.n;
  if (n > 9) throw SizeLimit("permutation search limited to n <= 9");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  BigInt count = 0;
  do {
    bool fixes = true;
    for (const auto& p : f.chain) {
      std::vector<std::vector<int>> img;
      for (const auto& b : p.blocks) {
        std::vector<int> ib;
        for (int x : b) ib.push_back(perm[x - 1]);
        img.push_back(ib);
      }
      if (!(SetPartition::from_blocks(n, img) == p)) {
        fixes = false;
        break;
      }
    }
    if (fixes) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace kbg::flags
