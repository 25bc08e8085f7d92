#pragma once

#include <vector>

namespace kbg::bogomolov {

using ModVec = std::vector<long>;

// Linear algebra over the local ring Z/p^k (p^k < 2^31).
struct LocalRing {
  long p = 2;
  int k = 1;
  long q = 2;
  LocalRing(long p, int k);
  long reduce(long x) const;
  int valuation(long x) const;  // k for x = 0
  long unit_inverse(long x) const;
};

// Smith form over Z/p^k: A V = U^-1 D with D diagonal, p^val[i] on the diagonal.
struct LocalSmith {
  LocalRing ring;
  int cols = 0;
  std::vector<int> val;            // one per pivot, each < k
  std::vector<ModVec> V, Vinv;     // cols x cols, row-major
  int rank() const { return static_cast<int>(val.size()); }
  // u = V y ; y = Vinv u
  ModVec to_y(const ModVec& u) const;
  ModVec from_y(const ModVec& y) const;
  // Generators of {u : A u = 0}, with the additive order exponent of each.
  struct Generator {
    ModVec u;
    int exponent;  // order p^exponent
  };
  std::vector<Generator> kernel() const;
  // exponent of the kernel component in coordinate i: val[i] for pivots, k otherwise
  int kernel_exponent(int i) const { return i < rank() ? val[i] : ring.k; }
};

// rows: each of length cols, entries already reduced mod q. Consumed.
LocalSmith local_smith(std::vector<ModVec> rows, int cols, const LocalRing& ring);

}  // namespace kbg::bogomolov
