#include "kbg/bogomolov/modmat.hpp"

#include <algorithm>
#include <utility>

#include "kbg/errors.hpp"

namespace kbg::bogomolov {

LocalRing::LocalRing(long p_, int k_) : p(p_), k(k_), q(1) {
  if (p < 2 || k < 1) throw InvalidArgument("local ring needs a prime p and k >= 1");
  for (int i = 0; i < k; ++i) {
    q *= p;
    if (q > (1L << 31)) throw SizeLimit("modulus too large for local elimination");
  }
}

long LocalRing::reduce(long x) const {
  x %= q;
  return x < 0 ? x + q : x;
}

int LocalRing::valuation(long x) const {
  x = reduce(x);
  if (x == 0) return k;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

long LocalRing::unit_inverse(long x) const {
  long a = reduce(x), m = q, u = 1, w = 0;
  while (m) {
    long t = a / m;
    a -= t * m;
    std::swap(a, m);
    u -= t * w;
    std::swap(u, w);
  }
  if (a != 1) throw InvalidArgument("not a unit");
  return reduce(u);
}

ModVec LocalSmith::to_y(const ModVec& u) const {
  ModVec y(cols, 0);
  for (int i = 0; i < cols; ++i) {
    long s = 0;
    for (int j = 0; j < cols; ++j)
      if (Vinv[i][j] && u[j]) s = (s + Vinv[i][j] * u[j]) % ring.q;
    y[i] = s;
  }
  return y;
}

ModVec LocalSmith::from_y(const ModVec& y) const {
  ModVec u(cols, 0);
  for (int i = 0; i < cols; ++i) {
    long s = 0;
    for (int j = 0; j < cols; ++j)
      if (V[i][j] && y[j]) s = (s + V[i][j] * y[j]) % ring.q;
    u[i] = s;
  }
  return u;
}

std::vector<LocalSmith::Generator> LocalSmith::kernel() const {
  std::vector<Generator> out;
  for (int i = 0; i < cols; ++i) {
    int e = kernel_exponent(i);
    if (e == 0) continue;
    long scale = 1;
    for (int t = 0; t < ring.k - e; ++t) scale *= ring.p;
    ModVec y(cols, 0);
    y[i] = scale;
    out.push_back({from_y(y), e});
  }
  return out;
}

LocalSmith local_smith(std::vector<ModVec> rows, int cols, const LocalRing& ring) {
  const long q = ring.q;
  LocalSmith s{ring, cols, {}, {}, {}};
  s.V.assign(cols, ModVec(cols, 0));
  s.Vinv.assign(cols, ModVec(cols, 0));
  for (int i = 0; i < cols; ++i) s.V[i][i] = s.Vinv[i][i] = 1;
  std::vector<int> colpos(cols);  // current column order
  for (int i = 0; i < cols; ++i) colpos[i] = i;

  for (int t = 0; t < cols; ++t) {
    // drop zero rows, then find an entry of least valuation in columns t..cols-1
    int best_r = -1, best_c = -1, best_v = ring.k;
    size_t w = 0;
    for (size_t r = 0; r < rows.size(); ++r) {
      bool nonzero = false;
      for (int c = t; c < cols; ++c) {
        long x = rows[r][colpos[c]];
        if (!x) continue;
        nonzero = true;
        if (best_v == 0) break;
        int v = ring.valuation(x);
        if (v < best_v) {
          best_v = v;
          best_r = static_cast<int>(w);
          best_c = c;
          if (v == 0) break;
        }
      }
      if (nonzero) {
        if (w != r) rows[w] = std::move(rows[r]);
        ++w;
      }
    }
    rows.resize(w);
    if (best_r < 0) break;
    std::swap(rows[0], rows[best_r]);
    if (best_c != t) {
      std::swap(colpos[t], colpos[best_c]);
      for (int i = 0; i < cols; ++i) std::swap(s.V[i][t], s.V[i][best_c]);
      std::swap(s.Vinv[t], s.Vinv[best_c]);
    }
    ModVec& piv = rows[0];
    long pv = 1;
    for (int i = 0; i < best_v; ++i) pv *= ring.p;
    long a = piv[colpos[t]];
    long unit = ring.unit_inverse(a / pv);
    for (auto& x : piv) x = x * unit % q;
    // clear the pivot column in the other rows
    for (size_t r = 1; r < rows.size(); ++r) {
      long x = rows[r][colpos[t]];
      if (!x) continue;
      long f = x / pv;
      for (int c = t; c < cols; ++c) {
        long y = piv[colpos[c]];
        if (y) rows[r][colpos[c]] = ((rows[r][colpos[c]] - f * y) % q + q) % q;
      }
    }
    // clear the pivot row with column operations (recorded in V)
    for (int c = t + 1; c < cols; ++c) {
      long y = piv[colpos[c]];
      if (!y) continue;
      long f = y / pv;
      for (int i = 0; i < cols; ++i)
        if (s.V[i][t]) s.V[i][c] = ((s.V[i][c] - f * s.V[i][t]) % q + q) % q;
      for (int j = 0; j < cols; ++j)
        if (s.Vinv[c][j]) s.Vinv[t][j] = (s.Vinv[t][j] + f * s.Vinv[c][j]) % q;
    }
    s.val.push_back(best_v);
    rows[0] = std::move(rows.back());
    rows.pop_back();
  }
  return s;
}

}  // namespace kbg::bogomolov
