#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "kbg/arith/intmatrix.hpp"
#include "kbg/arith/numtheory.hpp"
#include "kbg/bogomolov/bogomolov.hpp"
#include "kbg/bogomolov/modmat.hpp"
#include "kbg/errors.hpp"

namespace kbg::bogomolov {

using reps::FinGroup;
using reps::GroupPtr;

CayleyTree cayley_tree(const FinGroup& g) {
  CayleyTree t;
  for (int s : g.generators())
    if (s != g.identity() && std::find(t.gens.begin(), t.gens.end(), s) == t.gens.end()) t.gens.push_back(s);
  int n = g.order();
  int d = static_cast<int>(t.gens.size());
  t.parent.assign(n, -1);
  t.parent_gen.assign(n, -1);
  t.letters.assign(n, {});
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(g.identity());
  seen[g.identity()] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    t.bfs.push_back(x);
    for (int i = 0; i < d; ++i) {
      int y = g.mul(x, t.gens[i]);
      if (seen[y]) continue;
      seen[y] = 1;
      t.parent[y] = x;
      t.parent_gen[y] = i;
      t.letters[y] = t.letters[x];
      t.letters[y].push_back(i);
      q.push(y);
    }
  }
  if (static_cast<int>(t.bfs.size()) != n) throw std::logic_error("generators do not generate the group");
  t.edge.assign(n, std::vector<int>(d, -1));
  for (int x : t.bfs)
    for (int i = 0; i < d; ++i) {
      int y = g.mul(x, t.gens[i]);
      if (t.parent[y] == x && t.parent_gen[y] == i) continue;
      t.edge[x][i] = t.m++;
    }
  return t;
}

namespace {

long ipow(long p, int k) {
  long r = 1;
  while (k-- > 0) r *= p;
  return r;
}

int vp(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Full table of the cocycle with gauge-fixed values u on the non-tree edges.
std::vector<long> expand(const FinGroup& g, const CayleyTree& t, const ModVec& u, long q) {
  int n = g.order();
  std::vector<long> f(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a) {
    for (size_t j = 1; j < t.bfs.size(); ++j) {
      int x = t.bfs[j], h = t.parent[x], i = t.parent_gen[x];
      int ed = t.edge[g.mul(a, h)][i];
      long v = f[static_cast<size_t>(a) * n + h] + (ed >= 0 ? u[ed] : 0);
      f[static_cast<size_t>(a) * n + x] = v % q;
    }
  }
  return f;
}

// Gauge-fixed values of a cohomologous cocycle.
ModVec gauge_fix(const FinGroup& g, const CayleyTree& t, const std::vector<long>& f, long q) {
  int n = g.order();
  std::vector<long> c(n, 0);
  for (size_t j = 1; j < t.bfs.size(); ++j) {
    int x = t.bfs[j], h = t.parent[x], i = t.parent_gen[x];
    c[x] = (c[h] + f[static_cast<size_t>(h) * n + t.gens[i]]) % q;
  }
  ModVec u(t.m, 0);
  for (int h = 0; h < n; ++h)
    for (size_t i = 0; i < t.gens.size(); ++i) {
      int ed = t.edge[h][i];
      if (ed < 0) continue;
      int x = g.mul(h, t.gens[i]);
      u[ed] = ((f[static_cast<size_t>(h) * n + t.gens[i]] + c[h] - c[x]) % q + q) % q;
    }
  return u;
}

// Cocycle conditions on the gauge-fixed unknowns, as sparse integer rows (index, coefficient).
using SparseRow = std::vector<std::pair<int, long>>;

std::vector<SparseRow> cocycle_conditions(const FinGroup& g, const CayleyTree& t) {
  int n = g.order();
  int d = static_cast<int>(t.gens.size());
  std::vector<SparseRow> rows;
  std::vector<std::vector<int>> Fa(n);
  for (int a = 0; a < n; ++a) {
    if (a == g.identity()) continue;
    Fa[g.identity()].clear();
    for (size_t j = 1; j < t.bfs.size(); ++j) {
      int x = t.bfs[j], h = t.parent[x], i = t.parent_gen[x];
      Fa[x] = Fa[h];
      int ed = t.edge[g.mul(a, h)][i];
      if (ed >= 0) Fa[x].push_back(ed);
    }
    for (int h = 0; h < n; ++h)
      for (int i = 0; i < d; ++i) {
        int ed = t.edge[h][i];
        if (ed < 0) continue;
        int x = g.mul(h, t.gens[i]);
        std::map<int, long> row;
        for (int e : Fa[x]) row[e] += 1;
        for (int e : Fa[h]) row[e] -= 1;
        int e2 = t.edge[g.mul(a, h)][i];
        if (e2 >= 0) row[e2] -= 1;
        row[ed] += 1;
        SparseRow sr;
        for (auto [k, v] : row)
          if (v) sr.emplace_back(k, v);
        if (!sr.empty()) rows.push_back(std::move(sr));
      }
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

// count of each generator along the tree path
std::vector<std::vector<long>> letter_counts(const CayleyTree& t, int n) {
  std::vector<std::vector<long>> c(n, std::vector<long>(t.gens.size(), 0));
  for (int x = 0; x < n; ++x)
    for (int i : t.letters[x]) ++c[x][i];
  return c;
}

IntMatrix unimodular_inverse(const IntMatrix& U) { return solve_integral_matrix(U, IntMatrix::identity(U.rows())); }

struct QuotientPart {
  std::vector<long> orders;
  std::vector<std::vector<long>> gens;  // coefficient vectors
};

// L = span(gens, q e_j, orders_j e_j) inside Z^r, modulo the span of the orders_j e_j.
QuotientPart subgroup_mod_orders(const std::vector<ModVec>& gens, const std::vector<long>& orders, long q) {
  int r = static_cast<int>(orders.size());
  QuotientPart out;
  if (r == 0) return out;
  std::vector<IntVec> rows;
  for (const auto& v : gens) {
    IntVec x(r);
    for (int j = 0; j < r; ++j) x[j] = v[j];
    rows.push_back(x);
  }
  for (int j = 0; j < r; ++j) {
    IntVec x(r, 0);
    x[j] = gcd64(q, orders[j]);
    rows.push_back(x);
  }
  IntMatrix Lb = hermite_rows(IntMatrix::from_rows(rows, r)).transpose();  // columns: basis of L
  IntMatrix D(r, r);
  for (int j = 0; j < r; ++j) D(j, j) = orders[j];
  IntMatrix X = solve_integral_matrix(Lb, D);
  SmithForm s = smith_normal_form(X);
  IntMatrix Uinv = unimodular_inverse(s.U);
  IntMatrix G = Lb * Uinv;
  auto diag = s.diagonal();
  for (int i = 0; i < r; ++i) {
    BigInt o = i < static_cast<int>(diag.size()) ? abs(diag[i]) : BigInt(0);
    if (o == 1) continue;
    if (o == 0) throw std::logic_error("class subgroup is infinite");
    std::vector<long> v(r);
    for (int j = 0; j < r; ++j) v[j] = mod_pos(G(j, i), BigInt(orders[j])).get_si();
    out.orders.push_back(o.get_si());
    out.gens.push_back(v);
  }
  return out;
}

}  // namespace

std::vector<long> invariant_factors(const std::vector<long>& cyclic_orders) {
  std::map<long, std::vector<long>> by_prime;
  for (long o : cyclic_orders) {
    if (o <= 1) continue;
    for (auto [p, e] : factorize(o)) by_prime[p].push_back(ipow(p, e));
  }
  size_t len = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  std::vector<long> out(len, 1);
  for (auto& [p, v] : by_prime)
    for (size_t i = 0; i < v.size(); ++i) out[i] *= v[i];
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<long> CocycleSpace::invariants() const {
  std::vector<long> all;
  for (const auto& c : components) all.insert(all.end(), c.orders.begin(), c.orders.end());
  return invariant_factors(all);
}

long CocycleSpace::order() const {
  long o = 1;
  for (const auto& c : components)
    for (long x : c.orders) o *= x;
  return o;
}

std::vector<long> CocycleSpace::cocycle_mod_e(size_t c, size_t j) const {
  const auto& comp = components.at(c);
  long scale = modulus / comp.q;
  std::vector<long> f = comp.basis.at(j);
  for (auto& x : f) x *= scale;
  return f;
}

long ClassSubgroup::order() const {
  long o = 1;
  for (long x : invariants) o *= x;
  return o;
}

bool is_normalised_cocycle(const FinGroup& g, const std::vector<long>& f, long q) {
  int n = g.order();
  if (static_cast<long>(f.size()) != static_cast<long>(n) * n) return false;
  auto F = [&](int a, int b) { return f[static_cast<size_t>(a) * n + b]; };
  int e = g.identity();
  for (int a = 0; a < n; ++a)
    if (F(a, e) % q || F(e, a) % q) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = g.mul(a, b);
      for (int c = 0; c < n; ++c)
        if ((F(b, c) - F(ab, c) + F(a, g.mul(b, c)) - F(a, b)) % q) return false;
    }
  return true;
}

CocycleSpace h2_qz(const GroupPtr& gp, long modulus) {
  const FinGroup& g = *gp;
  int n = g.order();
  if (n > kMaxGroupOrder) throw SizeLimit("cocycle computations limited to groups of order " + std::to_string(kMaxGroupOrder));
  if (modulus == 0) modulus = n;
  if (modulus % n != 0) throw InvalidArgument("modulus must be a multiple of the group order");
  CocycleSpace space;
  space.group = gp;
  space.modulus = modulus;
  if (n == 1) return space;
  CayleyTree t = cayley_tree(g);
  int d = static_cast<int>(t.gens.size());
  auto sparse = cocycle_conditions(g, t);
  auto counts = letter_counts(t, n);

  // coboundaries of c with c(x) = sum of c(s_i) along the tree path
  std::vector<std::vector<long>> gauge(d, std::vector<long>(t.m, 0));
  for (int h = 0; h < n; ++h)
    for (int j = 0; j < d; ++j) {
      int ed = t.edge[h][j];
      if (ed < 0) continue;
      int x = g.mul(h, t.gens[j]);
      for (int i = 0; i < d; ++i) gauge[i][ed] = counts[h][i] + (i == j) - counts[x][i];
    }

  for (auto [p, e] : factorize(n)) {
    (void)e;
    int k = vp(modulus, p);
    LocalRing ring(p, k);
    PrimeComponent comp;
    comp.p = p;
    comp.k = k;
    comp.q = ring.q;
    std::vector<ModVec> rows;
    rows.reserve(sparse.size());
    for (const auto& sr : sparse) {
      ModVec r(t.m, 0);
      bool any = false;
      for (auto [i, v] : sr) {
        r[i] = ring.reduce(v);
        any = any || r[i];
      }
      if (any) rows.push_back(std::move(r));
    }
    LocalSmith S = local_smith(std::move(rows), t.m, ring);

    // relations to divide out: coboundaries and the Bockstein image of Hom(G, Q/Z)
    std::vector<ModVec> rel;
    for (int i = 0; i < d; ++i) {
      ModVec u(t.m);
      for (int x = 0; x < t.m; ++x) u[x] = ring.reduce(gauge[i][x]);
      rel.push_back(u);
    }
    std::vector<ModVec> homrows;
    for (int x = 0; x < t.m; ++x) {
      ModVec r(d);
      bool any = false;
      for (int i = 0; i < d; ++i) {
        r[i] = ring.reduce(gauge[i][x]);
        any = any || r[i];
      }
      if (any) homrows.push_back(r);
    }
    LocalSmith H = local_smith(std::move(homrows), d, ring);
    for (const auto& gen : H.kernel()) {
      std::vector<long> chi(n, 0);
      for (int x = 0; x < n; ++x) {
        long s = 0;
        for (int i = 0; i < d; ++i) s += counts[x][i] * gen.u[i];
        chi[x] = ring.reduce(s);
      }
      std::vector<long> carry(static_cast<size_t>(n) * n);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) carry[static_cast<size_t>(a) * n + b] = (chi[a] + chi[b] - chi[g.mul(a, b)]) / ring.q;
      rel.push_back(gauge_fix(g, t, carry, ring.q));
    }

    std::vector<int> active;
    for (int i = 0; i < t.m; ++i)
      if (S.kernel_exponent(i) > 0) active.push_back(i);
    int A = static_cast<int>(active.size());
    if (A == 0) continue;
    IntMatrix R(A, static_cast<int>(rel.size()) + A);
    for (size_t c = 0; c < rel.size(); ++c) {
      ModVec y = S.to_y(rel[c]);
      for (int a = 0; a < A; ++a) {
        long step = ipow(p, k - S.kernel_exponent(active[a]));
        if (y[active[a]] % step) throw std::logic_error("relation is not a cocycle");
        R(a, static_cast<int>(c)) = y[active[a]] / step;
      }
    }
    for (int a = 0; a < A; ++a) R(a, static_cast<int>(rel.size()) + a) = ipow(p, S.kernel_exponent(active[a]));
    SmithForm sf = smith_normal_form(R);
    IntMatrix Uinv = unimodular_inverse(sf.U);
    auto diag = sf.diagonal();
    for (int j = 0; j < A; ++j) {
      BigInt o = abs(diag[j]);
      if (o == 1) continue;
      ModVec y(t.m, 0);
      for (int a = 0; a < A; ++a) {
        long step = ipow(p, k - S.kernel_exponent(active[a]));
        y[active[a]] = ring.reduce(mod_pos(Uinv(a, j), BigInt(ring.q)).get_si() * step);
      }
      comp.orders.push_back(o.get_si());
      comp.basis.push_back(expand(g, t, S.from_y(y), ring.q));
    }
    if (!comp.orders.empty()) space.components.push_back(std::move(comp));
  }
  return space;
}

ClassSubgroup restriction_kernel(const CocycleSpace& space, const std::vector<int>& sub) {
  const FinGroup& g = *space.group;
  std::vector<int> H = sub;
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  if (!g.is_subgroup(H)) throw NotASubgroup("elements do not form a subgroup");
  int n = g.order();
  int h = static_cast<int>(H.size());
  std::vector<int> pos(n, -1);
  int col = 0;
  for (int x : H)
    if (x != g.identity()) pos[x] = col++;
  ClassSubgroup out;
  std::vector<long> all_orders;
  for (const auto& comp : space.components) {
    int r = static_cast<int>(comp.orders.size());
    int vh = vp(h, comp.p);
    LocalRing ring2(comp.p, comp.k + vh);
    long P = ipow(comp.p, vh);
    // unknowns: class coefficients x_j, then c(x) for x in H \ {e}
    std::vector<ModVec> rows;
    for (int a : H)
      for (int b : H) {
        if (a == g.identity() || b == g.identity()) continue;
        ModVec row(r + h - 1, 0);
        for (int j = 0; j < r; ++j) row[j] = ring2.reduce(P * comp.basis[j][static_cast<size_t>(a) * n + b]);
        row[r + pos[a]] = ring2.reduce(row[r + pos[a]] - 1);
        row[r + pos[b]] = ring2.reduce(row[r + pos[b]] - 1);
        int ab = g.mul(a, b);
        if (ab != g.identity()) row[r + pos[ab]] = ring2.reduce(row[r + pos[ab]] + 1);
        rows.push_back(std::move(row));
      }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    LocalSmith S = local_smith(std::move(rows), r + h - 1, ring2);
    std::vector<ModVec> gens;
    for (const auto& gen : S.kernel()) gens.emplace_back(gen.u.begin(), gen.u.begin() + r);
    QuotientPart part = subgroup_mod_orders(gens, comp.orders, comp.q);
    out.generators.push_back(part.gens);
    all_orders.insert(all_orders.end(), part.orders.begin(), part.orders.end());
  }
  out.invariants = invariant_factors(all_orders);
  return out;
}

nlohmann::json B0Result::to_json() const {
  nlohmann::json j{{"group", group}, {"order", order}, {"h2", h2}, {"b0", b0}, {"commuting_pairs", commuting_pairs}};
  if (witness) j["witness"] = *witness;
  return j;
}

B0Result b0(const GroupPtr& gp, bool parallel) {
  const FinGroup& g = *gp;
  int n = g.order();
  CocycleSpace space = h2_qz(gp);
  B0Result res;
  res.group = g.name();
  res.order = n;
  res.h2 = space.invariants();
  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (x != g.identity() && y != g.identity() && g.mul(x, y) == g.mul(y, x)) pairs.emplace_back(x, y);
  res.commuting_pairs = static_cast<long>(pairs.size());
  std::vector<long> all_orders;
  for (const auto& comp : space.components) {
    int r = static_cast<int>(comp.orders.size());
    std::vector<ModVec> rows(pairs.size(), ModVec(r));
    long np = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (long i = 0; i < np; ++i) {
      auto [x, y] = pairs[i];
      for (int j = 0; j < r; ++j) {
        const auto& f = comp.basis[j];
        long v = f[static_cast<size_t>(x) * n + y] - f[static_cast<size_t>(y) * n + x];
        rows[i][j] = ((v % comp.q) + comp.q) % comp.q;
      }
    }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    LocalSmith S = local_smith(std::move(rows), r, LocalRing(comp.p, comp.k));
    std::vector<ModVec> gens;
    for (const auto& gen : S.kernel()) gens.push_back(gen.u);
    QuotientPart part = subgroup_mod_orders(gens, comp.orders, comp.q);
    all_orders.insert(all_orders.end(), part.orders.begin(), part.orders.end());
    if (!res.witness && !part.gens.empty()) {
      std::vector<long> w(static_cast<size_t>(n) * n, 0);
      for (int j = 0; j < r; ++j)
        for (size_t z = 0; z < w.size(); ++z) w[z] = (w[z] + part.gens[0][j] * comp.basis[j][z]) % comp.q;
      for (auto& x : w) x *= space.modulus / comp.q;
      res.witness = w;
    }
  }
  res.b0 = invariant_factors(all_orders);
  return res;
}

}  // namespace kbg::bogomolov
