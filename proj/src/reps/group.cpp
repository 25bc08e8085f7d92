#include "kbg/reps/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"

namespace kbg::reps {

namespace {

constexpr int kTableLimit = 2048;

std::string perm_key(const Perm& p) {
  std::string s(p.size(), '\0');
  for (size_t i = 0; i < p.size(); ++i) s[i] = static_cast<char>(p[i]);
  return s;
}

std::string cycle_string(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    bool first = true;
    for (size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = 1;
      out += (first ? "" : " ") + std::to_string(j + 1);
      first = false;
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (size_t x = 0; x < a.size(); ++x) r[a[x]] = static_cast<int>(x);
  return r;
}

Perm perm_from_cycles(const std::vector<std::vector<int>>& cycles, int m) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(m, 0);
  for (const auto& c : cycles)
    for (size_t i = 0; i < c.size(); ++i) {
      int x = c[i];
      if (x < 1 || x > m) throw InvalidArgument("cycle point out of range");
      if (used[x - 1]++) throw InvalidArgument("point repeated in cycles");
      p[x - 1] = c[(i + 1) % c.size()] - 1;
    }
  return p;
}

FinGroup FinGroup::from_permutations(const std::vector<Perm>& gens, int max_order) {
  if (gens.empty()) throw InvalidArgument("need at least one generator (use the identity for the trivial group)");
  size_t m = gens.front().size();
  for (const auto& g : gens) {
    if (g.size() != m) throw InvalidArgument("generators act on different sets");
    std::vector<char> seen(m, 0);
    for (int x : g) {
      if (x < 0 || x >= static_cast<int>(m) || seen[x]++) throw InvalidArgument("generator is not a permutation");
    }
  }
  if (m > 250) throw SizeLimit("permutation degree limited to 250");
  FinGroup G;
  Perm id(m);
  std::iota(id.begin(), id.end(), 0);
  G.perms_.push_back(id);
  G.perm_index_[perm_key(id)] = 0;
  for (size_t i = 0; i < G.perms_.size(); ++i) {
    for (const auto& s : gens) {
      Perm h = perm_compose(s, G.perms_[i]);
      auto key = perm_key(h);
      if (G.perm_index_.count(key)) continue;
      if (static_cast<int>(G.perms_.size()) >= max_order)
        throw SizeLimit("group order exceeds " + std::to_string(max_order));
      G.perm_index_.emplace(key, static_cast<int>(G.perms_.size()));
      G.perms_.push_back(std::move(h));
    }
  }
  G.n_ = static_cast<int>(G.perms_.size());
  G.id_ = 0;
  for (const auto& s : gens) {
    int idx = G.perm_index_.at(perm_key(s));
    if (idx != 0 && std::find(G.gens_.begin(), G.gens_.end(), idx) == G.gens_.end()) G.gens_.push_back(idx);
  }
  if (G.n_ <= kTableLimit) {
    G.table_.resize(static_cast<size_t>(G.n_) * G.n_);
    for (int a = 0; a < G.n_; ++a)
      for (int b = 0; b < G.n_; ++b)
        G.table_[static_cast<size_t>(a) * G.n_ + b] =
            static_cast<std::uint16_t>(G.perm_index_.at(perm_key(perm_compose(G.perms_[a], G.perms_[b]))));
  }
  for (const auto& p : G.perms_) G.labels_.push_back(cycle_string(p));
  G.finish();
  return G;
}

FinGroup FinGroup::from_table(const std::vector<std::vector<int>>& table) {
  int n = static_cast<int>(table.size());
  if (n == 0) throw InconsistentTable("empty table");
  if (n > kMaxOrder) throw SizeLimit("table groups limited to order " + std::to_string(kMaxOrder));
  FinGroup G;
  G.n_ = n;
  G.table_.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n) throw InconsistentTable("table is not square");
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) {
      int v = table[a][b];
      if (v < 0 || v >= n) throw InconsistentTable("table entry out of range");
      if (seen[v]++) throw InconsistentTable("row " + std::to_string(a) + " repeats an element");
      G.table_[static_cast<size_t>(a) * n + b] = static_cast<std::uint16_t>(v);
    }
  }
  for (int b = 0; b < n; ++b) {
    std::vector<char> seen(n, 0);
    for (int a = 0; a < n; ++a)
      if (seen[table[a][b]]++) throw InconsistentTable("column " + std::to_string(b) + " repeats an element");
  }
  int id = -1;
  for (int e = 0; e < n && id < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
    if (ok) id = e;
  }
  if (id < 0) throw InconsistentTable("no identity element");
  G.id_ = id;
  // greedy generating set, then Light's test on it
  std::vector<char> in(n, 0);
  in[id] = 1;
  for (int g = 0; g < n; ++g) {
    if (in[g]) continue;
    G.gens_.push_back(g);
    for (int x : G.generated(G.gens_)) in[x] = 1;
  }
  for (int s : G.gens_)
    for (int x = 0; x < n; ++x) {
      int xs = table[x][s];
      for (int y = 0; y < n; ++y)
        if (table[xs][y] != table[x][table[s][y]]) throw InconsistentTable("multiplication is not associative");
    }
  for (int g = 0; g < n; ++g) G.labels_.push_back(std::to_string(g));
  G.finish();
  return G;
}

FinGroup FinGroup::from_json(const nlohmann::json& j) {
  if (j.contains("perm_gens")) {
    int m = j.value("degree", 0);
    std::vector<std::vector<std::vector<int>>> cyc = j.at("perm_gens").get<std::vector<std::vector<std::vector<int>>>>();
    for (const auto& g : cyc)
      for (const auto& c : g)
        for (int x : c) m = std::max(m, x);
    std::vector<Perm> gens;
    for (const auto& g : cyc) gens.push_back(perm_from_cycles(g, m));
    if (gens.empty()) gens.push_back(perm_from_cycles({}, std::max(m, 1)));
    return from_permutations(gens);
  }
  if (j.contains("table")) return from_table(j.at("table").get<std::vector<std::vector<int>>>());
  throw ParseError("group JSON needs \"perm_gens\" or \"table\"");
}

void FinGroup::finish() {
  inv_.assign(n_, 0);
  ord_.assign(n_, 1);
  exponent_ = 1;
  for (int a = 0; a < n_; ++a) {
    int k = 1, x = a;
    while (x != id_) {
      x = mul(x, a);
      ++k;
    }
    ord_[a] = k;
    inv_[a] = power(a, k - 1);
    exponent_ = static_cast<int>(lcm64(exponent_, k));
  }
  class_of_.assign(n_, -1);
  classes_.clear();
  for (int g = 0; g < n_; ++g) {
    if (class_of_[g] >= 0) continue;
    int c = static_cast<int>(classes_.size());
    std::vector<int> cls{g};
    class_of_[g] = c;
    for (size_t i = 0; i < cls.size(); ++i)
      for (int s : gens_) {
        int h = mul(mul(s, cls[i]), inv_[s]);
        if (class_of_[h] < 0) {
          class_of_[h] = c;
          cls.push_back(h);
        }
      }
    std::sort(cls.begin(), cls.end());
    classes_.push_back(std::move(cls));
  }
}

int FinGroup::mul(int a, int b) const {
  if (!table_.empty()) return table_[static_cast<size_t>(a) * n_ + b];
  return perm_index_.at(perm_key(perm_compose(perms_[a], perms_[b])));
}

int FinGroup::power(int a, long k) const {
  long o = ord_.empty() ? 0 : ord_[a];
  if (o > 0) k = ((k % o) + o) % o;
  if (k < 0) {
    // only during finish(): orders not known yet
    throw InvalidArgument("negative power before orders are known");
  }
  int r = id_, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

bool FinGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (mul(gens_[i], gens_[j]) != mul(gens_[j], gens_[i])) return false;
  return true;
}

std::vector<int> FinGroup::generated(const std::vector<int>& gens) const {
  std::vector<char> in(n_, 0);
  std::vector<int> out{id_};
  in[id_] = 1;
  for (size_t i = 0; i < out.size(); ++i)
    for (int s : gens) {
      int h = mul(out[i], s);
      if (!in[h]) {
        in[h] = 1;
        out.push_back(h);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> FinGroup::centralizer(const std::vector<int>& elems) const {
  std::vector<int> out;
  for (int g = 0; g < n_; ++g) {
    bool ok = true;
    for (int x : elems)
      if (mul(g, x) != mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

bool FinGroup::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(id_)) return false;
  for (int a : s)
    for (int b : s)
      if (!s.count(mul(a, inv_[b]))) return false;
  return true;
}

nlohmann::json FinGroup::table_json() const {
  std::vector<std::vector<int>> t(n_, std::vector<int>(n_));
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[a][b] = mul(a, b);
  return {{"table", t}};
}

// ---------------------------------------------------------------------------

namespace {

FinGroup named(FinGroup g, const std::string& name) {
  g.set_name(name);
  return g;
}

}  // namespace

FinGroup FinGroup::cyclic(int n) {
  if (n < 1) throw InvalidArgument("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return named(from_table(t), "C" + std::to_string(n));
}

FinGroup FinGroup::symmetric(int n) {
  if (n < 1) throw InvalidArgument("symmetric group degree must be positive");
  if (n == 1) return named(from_permutations({Perm{0}}), "S1");
  Perm cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  return named(from_permutations({perm_from_cycles({{1, 2}}, n), cyc}), "S" + std::to_string(n));
}

FinGroup FinGroup::alternating(int n) {
  if (n < 3) return named(from_permutations({Perm(std::max(n, 1), 0)}), "A" + std::to_string(n));
  std::vector<Perm> gens;
  for (int k = 3; k <= n; ++k) gens.push_back(perm_from_cycles({{1, 2, k}}, n));
  return named(from_permutations(gens), "A" + std::to_string(n));
}

FinGroup FinGroup::dihedral(int n) {
  if (n < 1) throw InvalidArgument("dihedral parameter must be positive");
  // elements r^i s^j, s r = r^{-1} s
  int N = 2 * n;
  auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * j; };
  std::vector<std::vector<int>> t(N, std::vector<int>(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < 2; ++l) t[idx(i, j)][idx(k, l)] = j == 0 ? idx(i + k, l) : idx(i - k, (1 + l) % 2);
  return named(from_table(t), "D" + std::to_string(N));
}

FinGroup FinGroup::quaternion(int n) {
  if (n < 8 || (n & (n - 1))) throw InvalidArgument("generalised quaternion order must be a power of 2, >= 8");
  int M = n / 2;
  // a^i b^j with b a = a^{-1} b, b^2 = a^{M/2}
  auto idx = [M](int i, int j) { return ((i % M) + M) % M + M * j; };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < M; ++k)
        for (int l = 0; l < 2; ++l) {
          int r;
          if (j == 0)
            r = idx(i + k, l);
          else if (l == 0)
            r = idx(i - k, 1);
          else
            r = idx(i - k + M / 2, 0);
          t[idx(i, j)][idx(k, l)] = r;
        }
  return named(from_table(t), "Q" + std::to_string(n));
}

FinGroup FinGroup::abelian(const std::vector<int>& orders) {
  int n = 1;
  for (int o : orders) {
    if (o < 1) throw InvalidArgument("cyclic factor orders must be positive");
    n *= o;
    if (n > kMaxOrder) throw SizeLimit("abelian group too large");
  }
  auto digits = [&](int x) {
    std::vector<int> d(orders.size());
    for (size_t i = 0; i < orders.size(); ++i) {
      d[i] = x % orders[i];
      x /= orders[i];
    }
    return d;
  };
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    auto da = digits(a);
    for (int b = 0; b < n; ++b) {
      auto db = digits(b);
      int r = 0, w = 1;
      for (size_t i = 0; i < orders.size(); ++i) {
        r += ((da[i] + db[i]) % orders[i]) * w;
        w *= orders[i];
      }
      t[a][b] = r;
    }
  }
  std::string name;
  for (size_t i = 0; i < orders.size(); ++i) name += (i ? "x" : "") + std::string("C") + std::to_string(orders[i]);
  return named(from_table(t), name.empty() ? "C1" : name);
}

FinGroup FinGroup::direct_product(const FinGroup& a, const FinGroup& b) {
  int n = a.order() * b.order();
  if (n > kMaxOrder) throw SizeLimit("direct product too large");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  int nb = b.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return named(from_table(t), a.name() + "x" + b.name());
}

FinGroup FinGroup::units_mod(int n) {
  if (n < 1) throw InvalidArgument("modulus must be positive");
  std::vector<long> res;
  for (long a = 0; a < std::max(n, 2); ++a)
    if (gcd64(a, n) == 1) res.push_back(a % n);
  if (n == 1) res = {0};
  int k = static_cast<int>(res.size());
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long p = n == 1 ? 0 : (res[i] * res[j]) % n;
      t[i][j] = static_cast<int>(std::find(res.begin(), res.end(), p) - res.begin());
    }
  FinGroup G = from_table(t);
  G.residues_ = res;
  for (int i = 0; i < k; ++i) G.labels_[i] = std::to_string(res[i]);
  G.name_ = "(Z/" + std::to_string(n) + ")^*";
  return G;
}

}  // namespace kbg::reps
