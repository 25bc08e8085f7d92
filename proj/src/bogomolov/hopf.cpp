#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "kbg/arith/intmatrix.hpp"
#include "kbg/arith/numtheory.hpp"
#include "kbg/bogomolov/bogomolov.hpp"
#include "kbg/errors.hpp"

namespace kbg::bogomolov {

using reps::FinGroup;
using reps::GroupPtr;

namespace {

struct Letter {
  int gen;
  bool inverse;
};

using Word = std::vector<Letter>;

Word tree_word(const CayleyTree& t, int x) {
  Word w;
  for (int i : t.letters[x]) w.push_back({i, false});
  return w;
}

Word inverse_word(Word w) {
  std::reverse(w.begin(), w.end());
  for (auto& l : w) l.inverse = !l.inverse;
  return w;
}

// Image of a word, read from vertex v, in R/[F,R] written on the free basis of non-tree edges.
// Returns the end vertex.
int rewrite(const FinGroup& g, const CayleyTree& t, int v, const Word& w, std::vector<long>& acc) {
  for (const auto& l : w) {
    int s = t.gens[l.gen];
    if (!l.inverse) {
      int e = t.edge[v][l.gen];
      if (e >= 0) acc[e] += 1;
      v = g.mul(v, s);
    } else {
      v = g.mul(v, g.inv(s));
      int e = t.edge[v][l.gen];
      if (e >= 0) acc[e] -= 1;
    }
  }
  return v;
}

CokernelInvariants cokernel_of(const std::vector<std::vector<long>>& cols, int m) {
  IntMatrix A(m, static_cast<int>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int i = 0; i < m; ++i) A(i, static_cast<int>(c)) = cols[c][i];
  return cokernel(A);
}

std::vector<long> to_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

HopfResult b0_hopf(const FinGroup& g) {
  int n = g.order();
  if (n > kMaxGroupOrder) throw SizeLimit("cocycle computations limited to groups of order " + std::to_string(kMaxGroupOrder));
  HopfResult res;
  if (n == 1) return res;
  CayleyTree t = cayley_tree(g);
  int d = static_cast<int>(t.gens.size());
  // relators w = sigma(h) s sigma(hs)^-1, one per non-tree edge, form a free basis of R
  std::vector<Word> rel(t.m);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < d; ++i) {
      int e = t.edge[h][i];
      if (e < 0) continue;
      Word w = tree_word(t, h);
      w.push_back({i, false});
      Word back = inverse_word(tree_word(t, g.mul(h, t.gens[i])));
      w.insert(w.end(), back.begin(), back.end());
      rel[e] = w;
    }
  std::set<std::vector<long>> cols;
  for (int i = 0; i < d; ++i)
    for (int e = 0; e < t.m; ++e) {
      std::vector<long> acc(t.m, 0);
      int end = rewrite(g, t, t.gens[i], rel[e], acc);
      if (end != t.gens[i]) throw std::logic_error("relator does not close up");
      acc[e] -= 1;
      if (std::any_of(acc.begin(), acc.end(), [](long x) { return x != 0; })) cols.insert(acc);
    }
  std::vector<std::vector<long>> base(cols.begin(), cols.end());
  CokernelInvariants ck = cokernel_of(base, t.m);
  res.h2 = to_longs(ck.torsion);
  res.free_rank = ck.free_rank;

  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      if (x == g.identity() || y == g.identity() || g.mul(x, y) != g.mul(y, x)) continue;
      Word w = tree_word(t, x);
      Word wy = tree_word(t, y);
      w.insert(w.end(), wy.begin(), wy.end());
      Word ix = inverse_word(tree_word(t, x)), iy = inverse_word(wy);
      w.insert(w.end(), ix.begin(), ix.end());
      w.insert(w.end(), iy.begin(), iy.end());
      std::vector<long> acc(t.m, 0);
      if (rewrite(g, t, g.identity(), w, acc) != g.identity()) throw std::logic_error("commutator does not close up");
      if (std::any_of(acc.begin(), acc.end(), [](long v) { return v != 0; })) cols.insert(acc);
    }
  std::vector<std::vector<long>> all(cols.begin(), cols.end());
  res.b0 = to_longs(cokernel_of(all, t.m).torsion);
  return res;
}

std::vector<GroupPtr> abelian_groups(int max_order) {
  std::vector<GroupPtr> out;
  for (int n = 2; n <= max_order; ++n) {
    auto f = factorize(n);
    // one partition per prime, combined into invariant factors
    std::vector<std::vector<std::vector<int>>> choices;
    for (auto [p, e] : f) choices.push_back(partitions(e));
    std::vector<size_t> idx(f.size(), 0);
    while (true) {
      std::vector<long> cyc;
      for (size_t i = 0; i < f.size(); ++i)
        for (int part : choices[i][idx[i]]) cyc.push_back(ipow64(f[i].first, part));
      std::vector<long> inv = invariant_factors(cyc);
      std::vector<int> orders(inv.begin(), inv.end());
      auto G = std::make_shared<FinGroup>(FinGroup::abelian(orders));
      std::string name;
      for (int o : orders) name += (name.empty() ? "C" : "xC") + std::to_string(o);
      G->set_name(name);
      out.push_back(G);
      size_t i = 0;
      while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
      if (i == idx.size()) break;
    }
  }
  return out;
}

std::vector<GroupPtr> b0_suite(int max_order) {
  std::vector<GroupPtr> out = abelian_groups(max_order);
  auto add = [&](FinGroup g, const std::string& name) {
    if (g.order() > max_order) return;
    g.set_name(name);
    out.push_back(std::make_shared<FinGroup>(std::move(g)));
  };
  for (int n = 3; 2 * n <= max_order; ++n) add(FinGroup::dihedral(n), "D" + std::to_string(2 * n));
  for (int n = 8; n <= max_order; n *= 2) add(FinGroup::quaternion(n), "Q" + std::to_string(n));
  add(FinGroup::alternating(4), "A4");
  add(FinGroup::symmetric(4), "S4");
  auto s5 = std::make_shared<FinGroup>(FinGroup::symmetric(5));
  s5->set_name("S5");
  out.push_back(s5);
  return out;
}

}  // namespace kbg::bogomolov
