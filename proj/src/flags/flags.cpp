#include "kbg/flags/flags.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

#include "kbg/errors.hpp"

namespace kbg::flags {

using kring::LClass;
using kring::LPoly;

// ---------------------------------------------------------------------------
// Stabiliser trees

StabiliserTree StabiliserTree::symmetric(int t) {
  StabiliserTree s;
  s.kind = Kind::Symmetric;
  s.t = t;
  return s;
}

StabiliserTree StabiliserTree::wreath(StabiliserTree inner, int t) {
  if (t == 1) return inner;
  if (inner.kind == Kind::Symmetric && inner.t == 1) return symmetric(t);
  StabiliserTree s;
  s.kind = Kind::Wreath;
  s.t = t;
  s.children.push_back(std::move(inner));
  return s;
}

StabiliserTree StabiliserTree::product(std::vector<StabiliserTree> factors) {
  if (factors.size() == 1) return std::move(factors.front());
  StabiliserTree s;
  s.kind = Kind::Product;
  s.t = 0;
  s.children = std::move(factors);
  return s;
}

BigInt StabiliserTree::order() const {
  switch (kind) {
    case Kind::Symmetric:
      return factorial(t);
    case Kind::Wreath:
      return pow_int(children.front().order(), t) * factorial(t);
    case Kind::Product: {
      BigInt r = 1;
      for (const auto& c : children) r *= c.order();
      return r;
    }
  }
  return 0;
}

std::string StabiliserTree::to_string() const {
  switch (kind) {
    case Kind::Symmetric:
      return "Symmetric(" + std::to_string(t) + ")";
    case Kind::Wreath:
      return "Wreath(" + children.front().to_string() + ", " + std::to_string(t) + ")";
    case Kind::Product: {
      std::string s = "Product(";
      for (size_t i = 0; i < children.size(); ++i) s += (i ? ", " : "") + children[i].to_string();
      return s + ")";
    }
  }
  return "";
}

bool StabiliserTree::operator==(const StabiliserTree& o) const {
  return kind == o.kind && t == o.t && children == o.children;
}

// ---------------------------------------------------------------------------
// Leveled tree of a flag: level 0 are the points, level j the blocks of R_j,
// level k+1 a single root.

namespace {

struct FlagTree {
  int k = 0;
  std::vector<std::vector<std::vector<int>>> children;  // children[j][b]: indices at level j-1
  std::vector<std::vector<std::string>> codes;
};

FlagTree build_tree(const EquivFlag& f) {
  f.validate();
  int n = f.n, k = f.length();
  FlagTree t;
  t.k = k;
  std::vector<std::vector<int>> lab(k + 2, std::vector<int>(n + 1, 0));
  for (int x = 1; x <= n; ++x) lab[0][x] = x - 1;
  for (int j = 1; j <= k; ++j)
    for (size_t b = 0; b < f.chain[j - 1].blocks.size(); ++b)
      for (int x : f.chain[j - 1].blocks[b]) lab[j][x] = static_cast<int>(b);
  t.children.resize(k + 2);
  t.codes.resize(k + 2);
  t.codes[0].assign(n, ".");
  for (int j = 1; j <= k + 1; ++j) {
    int nb = j <= k ? static_cast<int>(f.chain[j - 1].blocks.size()) : 1;
    std::vector<std::set<int>> ch(nb);
    for (int x = 1; x <= n; ++x) ch[lab[j][x]].insert(lab[j - 1][x]);
    t.children[j].resize(nb);
    t.codes[j].resize(nb);
    for (int b = 0; b < nb; ++b) {
      t.children[j][b].assign(ch[b].begin(), ch[b].end());
      std::vector<std::string> cc;
      for (int c : ch[b]) cc.push_back(t.codes[j - 1][c]);
      std::sort(cc.begin(), cc.end());
      std::string s = "(";
      for (auto& c : cc) s += c;
      t.codes[j][b] = s + ")";
    }
  }
  return t;
}

StabiliserTree decompose(const FlagTree& t, int level, int node) {
  if (level == 0) return StabiliserTree::symmetric(1);
  std::map<std::string, std::vector<int>> groups;
  for (int c : t.children[level][node]) groups[t.codes[level - 1][c]].push_back(c);
  std::vector<StabiliserTree> factors;
  for (const auto& [code, members] : groups)
    factors.push_back(
        StabiliserTree::wreath(decompose(t, level - 1, members.front()), static_cast<int>(members.size())));
  return StabiliserTree::product(std::move(factors));
}

}  // namespace

std::string canonical_code(const EquivFlag& f) {
  FlagTree t = build_tree(f);
  return t.codes[t.k + 1][0];
}

StabiliserTree stabiliser_decomposition(const EquivFlag& f) {
  FlagTree t = build_tree(f);
  return decompose(t, t.k + 1, 0);
}

// ---------------------------------------------------------------------------
// Enumeration of classes as isomorphism types of leveled trees.

namespace {

struct NodeType {
  int size = 0;
  std::uint32_t mask = 0;  // levels j >= 1 containing a node with >= 2 children
  std::uint64_t aut = 1;
  std::vector<int> children;  // indices into the previous level, non-decreasing
};

std::uint64_t fact64(int m) {
  std::uint64_t r = 1;
  for (int i = 2; i <= m; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t aut_of(const std::vector<NodeType>& prev, const std::vector<int>& children) {
  std::uint64_t a = 1;
  for (size_t i = 0; i < children.size();) {
    size_t j = i;
    while (j < children.size() && children[j] == children[i]) ++j;
    for (size_t r = i; r < j; ++r) a *= prev[children[i]].aut;
    a *= fact64(static_cast<int>(j - i));
    i = j;
  }
  return a;
}

// Representatives give the smallest labels to the largest subtrees.
std::vector<int> larger_first(const std::vector<NodeType>& types, std::vector<int> ids) {
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) { return types[a].size > types[b].size; });
  return ids;
}

void label_leaves(const std::vector<std::vector<NodeType>>& lv, int level, int id, int& next,
                  std::vector<std::vector<std::vector<int>>>& blocks, std::vector<int>& leaves) {
  if (level == 0) {
    leaves.push_back(next++);
    return;
  }
  std::vector<int> mine;
  for (int c : larger_first(lv[level - 1], lv[level][id].children)) label_leaves(lv, level - 1, c, next, blocks, mine);
  blocks[level].push_back(mine);
  leaves.insert(leaves.end(), mine.begin(), mine.end());
}

}  // namespace

std::vector<FlagClass> enumerate_flag_classes(int n, int max_n) {
  if (n > max_n) throw SizeLimit("flag enumeration limited to n <= " + std::to_string(max_n));
  if (n < 1) throw InvalidArgument("n must be positive");
  std::vector<FlagClass> out;
  std::vector<std::vector<NodeType>> lv(1);
  lv[0].push_back(NodeType{1, 0, 1, {}});
  BigInt nfact = factorial(n);

  for (int j = 1; j < n; ++j) {
    // Multisets of level j-1 types give level j types; multisets of level j
    // types of total size n give roots for flags of length k = j.
    const auto& prev = lv[j - 1];
    std::vector<int> order(prev.size());
    for (size_t i = 0; i < prev.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return prev[a].size < prev[b].size; });
    std::vector<NodeType> cur;
    std::vector<int> picked;
    std::function<void(size_t, int, std::uint32_t)> rec = [&](size_t start, int size, std::uint32_t mask) {
      for (size_t p = start; p < order.size(); ++p) {
        const NodeType& c = prev[order[p]];
        if (size + c.size > n) break;
        picked.push_back(order[p]);
        int s = size + c.size;
        std::uint32_t m = mask | c.mask;
        std::uint32_t mm = m | (picked.size() >= 2 ? (1u << j) : 0u);
        int missing = j - std::popcount(mm);
        bool keep = s == n ? missing == 0 : missing <= n - s - 1;
        if (keep) {
          NodeType t;
          t.size = s;
          t.mask = mm;
          t.children = picked;
          std::sort(t.children.begin(), t.children.end());
          t.aut = aut_of(prev, t.children);
          cur.push_back(std::move(t));
        }
        rec(p, s, m);
        picked.pop_back();
      }
    };
    rec(0, 0, 0);
    lv.push_back(std::move(cur));

    // Roots of flags of length j: multisets of level-j types of size n
    // whose branching levels cover 1..j.
    const auto& level = lv[j];
    std::uint32_t need = 0;
    for (int i = 1; i <= j; ++i) need |= 1u << i;
    std::vector<int> ord(level.size());
    for (size_t i = 0; i < level.size(); ++i) ord[i] = static_cast<int>(i);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return level[a].size < level[b].size; });
    std::function<void(size_t, int, std::uint32_t)> roots = [&](size_t start, int size, std::uint32_t mask) {
      for (size_t p = start; p < ord.size(); ++p) {
        const NodeType& c = level[ord[p]];
        if (size + c.size > n) break;
        picked.push_back(ord[p]);
        int s = size + c.size;
        std::uint32_t m = mask | c.mask;
        if (s == n) {
          if ((m & need) == need) {
            std::vector<int> ch = picked;
            std::sort(ch.begin(), ch.end());
            std::vector<std::vector<std::vector<int>>> blocks(j + 1);
            int next = 1;
            std::vector<int> all;
            for (int c2 : larger_first(level, ch)) label_leaves(lv, j, c2, next, blocks, all);
            FlagClass fc;
            fc.rep.n = n;
            for (int l = 1; l <= j; ++l) fc.rep.chain.push_back(SetPartition::from_blocks(n, blocks[l]));
            fc.n_f = j;
            fc.d_f = static_cast<int>(ch.size());
            fc.stab_order = BigInt(std::to_string(aut_of(level, ch)));
            fc.orbit_size = nfact / fc.stab_order;
            fc.stabiliser = stabiliser_decomposition(fc.rep);
            if (fc.stabiliser.order() != fc.stab_order)
              throw std::logic_error("stabiliser decomposition disagrees with automorphism count");
            out.push_back(std::move(fc));
          }
        } else {
          roots(p, s, m);
        }
        picked.pop_back();
      }
    };
    roots(0, 0, 0);
  }
  std::sort(out.begin(), out.end(), [](const FlagClass& a, const FlagClass& b) {
    if (a.n_f != b.n_f) return a.n_f < b.n_f;
    if (a.d_f != b.d_f) return a.d_f > b.d_f;
    return a.rep.to_string() < b.rep.to_string();
  });
  return out;
}

IntPoly char_poly_sigma(int n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  // A Sigma_n-invariant partition is discrete or full, so the only strict flag
  // all of whose members are invariant is (full), with n_f = 1 and d_f = 1.
  IntPoly phi = IntPoly::monomial(n);
  if (n >= 2) phi -= IntPoly::monomial(1);
  return phi;
}

RecursionReport recursion_identity(int n, int max_n) {
  if (n < 2) throw InvalidArgument("recursion identity needs n >= 2");
  auto classes = enumerate_flag_classes(n, max_n);
  RecursionReport r;
  LPoly sum;
  for (const auto& c : classes) {
    RecursionTerm t;
    t.flag = c.rep.to_string();
    t.n_f = c.n_f;
    t.d_f = c.d_f;
    t.sign = c.sign();
    t.value = LClass(LPoly::monomial(c.d_f, c.sign()));
    sum += LPoly::monomial(c.d_f, c.sign());
    r.terms.push_back(std::move(t));
  }
  r.flag_sum = LClass(sum);
  r.lhs = LClass(LPoly::monomial(n));
  r.rhs = LClass(LPoly::monomial(n) - LPoly::monomial(n - 1)) + r.flag_sum;
  r.holds = r.lhs == r.rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

using nlohmann::json;

json node_json(const StabiliserTree& s, std::set<int>& cited) {
  json j;
  j["order"] = s.order().get_str();
  j["value"] = "1";
  switch (s.kind) {
    case StabiliserTree::Kind::Symmetric:
      j["kind"] = "symmetric";
      j["t"] = s.t;
      j["cites"] = s.t;
      j["rule"] = s.t == 1 ? "base case {B Sigma_1} = 1"
                           : "hypothesis {B Sigma_" + std::to_string(s.t) + "} = 1";
      cited.insert(s.t);
      break;
    case StabiliserTree::Kind::Wreath:
      j["kind"] = "wreath";
      j["t"] = s.t;
      j["inner"] = node_json(s.children.front(), cited);
      j["cites"] = s.t;
      j["rule"] = "{B(X wr Sigma_" + std::to_string(s.t) + ")} = sigma_s^" + std::to_string(s.t) +
                  "({BX}) = sigma_s^" + std::to_string(s.t) + "(1) = {B Sigma_" + std::to_string(s.t) +
                  "} = 1";
      cited.insert(s.t);
      break;
    case StabiliserTree::Kind::Product: {
      j["kind"] = "product";
      j["factors"] = json::array();
      for (const auto& c : s.children) j["factors"].push_back(node_json(c, cited));
      j["rule"] = "{B(X x Y)} = {BX}{BY}";
      break;
    }
  }
  return j;
}

}  // namespace

json bsigma_certificate(int n, int max_n) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (n > max_n) throw SizeLimit("certificate limited to n <= " + std::to_string(max_n));
  json cert;
  cert["n"] = n;
  cert["claim"] = "{B Sigma_" + std::to_string(n) + "} = 1";
  if (n == 1) {
    cert["value"] = "1";
    cert["base"] = true;
    cert["derivation"] = json::array();
    cert["hypotheses"] = json::array();
    return cert;
  }
  auto classes = enumerate_flag_classes(n, max_n);
  std::set<int> cited;
  json flags = json::array();
  LClass rhs(LPoly::monomial(n) - LPoly::monomial(n - 1));
  for (const auto& c : classes) {
    bool is_full = c.n_f == 1 && c.rep.chain.front().is_full();
    if (is_full) continue;  // {B Sigma_n} L moves to the left-hand side
    json fj;
    fj["flag"] = c.rep.to_string();
    fj["n_f"] = c.n_f;
    fj["d_f"] = c.d_f;
    fj["sign"] = c.sign();
    fj["stab_order"] = c.stab_order.get_str();
    fj["stabiliser"] = node_json(c.stabiliser, cited);
    fj["value"] = "1";
    flags.push_back(fj);
    rhs += LClass(LPoly::monomial(c.d_f, c.sign()));
  }
  LClass lhs_factor(LPoly::monomial(n) - LPoly::monomial(1));
  LClass value = rhs / lhs_factor;
  cert["equation"] = {
      {"statement", "(L^n - L) {B Sigma_n} = (L^n - L^(n-1)) + sum over non-full flag classes of "
                    "(-1)^(n_f+1) {B N_f} L^(d_f)"},
      {"lhs_factor", lhs_factor.to_string()},
      {"free_stratum", LClass(LPoly::monomial(n) - LPoly::monomial(n - 1)).to_string()},
      {"rhs", rhs.to_string()},
  };
  cert["derivation"] = flags;
  cert["flag_class_count"] = classes.size();
  cert["hypotheses"] = json(std::vector<int>(cited.begin(), cited.end()));
  cert["value"] = value.to_string();
  return cert;
}

namespace {

struct NodeCheck {
  BigInt order;
  LClass value;
};

NodeCheck check_node(const json& j, int n, std::vector<std::string>& problems, const std::string& where) {
  NodeCheck r{1, LClass(1)};
  std::string kind = j.value("kind", "");
  auto declared_value = LClass::parse(j.value("value", "0"));
  if (kind == "symmetric" || kind == "wreath") {
    int t = j.value("t", 0);
    if (t < 1 || t >= n) problems.push_back(where + ": cites Sigma_" + std::to_string(t) + " which is not smaller than n");
    if (j.value("cites", -1) != t) problems.push_back(where + ": citation does not match t");
    if (kind == "symmetric") {
      r.order = factorial(t);
    } else {
      if (t < 2) problems.push_back(where + ": wreath with t < 2 should have been simplified");
      NodeCheck inner = check_node(j.at("inner"), n, problems, where + "/inner");
      r.order = pow_int(inner.order, t) * factorial(t);
      if (inner.value != LClass(1)) problems.push_back(where + ": inner value is not 1");
    }
    // {B Sigma_t} = 1 by hypothesis (t < n) or base case (t = 1).
    r.value = LClass(1);
  } else if (kind == "product") {
    for (size_t i = 0; i < j.at("factors").size(); ++i) {
      NodeCheck f = check_node(j["factors"][i], n, problems, where + "/factor" + std::to_string(i));
      r.order *= f.order;
      r.value *= f.value;
    }
  } else {
    problems.push_back(where + ": unknown node kind '" + kind + "'");
  }
  if (BigInt(j.value("order", std::string("0"))) != r.order) problems.push_back(where + ": order mismatch");
  if (declared_value != r.value) problems.push_back(where + ": declared value differs from derived value");
  return r;
}

}  // namespace

CertificateCheck validate_certificate(const json& cert) {
  CertificateCheck out;
  try {
    int n = cert.at("n").get<int>();
    if (n == 1) {
      out.value = LClass::parse(cert.at("value").get<std::string>());
      out.valid = out.value == LClass(1) && cert.at("derivation").empty();
      if (!out.valid) out.problems.push_back("base case must have value 1 and no flags");
      return out;
    }
    LClass rhs(LPoly::monomial(n) - LPoly::monomial(n - 1));
    std::set<std::string> codes;
    BigInt orbit_total = 0;
    for (size_t i = 0; i < cert.at("derivation").size(); ++i) {
      const json& fj = cert["derivation"][i];
      std::string where = "flag " + fj.value("flag", std::string("?"));
      EquivFlag f = EquivFlag::parse(n, fj.at("flag").get<std::string>());
      if (f.length() == 1 && f.chain.front().is_full()) out.problems.push_back(where + ": full flag belongs on the left");
      if (!codes.insert(canonical_code(f)).second) out.problems.push_back(where + ": duplicate conjugacy class");
      if (fj.at("n_f").get<int>() != f.length()) out.problems.push_back(where + ": wrong n_f");
      if (fj.at("d_f").get<int>() != static_cast<int>(f.chain.back().blocks.size()))
        out.problems.push_back(where + ": wrong d_f");
      int sign = f.length() % 2 == 1 ? 1 : -1;
      if (fj.at("sign").get<int>() != sign) out.problems.push_back(where + ": wrong sign");
      NodeCheck nc = check_node(fj.at("stabiliser"), n, out.problems, where);
      if (nc.order != stabiliser_decomposition(f).order())
        out.problems.push_back(where + ": stabiliser order does not match the flag");
      if (BigInt(fj.at("stab_order").get<std::string>()) != nc.order)
        out.problems.push_back(where + ": stab_order field mismatch");
      orbit_total += factorial(n) / nc.order;
      rhs += nc.value * LClass(LPoly::monomial(f.chain.back().blocks.size(), sign));
    }
    // Completeness: the listed classes plus the full flag exhaust all strict chains.
    auto classes = enumerate_flag_classes(n, std::max(n, 9));
    if (classes.size() != cert["derivation"].size() + 1)
      out.problems.push_back("flag list is incomplete: expected " + std::to_string(classes.size() - 1) + " classes");
    BigInt expected_total = 0;
    for (const auto& c : classes) expected_total += c.orbit_size;
    if (orbit_total + 1 != expected_total) out.problems.push_back("orbit sizes do not account for every chain");
    out.value = rhs / LClass(LPoly::monomial(n) - LPoly::monomial(1));
    if (out.value != LClass(1)) out.problems.push_back("derived value is " + out.value.to_string() + ", not 1");
    if (LClass::parse(cert.at("value").get<std::string>()) != out.value)
      out.problems.push_back("declared value differs from derived value");
  } catch (const std::exception& e) {
    out.problems.push_back(std::string("malformed certificate: ") + e.what());
  }
  out.valid = out.problems.empty();
  return out;
}

}  // namespace kbg::flags
