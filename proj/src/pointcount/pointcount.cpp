#include "kbg/pointcount/pointcount.hpp"

#include <map>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"

namespace kbg::pointcount {

void check_q(const BigInt& q) {
  if (q < 2 || !q.fits_slong_p()) throw InvalidQ("q must be a prime power, got " + q.get_str());
  std::int64_t p;
  int k;
  if (!prime_power(q.get_si(), p, k)) throw InvalidQ(q.get_str() + " is not a prime power");
}

namespace {

BigInt count_unchecked(const CountExpr& x, long q, int r) {
  switch (x.kind()) {
    case CountExpr::Kind::Point:
      return 1;
    case CountExpr::Kind::Affine:
      return pow_int(BigInt(q), static_cast<unsigned long>(r) * x.dim());
    case CountExpr::Kind::Gm:
      return pow_int(BigInt(q), r) - 1;
    case CountExpr::Kind::Etale: {
      // fixed points of perm^r: points on cycles whose length divides r
      const auto& p = x.perm();
      std::vector<char> seen(p.size(), 0);
      BigInt fixed = 0;
      for (size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (size_t j = i; !seen[j]; j = p[j]) {
          seen[j] = 1;
          ++len;
        }
        if (r % len == 0) fixed += len;
      }
      return fixed;
    }
    case CountExpr::Kind::Sum: {
      BigInt s = 0;
      for (const auto& c : x.parts()) s += count_unchecked(c, q, r);
      return s;
    }
    case CountExpr::Kind::Product: {
      BigInt s = 1;
      for (const auto& c : x.parts()) s *= count_unchecked(c, q, r);
      return s;
    }
  }
  return 0;
}

}  // namespace

BigInt count_points(const CountExpr& x, long q, int r) {
  check_q(q);
  if (r < 1) throw InvalidArgument("extension degree r must be >= 1");
  return count_unchecked(x, q, r);
}

CountFn counts_of(const CountExpr& x, long q) {
  check_q(q);
  return [x, q](int r) { return count_points(x, q, r); };
}

std::vector<BigInt> sym_power_counts(const CountFn& c, int N) {
  if (N < 0) throw InvalidArgument("N must be non-negative");
  // n b_n = sum_{r=1}^n c_r b_{n-r}, from differentiating the zeta function
  std::vector<BigInt> cr(N + 1), b(N + 1);
  for (int r = 1; r <= N; ++r) cr[r] = c(r);
  b[0] = 1;
  for (int n = 1; n <= N; ++n) {
    BigInt s = 0;
    for (int r = 1; r <= n; ++r) s += cr[r] * b[n - r];
    if (!divides_exactly(s, BigInt(n), b[n]))
      throw NonIntegralCount("symmetric power count " + std::to_string(n) + " is not an integer");
    if (b[n] < 0) throw NonIntegralCount("negative symmetric power count");
  }
  return std::vector<BigInt>(b.begin() + 1, b.end());
}

std::vector<BigInt> sym_power_counts(const CountExpr& x, long q, int N) { return sym_power_counts(counts_of(x, q), N); }

CycleType CycleType::from_partition(const std::vector<int>& parts) {
  CycleType t;
  int n = 0;
  for (int p : parts) {
    if (p < 1) throw InvalidArgument("partition parts must be positive");
    n += p;
  }
  t.m.assign(n + 1, 0);
  for (int p : parts) ++t.m[p];
  return t;
}

int CycleType::size() const {
  int n = 0;
  for (size_t l = 1; l < m.size(); ++l) n += static_cast<int>(l) * m[l];
  return n;
}

BigInt CycleType::class_size() const {
  BigInt den = 1;
  for (size_t l = 1; l < m.size(); ++l) den *= pow_int(BigInt(static_cast<long>(l)), m[l]) * factorial(m[l]);
  return factorial(size()) / den;
}

std::string CycleType::to_string() const {
  std::string s = "(";
  bool first = true;
  for (size_t l = m.size(); l-- > 1;)
    for (int k = 0; k < m[l]; ++k) {
      s += (first ? "" : ",") + std::to_string(l);
      first = false;
    }
  return s + ")";
}

std::vector<CycleType> cycle_types(int n) {
  std::vector<CycleType> out;
  for (const auto& p : partitions(n)) out.push_back(CycleType::from_partition(p));
  return out;
}

BigInt exact_degree_count(long q, int l) {
  BigInt e = 0;
  for (auto d : divisors(l)) e += mobius(l / d) * pow_int(BigInt(q), static_cast<unsigned long>(d));
  return e;
}

BigInt twisted_conf_count(const CycleType& lambda, long q) {
  BigInt total = 1;
  for (size_t l = 1; l < lambda.m.size(); ++l) {
    if (!lambda.m[l]) continue;
    BigInt e = exact_degree_count(q, static_cast<int>(l));
    for (int j = 0; j < lambda.m[l]; ++j) {
      BigInt f = e - static_cast<long>(j * l);
      if (f <= 0) return 0;
      total *= f;
    }
  }
  return total;
}

BigInt joint_sigma_Y_count(const std::vector<Group>& groups, long q) {
  check_q(q);
  int total = 0;
  for (const auto& g : groups) {
    if (g.n < 0) throw InvalidArgument("group sizes must be non-negative");
    total += g.n;
  }
  if (total > 10) throw SizeLimit("configuration counts limited to 10 points");
  // average over prod Sigma_{n_i} by cycle type; the action on Conf is free
  std::vector<std::vector<BigInt>> cr(groups.size());
  for (size_t i = 0; i < groups.size(); ++i) {
    cr[i].resize(groups[i].n + 1);
    for (int r = 1; r <= groups[i].n; ++r) cr[i][r] = groups[i].counts(r);
  }
  BigInt sum = 0, order = 1;
  for (const auto& g : groups) order *= factorial(g.n);
  std::vector<int> combined;
  std::function<void(size_t, BigInt)> rec = [&](size_t i, BigInt weight) {
    if (i == groups.size()) {
      sum += weight * twisted_conf_count(CycleType::from_partition(combined), q);
      return;
    }
    if (groups[i].n == 0) return rec(i + 1, weight);
    for (const auto& p : partitions(groups[i].n)) {
      CycleType t = CycleType::from_partition(p);
      BigInt fix = 1;
      for (int l = 1; l <= groups[i].n; ++l)
        if (t.m[l]) fix *= pow_int(cr[i][l], t.m[l]);
      if (fix == 0) continue;
      combined.insert(combined.end(), p.begin(), p.end());
      rec(i + 1, weight * t.class_size() * fix);
      combined.resize(combined.size() - p.size());
    }
  };
  rec(0, 1);
  BigInt out;
  if (!divides_exactly(sum, order, out)) throw NonIntegralCount("free quotient count is not an integer");
  return out;
}

BigInt sigma_Y_count(const CountFn& c, int n, long q) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (n > 10) throw SizeLimit("sigma_Y_count limited to n <= 10");
  return joint_sigma_Y_count({Group{c, n}}, q);
}

BigInt sigma_Y_count(const CountExpr& x, int n, long q) { return sigma_Y_count(counts_of(x, q), n, q); }

nlohmann::json SymmetricIdentityReport::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [lam, v] : rhs_terms) terms.push_back({{"partition", lam}, {"count", v.get_str()}});
  return {{"n", n},
          {"q", q},
          {"lhs", lhs.get_str()},
          {"rhs", rhs.get_str()},
          {"separate_configuration_rhs", separate_rhs.get_str()},
          {"rhs_terms", terms},
          {"identity_holds", identity_holds},
          {"sym_power_of_x", sym_x.get_str()},
          {"scaling_holds", scaling_holds}};
}

SymmetricIdentityReport verify_symmetric_identity(const CountExpr& x, int n, long q) {
  check_q(q);
  if (n < 1) throw InvalidArgument("n must be positive");
  if (n > 8) throw SizeLimit("verify_symmetric_identity limited to n <= 8");
  SymmetricIdentityReport rep;
  rep.n = n;
  rep.q = q;
  CountExpr xy = CountExpr::product({x, CountExpr::affine(1)});
  rep.lhs = sym_power_counts(xy, q, n).back();
  rep.sym_x = sym_power_counts(x, q, n).back();

  // |sigma^k X (F_{q^r})| through the zeta function over F_{q^r}
  auto sym_at = [&](int k) -> CountFn {
    return [&x, q, k](int r) {
      CountFn c = [&x, q, r](int s) { return count_points(x, q, r * s); };
      return sym_power_counts(c, k).back();
    };
  };
  rep.rhs = 0;
  rep.separate_rhs = 0;
  for (const auto& parts : partitions(n)) {
    CycleType t = CycleType::from_partition(parts);
    std::vector<Group> groups;
    BigInt separate = 1;
    for (int l = 1; l <= n; ++l)
      if (t.m[l]) {
        groups.push_back(Group{sym_at(l), t.m[l]});
        separate *= sigma_Y_count(sym_at(l), t.m[l], q);
      }
    BigInt term = joint_sigma_Y_count(groups, q);
    rep.rhs_terms.emplace_back(t.to_string(), term);
    rep.rhs += term;
    rep.separate_rhs += separate;
  }
  rep.identity_holds = rep.lhs == rep.rhs;
  rep.scaling_holds = rep.lhs == pow_int(BigInt(q), n) * rep.sym_x;
  return rep;
}

BigInt stratum_count(const std::vector<int>& lambda, long q) {
  check_q(q);
  CycleType mult = CycleType::from_partition(lambda);
  // one squarefree factor per distinct multiplicity k, of degree m_k, all coprime
  std::vector<Group> groups;
  for (size_t k = 1; k < mult.m.size(); ++k)
    if (mult.m[k]) groups.push_back(Group{[](int) { return BigInt(1); }, mult.m[k]});
  return joint_sigma_Y_count(groups, q);
}

}  // namespace kbg::pointcount
