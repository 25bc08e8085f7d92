#include <algorithm>
#include <map>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"
#include "kbg/toric/series.hpp"

namespace kbg::toric {

using nlohmann::json;
using reps::FinGroup;
using reps::VirtualCharacter;

IntVec FiniteModule::reduce(const IntVec& v) const {
  if (v.size() != orders.size()) throw InvalidArgument("vector length differs from the number of cyclic factors");
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = mod_pos(v[i], BigInt(orders[i]));
  return out;
}

FiniteModule FiniteModule::cyclic_trivial(int n) {
  if (n < 2) throw InvalidArgument("module order must be at least 2");
  FiniteModule a;
  a.orders = {n};
  a.group = std::make_shared<FinGroup>(FinGroup::cyclic(1));
  a.action = {IntMatrix::identity(1)};
  a.name = "Z/" + std::to_string(n) + " trivial";
  return a;
}

FiniteModule FiniteModule::mu(int p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("mu_p needs an odd prime p");
  FiniteModule a;
  a.orders = {p};
  auto G = std::make_shared<FinGroup>(FinGroup::units_mod(p));
  for (int g = 0; g < G->order(); ++g) a.action.push_back(IntMatrix{{G->residues()[g]}});
  a.group = G;
  a.name = "mu_" + std::to_string(p);
  return a;
}

FiniteModule FiniteModule::z4_inversion() {
  FiniteModule a;
  a.orders = {4};
  auto G = std::make_shared<FinGroup>(FinGroup::cyclic(2));
  a.action.resize(2);
  a.action[G->identity()] = IntMatrix::identity(1);
  a.action[1 - G->identity()] = IntMatrix{{-1}};
  a.group = G;
  a.name = "Z/4 inversion";
  return a;
}

std::vector<IntVec> all_nonzero(const FiniteModule& a) {
  std::vector<IntVec> out;
  long total = 1;
  for (long o : a.orders) total *= o;
  if (total > 4096) throw SizeLimit("module too large to list");
  for (long x = 1; x < total; ++x) {
    IntVec v;
    long y = x;
    for (long o : a.orders) {
      v.emplace_back(y % o);
      y /= o;
    }
    out.push_back(v);
  }
  return out;
}

json BAReport::to_json() const {
  return {{"module", module},
          {"variable", "t = -1/s"},
          {"via_tori", via_tori.to_json()},
          {"direct", direct.to_json()},
          {"agree", agree},
          {"class_of_module", class_of_a.to_json()},
          {"degree_one_matches", degree_one_matches},
          {"trivial_action", trivial_action},
          {"is_one", is_one},
          {"quotient_invariants", [&] {
             std::vector<std::string> v;
             for (const auto& x : quotient_invariants) v.push_back(x.get_str());
             return v;
           }()},
          {"quotient_matches", quotient_matches}};
}

namespace {

VirtualCharacter trace_character(const reps::GroupPtr& G, const std::vector<IntMatrix>& mats, bool dual) {
  auto ctx = make_cyclo_context(std::max(G->exponent(), 1));
  std::vector<CycloInt> v;
  for (const auto& cls : G->classes()) {
    int g = cls.front();
    v.emplace_back(ctx, mats[dual ? G->inv(g) : g].trace());
  }
  return VirtualCharacter(G, std::move(v));
}

// inverse of a series with constant term 1, truncated at N
std::vector<VirtualCharacter> invert_series(const std::vector<VirtualCharacter>& a, int N) {
  std::vector<VirtualCharacter> inv{a.at(0)};
  for (int k = 1; k <= N; ++k) {
    VirtualCharacter c = VirtualCharacter::constant(a[0].group(), 0);
    for (int i = 1; i <= k && i < static_cast<int>(a.size()); ++i) c = c - a[i] * inv[k - i];
    inv.push_back(c);
  }
  return inv;
}

}  // namespace

BAReport bclass_abelian_series(const FiniteModule& a, const std::vector<IntVec>& s_in, int order) {
  const auto& G = a.group;
  if (static_cast<int>(a.action.size()) != G->order()) throw InvalidArgument("need one action matrix per group element");
  int r = static_cast<int>(a.orders.size());
  std::vector<IntVec> S;
  for (const auto& v : s_in) {
    IntVec x = a.reduce(v);
    if (std::find(S.begin(), S.end(), x) == S.end()) S.push_back(x);
  }
  if (S.empty()) throw NotGenerating("empty generating set");
  int m = static_cast<int>(S.size());

  // permutation of S by each element
  std::vector<std::vector<int>> perm(G->order(), std::vector<int>(m));
  for (int g = 0; g < G->order(); ++g)
    for (int i = 0; i < m; ++i) {
      IntVec img = a.reduce(a.action[g] * S[i]);
      auto it = std::find(S.begin(), S.end(), img);
      if (it == S.end()) throw NotGenerating("generating set is not stable under " + G->label(g));
      perm[g][i] = static_cast<int>(it - S.begin());
    }

  // Z[S] -> A is onto iff [S | diag(orders)] has trivial cokernel
  IntMatrix E(r, m + r);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < r; ++k) E(k, i) = S[i][k];
  for (int k = 0; k < r; ++k) E(k, m + k) = a.orders[k];
  CokernelInvariants ck = cokernel(E);
  if (!ck.torsion.empty() || ck.free_rank != 0) throw NotGenerating("the set does not generate the module");

  // kernel N' of Z[S] -> A as a full-rank sublattice of Z^m
  IntMatrix K = kernel_basis(E);
  std::vector<IntVec> rows;
  for (int j = 0; j < K.cols(); ++j) {
    IntVec v(m);
    for (int i = 0; i < m; ++i) v[i] = K(i, j);
    rows.push_back(v);
  }
  IntMatrix H = hermite_rows(IntMatrix::from_rows(rows, m));
  if (H.rows() != m) throw std::logic_error("kernel lattice is not of full rank");
  IntMatrix B = H.transpose();

  std::vector<IntMatrix> onN, onK;
  for (int g = 0; g < G->order(); ++g) {
    IntMatrix P(m, m);
    for (int i = 0; i < m; ++i) P(perm[g][i], i) = 1;
    onN.push_back(P);
    onK.push_back(solve_integral_matrix(B, P * B));
  }
  // M, M' are the duals: chi_M(g) = chi_N(g^-1)
  VirtualCharacter chiM = trace_character(G, onN, true);
  VirtualCharacter chiMp = trace_character(G, onK, true);

  int N = std::max(order, m);
  BAReport rep;
  rep.module = a.name;
  rep.class_of_a = chiMp - chiM;
  auto lamMp = chiMp.lambda_series(N);
  auto lamM = chiM.lambda_series(N);
  rep.via_tori.group = G;
  rep.via_tori.var = "t";
  rep.via_tori.truncation = N;
  rep.via_tori.coeffs = reps::multiply_series(lamMp, invert_series(lamM, N), N);
  rep.direct.group = G;
  rep.direct.var = "t";
  rep.direct.truncation = N;
  rep.direct.coeffs = rep.class_of_a.lambda_series(N);
  rep.agree = rep.via_tori == rep.direct;
  rep.degree_one_matches = rep.via_tori.coeffs.at(1) == rep.class_of_a;
  rep.trivial_action = true;
  for (const auto& A : a.action)
    if (A != IntMatrix::identity(r)) rep.trivial_action = false;
  rep.quotient_invariants = cokernel(B).torsion;
  IntMatrix D(r, r);
  for (int k = 0; k < r; ++k) D(k, k) = a.orders[k];
  rep.quotient_matches = cokernel(B).free_rank == 0 && rep.quotient_invariants == cokernel(D).torsion;
  rep.is_one = rep.via_tori.coeffs[0] == VirtualCharacter::constant(G, 1);
  for (int k = 1; k <= N; ++k)
    if (rep.via_tori.coeffs[k] != VirtualCharacter::constant(G, 0)) rep.is_one = false;
  return rep;
}

}  // namespace kbg::toric
