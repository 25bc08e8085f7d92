#include <algorithm>

#include "kbg/errors.hpp"
#include "kbg/toric/series.hpp"

namespace kbg::toric {

using nlohmann::json;
using reps::VirtualCharacter;

int CharSeries::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (coeffs[k] != VirtualCharacter::constant(group, 0)) return k;
  return -1;
}

std::string CharSeries::to_string() const {
  std::string out;
  for (size_t k = 0; k < coeffs.size(); ++k) out += var + "^" + std::to_string(k) + ": " + coeffs[k].to_string() + "\n";
  if (truncation >= 0) out += "+ O(" + var + "^" + std::to_string(truncation + 1) + ")\n";
  return out;
}

json CharSeries::to_json() const {
  json c = json::array();
  for (const auto& x : coeffs) c.push_back(x.to_json());
  json j{{"variable", var}, {"coefficients", c}};
  if (truncation >= 0) j["truncation"] = truncation;
  return j;
}

IntPoly det_one_minus(const IntMatrix& A) {
  int n = A.rows();
  if (n > 20) throw SizeLimit("matrix too large for principal minors");
  std::vector<BigInt> c(n + 1, 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) idx.push_back(i);
    int k = static_cast<int>(idx.size());
    BigInt m = 1;
    if (k) {
      IntMatrix sub(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = A(idx[a], idx[b]);
      m = determinant(sub);
    }
    c[k] += (k % 2 ? -m : m);
  }
  return IntPoly(c);
}

namespace {

VirtualCharacter int_character(const reps::GroupPtr& G, const std::vector<BigInt>& per_class) {
  auto ctx = make_cyclo_context(std::max(G->exponent(), 1));
  std::vector<CycloInt> v;
  for (const auto& x : per_class) v.emplace_back(ctx, x);
  return VirtualCharacter(G, std::move(v));
}

// cycle lengths of the permutation p restricted to the stable set T
std::vector<int> cycles_on(const reps::Perm& p, const Face& T) {
  std::vector<int> out;
  std::vector<char> done(p.size(), 0);
  for (int x : T) {
    if (done[x]) continue;
    int len = 0;
    for (int y = x; !done[y]; y = p[y]) {
      done[y] = 1;
      ++len;
    }
    out.push_back(len);
  }
  return out;
}

int perm_sign_on(const reps::Perm& p, const Face& T) {
  int s = 1;
  for (int len : cycles_on(p, T))
    if (len % 2 == 0) s = -s;
  return s;
}

// D(s) / prod_c (1 - s^{|c|}) with D = prod_{j <= m} (1 - s^j)^{floor(m/j)}
IntPoly cofactor(int m, const std::vector<int>& cycles) {
  std::vector<int> mult(m + 1, 0);
  for (int j = 1; j <= m; ++j) mult[j] = m / j;
  for (int c : cycles) {
    if (c > m || --mult[c] < 0) throw NonPolynomial("cycle structure exceeds the dimension");
  }
  IntPoly out = IntPoly::constant(1);
  for (int j = 1; j <= m; ++j)
    for (int e = 0; e < mult[j]; ++e) out *= IntPoly::constant(1) - IntPoly::monomial(j);
  return out;
}

IntPoly denominator(int m) {
  IntPoly out = IntPoly::constant(1);
  for (int j = 1; j <= m; ++j) out *= (IntPoly::constant(1) - IntPoly::monomial(j)).pow(m / j);
  return out;
}

bool is_stable(const GFan& f, int g, const Face& T) { return f.image(g, T) == T; }

// action of g on the character lattice N = Hom(M, Z) in dual coordinates
IntMatrix dual_action(const GFan& f, int g) { return f.matrix_of(f.group()->inv(g)).transpose(); }

// Chow polynomial of the closed orbit for the stable face T, at g:
// det(1 - s g|N_T) sum_{T' >= T, gT' = T'} s^{|T'-T|} / prod_{cycles on T'-T} (1 - s^|c|)
IntPoly orbit_closure_chow(const GFan& f, int g, const Face& T) {
  int n = f.rank();
  int m = n - static_cast<int>(T.size());
  IntMatrix B = dual_action(f, g);
  IntPoly det = IntPoly::constant(1);
  if (m > 0) {
    IntMatrix K;
    if (T.empty()) {
      K = IntMatrix::identity(n);
    } else {
      std::vector<IntVec> rows;
      for (int x : T) rows.push_back(f.rays()[x]);
      K = kernel_basis(IntMatrix::from_rows(rows, n));
    }
    if (K.cols() != m) throw InvalidFan("rays of a cone are not independent");
    IntMatrix X = solve_integral_matrix(K, B * K);
    det = det_one_minus(X);
  }
  const auto& p = f.group()->perm(g);
  IntPoly sum;
  for (const auto& Tp : f.faces()) {
    if (Tp.size() < T.size() || !std::includes(Tp.begin(), Tp.end(), T.begin(), T.end())) continue;
    if (!is_stable(f, g, Tp)) continue;
    Face rest;
    std::set_difference(Tp.begin(), Tp.end(), T.begin(), T.end(), std::back_inserter(rest));
    sum += cofactor(m, cycles_on(p, rest)).shift(static_cast<int>(rest.size()));
  }
  auto q = (det * sum).divide_exact(denominator(m));
  if (!q) throw NonPolynomial("Hilbert series of an orbit closure is not a polynomial");
  if (q->degree() > m) throw NonPolynomial("Hilbert series has degree above the dimension");
  return *q;
}

std::vector<BigInt> trace_per_class(const GFan& f) {
  std::vector<BigInt> out;
  for (const auto& cls : f.group()->classes()) out.push_back(f.matrix_of(cls.front()).trace());
  return out;
}

CharSeries assemble(const reps::GroupPtr& G, const std::vector<IntPoly>& per_class, int min_len) {
  int len = min_len;
  for (const auto& p : per_class) len = std::max(len, p.degree() + 1);
  CharSeries out;
  out.group = G;
  for (int k = 0; k < len; ++k) {
    std::vector<BigInt> v;
    for (const auto& p : per_class) v.push_back(p.coeff(k));
    out.coeffs.push_back(int_character(G, v));
  }
  return out;
}

void require_valid(const GFan& f) {
  FanReport r = validate_fan(f);
  if (!r.valid) throw InvalidFan("invalid fan: " + r.problems.front());
}

}  // namespace

CharSeries chow_characters(const GFan& f) {
  require_valid(f);
  const auto& G = f.group();
  std::vector<IntPoly> per_class;
  for (const auto& cls : G->classes()) per_class.push_back(orbit_closure_chow(f, cls.front(), Face{}));
  return assemble(G, per_class, f.rank() + 1);
}

VirtualCharacter signature_character(const GFan& f) {
  const auto& G = f.group();
  std::vector<BigInt> v;
  for (const auto& cls : G->classes()) {
    int g = cls.front();
    long s = 0;
    for (const auto& T : f.faces())
      if (is_stable(f, g, T)) s += (T.size() % 2 ? -1 : 1) * perm_sign_on(G->perm(g), T);
    v.emplace_back(s);
  }
  return int_character(G, v);
}

json NsReport::to_json() const {
  json p1 = json::array();
  for (const auto& d : part1)
    p1.push_back({{"k", d.k}, {"pass", d.pass}, {"computed", d.computed.to_json()}, {"expected", d.expected.to_json()}});
  return {{"fan", fan},
          {"rank", n},
          {"ns_series", ns.to_json()},
          {"part1", p1},
          {"part1_pass", part1_pass},
          {"ker_minus_rays", ker_minus_rays.to_json()},
          {"part2_pass", part2_pass},
          {"signature_pass", signature_pass},
          {"telescopes", telescopes},
          {"pass", pass()}};
}

NsReport ns_torus_check(const GFan& f) {
  require_valid(f);
  const auto& G = f.group();
  int n = f.rank();
  NsReport rep;
  rep.fan = f.name();
  rep.n = n;

  // inclusion-exclusion over the stable faces, each closed orbit computed from its own fan
  std::vector<IntPoly> per_class;
  for (const auto& cls : G->classes()) {
    int g = cls.front();
    IntPoly total;
    for (const auto& T : f.faces()) {
      if (!is_stable(f, g, T)) continue;
      int w = (T.size() % 2 ? -1 : 1) * perm_sign_on(G->perm(g), T);
      total += orbit_closure_chow(f, g, T) * BigInt(w);
    }
    per_class.push_back(total);
  }
  rep.ns = assemble(G, per_class, n + 1);

  VirtualCharacter chiM = int_character(G, trace_per_class(f));
  auto lam = chiM.lambda_series(n);
  rep.part1_pass = true;
  for (int k = 0; k <= n; ++k) {
    DegreeCheck d;
    d.k = k;
    d.computed = rep.ns.coeffs[k];
    d.expected = lam[n - k] * ((n - k) % 2 ? -1L : 1L);
    d.pass = d.computed == d.expected;
    rep.part1_pass = rep.part1_pass && d.pass;
    rep.part1.push_back(d);
  }
  rep.telescopes = rep.ns.degree() == n && rep.ns.coeffs[n] == VirtualCharacter::constant(G, 1);

  // ker(Z[S] -> M) with the permutation action restricted
  int r = static_cast<int>(f.rays().size());
  IntMatrix K = kernel_basis(IntMatrix::from_columns(f.rays(), n));
  std::vector<BigInt> kv, sv;
  for (const auto& cls : G->classes()) {
    const auto& p = G->perm(cls.front());
    IntMatrix P(r, r);
    long fixed = 0;
    for (int j = 0; j < r; ++j) {
      P(p[j], j) = 1;
      fixed += p[j] == j;
    }
    BigInt tr = 0;
    if (K.cols() > 0) tr = solve_integral_matrix(K, P * K).trace();
    kv.push_back(tr);
    sv.emplace_back(fixed);
  }
  rep.ker_minus_rays = int_character(G, kv) - int_character(G, sv);
  rep.part2_pass = n >= 1 && rep.ns.coeffs[n - 1] == rep.ker_minus_rays;
  rep.signature_pass = signature_character(f) == lam[n] * (n % 2 ? -1L : 1L);
  return rep;
}

}  // namespace kbg::toric
