#include "kbg/reps/swan.hpp"

#include <algorithm>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"

namespace kbg::reps {

namespace {

IntMatrix galois_permutation(const FinGroup& g, int n, long b) {
  const auto& res = g.residues();
  int phi = static_cast<int>(res.size());
  IntMatrix P(phi, phi);
  for (int i = 0; i < phi; ++i) {
    long img = (res[i] * b) % n;
    int j = static_cast<int>(std::find(res.begin(), res.end(), img) - res.begin());
    P(j, i) = 1;
  }
  return P;
}

BigInt pairing(const std::vector<long>& res, const IntVec& v) {
  BigInt s = 0;
  for (size_t i = 0; i < res.size(); ++i) s += v[i] * res[i];
  return s;
}

}  // namespace

SwanModule swan_module(int n) {
  if (n < 2) throw InvalidArgument("swan_module needs n >= 2");
  if (n > 400) throw SizeLimit("swan_module limited to n <= 400");
  SwanModule m;
  m.n = n;
  auto G = std::make_shared<FinGroup>(FinGroup::units_mod(n));
  m.galois = G;
  const auto& res = G->residues();
  int phi = static_cast<int>(res.size());

  m.augmentation = IntMatrix(1, phi);
  IntMatrix ext(1, phi + 1);
  for (int i = 0; i < phi; ++i) m.augmentation(0, i) = ext(0, i) = res[i];
  ext(0, phi) = n;
  // image of Z^phi in Z/n is generated by gcd(residues, n)
  auto snf = smith_normal_form(ext, false);
  m.surjective = snf.D(0, 0) == 1;

  IntMatrix K = kernel_basis(ext);  // (phi+1) x phi
  IntMatrix proj(phi, K.cols());
  for (int i = 0; i < phi; ++i)
    for (int j = 0; j < K.cols(); ++j) proj(i, j) = K(i, j);
  m.basis = hermite_rows(proj.transpose()).transpose();
  m.rank = rank_of(m.basis);
  for (const auto& d : smith_normal_form(m.basis, false).diagonal()) m.index_invariants.push_back(d);

  m.ambient_action.resize(G->order());
  m.action.resize(G->order());
  for (int g = 0; g < G->order(); ++g) {
    m.ambient_action[g] = galois_permutation(*G, n, res[g]);
    m.action[g] = solve_integral_matrix(m.basis, m.ambient_action[g] * m.basis);
  }
  std::vector<long> tr, amb;
  for (const auto& cls : G->classes()) {
    tr.push_back(m.action[cls.front()].trace().get_si());
    amb.push_back(m.ambient_action[cls.front()].trace().get_si());
  }
  m.character = VirtualCharacter::from_integers(G, tr);
  m.ambient_character = VirtualCharacter::from_integers(G, amb);
  return m;
}

std::string describe_vector(const SwanModule& m, const IntVec& v) {
  const auto& res = m.galois->residues();
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    std::string root = m.n == 4 ? (res[i] == 1 ? "[i]" : "[-i]") : "[z^" + std::to_string(res[i]) + "]";
    BigInt c = v[i];
    if (c < 0) {
      out += "-";
      c = -c;
    } else if (!out.empty()) {
      out += "+";
    }
    if (c != 1) out += c.get_str();
    out += root;
  }
  return out.empty() ? "0" : out;
}

BasisCheck check_swan_basis(const SwanModule& m, const std::vector<IntVec>& vectors) {
  BasisCheck r;
  const auto& G = m.galois;
  const auto& res = G->residues();
  int phi = static_cast<int>(res.size());
  r.in_module = true;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != phi) throw InvalidArgument("vector length must be phi(n)");
    BigInt s = pairing(res, v);
    if (mod_pos(s, BigInt(m.n)) != 0) {
      r.in_module = false;
      r.problems.push_back(describe_vector(m, v) + " maps to " + mod_pos(s, BigInt(m.n)).get_str() + " in Z/" +
                           std::to_string(m.n) + ", so it is not in the kernel");
    }
  }
  // coordinates in the module basis (rationally, when outside the lattice)
  if (r.in_module) {
    std::vector<IntVec> coords;
    for (const auto& v : vectors) coords.push_back(*solve_integral(m.basis, v));
    IntMatrix C = IntMatrix::from_columns(coords, phi);
    r.smith_diagonal = smith_normal_form(C, false).diagonal();
    r.is_basis = static_cast<int>(vectors.size()) == phi && (determinant(C) == 1 || determinant(C) == -1);
    if (!r.is_basis) r.problems.push_back("vectors do not span the module over Z");
  } else {
    IntMatrix V = IntMatrix::from_columns(vectors, phi);
    r.smith_diagonal = smith_normal_form(V, false).diagonal();
  }
  r.stable_lines = true;
  for (const auto& v : vectors) {
    std::vector<long> signs;
    bool line = true;
    for (const auto& cls : G->classes()) {
      IntVec w = m.ambient_action[cls.front()] * v;
      IntVec neg = v;
      for (auto& x : neg) x = -x;
      if (w == v)
        signs.push_back(1);
      else if (w == neg)
        signs.push_back(-1);
      else
        line = false;
    }
    if (line) {
      r.line_characters.push_back(VirtualCharacter::from_integers(G, signs));
    } else {
      r.stable_lines = false;
      r.problems.push_back(describe_vector(m, v) + " does not span a Galois-stable line");
    }
  }
  return r;
}

nlohmann::json BasisCheck::to_json() const {
  nlohmann::json chars = nlohmann::json::array();
  for (const auto& c : line_characters) chars.push_back(c.to_string());
  nlohmann::json diag = nlohmann::json::array();
  for (const auto& d : smith_diagonal) diag.push_back(d.get_str());
  return {{"in_module", in_module}, {"is_basis", is_basis},     {"stable_lines", stable_lines},
          {"ok", ok()},             {"smith_diagonal", diag},    {"line_characters", chars},
          {"problems", problems}};
}

nlohmann::json SwanModule::report() const {
  auto cols = [](const IntMatrix& M) {
    nlohmann::json out = nlohmann::json::array();
    for (int j = 0; j < M.cols(); ++j) {
      nlohmann::json c = nlohmann::json::array();
      for (int i = 0; i < M.rows(); ++i) c.push_back(M(i, j).get_str());
      out.push_back(c);
    }
    return out;
  };
  nlohmann::json acts = nlohmann::json::object();
  for (int g = 0; g < galois->order(); ++g) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < action[g].rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < action[g].cols(); ++j) row.push_back(action[g](i, j).get_str());
      rows.push_back(row);
    }
    acts[galois->label(g)] = rows;
  }
  nlohmann::json inv = nlohmann::json::array();
  for (const auto& d : index_invariants) inv.push_back(d.get_str());
  nlohmann::json basis_text = nlohmann::json::array();
  for (int j = 0; j < basis.cols(); ++j) basis_text.push_back(describe_vector(*this, basis.column(j)));
  return {{"n", n},
          {"residues", galois->residues()},
          {"surjective", surjective},
          {"rank", rank},
          {"basis", cols(basis)},
          {"basis_text", basis_text},
          {"index_smith_diagonal", inv},
          {"action", acts},
          {"character", character.to_json()}};
}

}  // namespace kbg::reps
