#include "kbg/cli/driver.hpp"

#include <omp.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "kbg/arith/intmatrix.hpp"
#include "kbg/bogomolov/bogomolov.hpp"
#include "kbg/cli/acceptance.hpp"
#include "kbg/cli/config.hpp"
#include "kbg/cyclotomic/cyclotomic.hpp"
#include "kbg/errors.hpp"
#include "kbg/flags/flags.hpp"
#include "kbg/kring/serialize.hpp"
#include "kbg/kring/witt.hpp"
#include "kbg/pointcount/pointcount.hpp"
#include "kbg/reps/character.hpp"
#include "kbg/reps/group.hpp"
#include "kbg/reps/swan.hpp"
#include "kbg/toric/fan.hpp"
#include "kbg/toric/series.hpp"

namespace kbg::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Order from which b0 insists on --slow-64.
constexpr int kSlowGroupOrder = 64;

struct Args {
  std::string config_file;
  std::vector<std::string> sets;
  bool json_flag = false;
  std::string format;
  long long seed = -1;
  int threads = -1;

  std::string expr, f, fan, group, module, gens = "all", method = "cocycle", matrix, basis, matrices, character = "permutation";
  std::string certificate;
  std::vector<std::string> units;
  int n = 0, order = 8, i = 1, N = 5, random = 0;
  long q = 0, m = 0;
  bool slow_64 = false, serial = false, timings = false;
};

json read_json_arg(const std::string& s) {
  if (fs::is_regular_file(s)) {
    std::ifstream in(s);
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError(s + ": " + e.what());
    }
  }
  try {
    return json::parse(s);
  } catch (const json::exception& e) {
    throw ParseError("'" + s + "' is neither a readable file nor JSON: " + e.what());
  }
}

IntMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) throw ParseError("matrix must be a non-empty array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) {
    IntVec row;
    for (const auto& x : r) row.push_back(kring::bigint_from_json(x));
    rows.push_back(row);
  }
  size_t c = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != c) throw ParseError("matrix rows have different lengths");
  return IntMatrix::from_rows(rows, static_cast<int>(c));
}

json bigints(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(kring::bigint_to_json(x));
  return a;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? sep : "") + v[k];
  return s;
}

template <class T>
std::string list_str(const std::vector<T>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
  os << "]";
  return os.str();
}

std::string group_str(const std::vector<long>& inv) {
  if (inv.empty()) return "0";
  std::vector<std::string> parts;
  for (long x : inv) parts.push_back("Z/" + std::to_string(x));
  return join(parts, " + ");
}

reps::GroupPtr load_group(const std::string& source, const RunConfig& cfg) {
  using reps::FinGroup;
  std::shared_ptr<FinGroup> g;
  std::smatch mt;
  auto num = [&](int k) { return std::stoi(mt[k].str()); };
  if (fs::is_regular_file(source)) {
    json j = read_json_arg(source);
    g = std::make_shared<FinGroup>(FinGroup::from_json(j));
    g->set_name(j.contains("name") ? j["name"].get<std::string>() : fs::path(source).stem().string());
  } else if (std::regex_match(source, mt, std::regex(R"(C(\d+)(xC\d+)+)"))) {
    std::vector<int> orders;
    std::regex part(R"(\d+)");
    for (auto it = std::sregex_iterator(source.begin(), source.end(), part); it != std::sregex_iterator(); ++it)
      orders.push_back(std::stoi(it->str()));
    g = std::make_shared<FinGroup>(FinGroup::abelian(orders));
  } else if (std::regex_match(source, mt, std::regex(R"(C(\d+))"))) {
    g = std::make_shared<FinGroup>(FinGroup::cyclic(num(1)));
  } else if (std::regex_match(source, mt, std::regex(R"(S(\d+))"))) {
    g = std::make_shared<FinGroup>(FinGroup::symmetric(num(1)));
  } else if (std::regex_match(source, mt, std::regex(R"(A(\d+))"))) {
    g = std::make_shared<FinGroup>(FinGroup::alternating(num(1)));
  } else if (std::regex_match(source, mt, std::regex(R"(D(\d+))"))) {
    if (num(1) % 2 || num(1) < 4) throw InvalidArgument("dihedral group D<order> needs an even order >= 4");
    g = std::make_shared<FinGroup>(FinGroup::dihedral(num(1) / 2));
  } else if (std::regex_match(source, mt, std::regex(R"(Q(\d+))"))) {
    g = std::make_shared<FinGroup>(FinGroup::quaternion(num(1)));
  } else {
    throw InvalidArgument("unknown group '" + source + "': give a JSON file or a name like C6, C2xC4, S4, A5, D8, Q16");
  }
  if (!fs::is_regular_file(source)) g->set_name(source);
  if (g->order() > cfg.max_group_order)
    throw SizeLimit("group of order " + std::to_string(g->order()) + " exceeds max_group_order = " + std::to_string(cfg.max_group_order));
  return g;
}

toric::GFan load_fan(const std::string& source) {
  if (fs::is_regular_file(source)) return toric::GFan::from_json(read_json_arg(source));
  return toric::library_fan(source);
}

toric::FiniteModule load_module(const std::string& source) {
  std::smatch mt;
  if (std::regex_match(source, mt, std::regex(R"((?:Z/|cyclic:)(\d+))"))) return toric::FiniteModule::cyclic_trivial(std::stoi(mt[1].str()));
  if (std::regex_match(source, mt, std::regex(R"(mu[:_]?(\d+))"))) return toric::FiniteModule::mu(std::stoi(mt[1].str()));
  if (source == "z4-inversion") return toric::FiniteModule::z4_inversion();
  throw InvalidArgument("unknown module '" + source + "': use Z/n, mu:p or z4-inversion");
}

std::vector<IntVec> parse_gens(const std::string& text, const toric::FiniteModule& a) {
  if (text == "all") return toric::all_nonzero(a);
  std::vector<IntVec> out;
  std::stringstream vs(text);
  std::string v;
  while (std::getline(vs, v, ';')) {
    IntVec x;
    std::stringstream cs(v);
    std::string c;
    while (std::getline(cs, c, ',')) {
      try {
        x.push_back(BigInt(c));
      } catch (const std::invalid_argument&) {
        throw ParseError("bad generator coordinate '" + c + "'");
      }
    }
    out.push_back(x);
  }
  return out;
}

void check_order(int order, const RunConfig& cfg) {
  if (order < 1) throw InvalidArgument("order must be positive");
  if (order > cfg.max_series_order)
    throw SizeLimit("order " + std::to_string(order) + " exceeds max_series_order = " + std::to_string(cfg.max_series_order));
}

std::string random_expr(std::mt19937_64& rng, int depth) {
  switch (rng() % (depth > 0 ? 7 : 5)) {
    case 0: return "pt";
    case 1: return "A" + std::to_string(1 + rng() % 2);
    case 2: return "Gm";
    case 3: return "etale[(12)]";
    case 4: return rng() % 2 ? "etale[(123)]" : "etale[(12)(3)]";
    default: {
      std::string op = rng() % 2 ? "+" : "*";
      std::string left = random_expr(rng, depth - 1);
      std::string right = random_expr(rng, depth - 1);
      return left + op + right;
    }
  }
}

class Driver {
 public:
  Driver(const RunConfig& cfg, const Args& a, std::ostream& out) : cfg_(cfg), a_(a), out_(out) {}

  bool json() const { return cfg_.format == Format::Json; }
  void emit(const nlohmann::json& j, const std::string& text) {
    if (json()) out_ << j.dump(2) << "\n";
    else out_ << text;
  }

  int kring_show() {
    auto x = kring::LClass::parse(a_.expr);
    nlohmann::json j{{"input", a_.expr}, {"canonical", x.to_string()}, {"class", kring::to_json(x)}, {"unit", x.is_unit()}};
    std::string text = x.to_string() + "\n";
    if (a_.q) {
      std::string v = x.evaluate(BigInt(a_.q)).get_str();
      j["value_at_q"] = {{"q", a_.q}, {"value", v}};
      text += "at L = " + std::to_string(a_.q) + ": " + v + "\n";
    }
    emit(j, text);
    return 0;
  }

  int kring_series(bool sigma) {
    check_order(a_.order, cfg_);
    auto x = kring::LClass::parse(a_.expr);
    if (!x.is_polynomial()) throw InvalidArgument("lambda and sigma series are taken of polynomials in L");
    auto s = sigma ? kring::sigma_series(x.numerator(), a_.order) : kring::lambda_series(x.numerator(), a_.order);
    nlohmann::json coeffs = nlohmann::json::array();
    std::string text;
    for (int k = 0; k <= s.order(); ++k) {
      coeffs.push_back(s.coeff(k).to_string());
      text += (sigma ? "sigma^" : "lambda^") + std::to_string(k) + " = " + s.coeff(k).to_string() + "\n";
    }
    emit({{"input", a_.expr}, {"series", sigma ? "sigma" : "lambda"}, {"order", a_.order}, {"coefficients", coeffs}}, text);
    return 0;
  }

  int kring_witt_inverse() {
    check_order(a_.order, cfg_);
    auto f = kring::LClass::parse(a_.f);
    if (!f.is_polynomial()) throw InvalidArgument("f must be a polynomial in L");
    auto y = kring::witt_localized_inverse(f.numerator(), a_.order);
    kring::WittSeries one_plus_t(a_.order);
    if (a_.order >= 1) one_plus_t.coeff(1) = kring::LClass(1);
    bool ok = kring::witt_product_with_poly(f.numerator(), y) == one_plus_t;
    nlohmann::json coeffs = nlohmann::json::array();
    std::string text;
    for (int k = 0; k <= y.order(); ++k) {
      coeffs.push_back(y.coeff(k).to_string());
      text += "y_" + std::to_string(k) + " = " + y.coeff(k).to_string() + "\n";
    }
    text += std::string("product with lambda_t(f) is 1 + t: ") + (ok ? "PASS" : "FAIL") + "\n";
    emit({{"f", f.to_string()}, {"order", a_.order}, {"inverse", coeffs}, {"check", ok}}, text);
    return ok ? 0 : 1;
  }

  int flags_enumerate() {
    auto classes = flags::enumerate_flag_classes(a_.n, cfg_.flags_max_n);
    nlohmann::json arr = nlohmann::json::array();
    std::string text = std::to_string(classes.size()) + " flag classes for n = " + std::to_string(a_.n) + "\n";
    for (const auto& c : classes) {
      arr.push_back({{"flag", c.rep.to_string()},
                     {"n_f", c.n_f},
                     {"d_f", c.d_f},
                     {"sign", c.sign()},
                     {"stabiliser", c.stabiliser.to_string()},
                     {"stabiliser_order", kring::bigint_to_json(c.stab_order)},
                     {"orbit_size", kring::bigint_to_json(c.orbit_size)}});
      text += "  " + c.rep.to_string() + "  n_f=" + std::to_string(c.n_f) + " d_f=" + std::to_string(c.d_f) + " stab=" +
              c.stabiliser.to_string() + " |orbit|=" + c.orbit_size.get_str() + "\n";
    }
    emit({{"n", a_.n}, {"classes", arr}}, text);
    return 0;
  }

  int flags_recursion() {
    auto r = flags::recursion_identity(a_.n, cfg_.flags_max_n);
    emit({{"n", a_.n},
          {"lhs", r.lhs.to_string()},
          {"rhs", r.rhs.to_string()},
          {"flag_sum", r.flag_sum.to_string()},
          {"classes", r.terms.size()},
          {"holds", r.holds}},
         "L^" + std::to_string(a_.n) + " = " + r.lhs.to_string() + "\nrhs = " + r.rhs.to_string() + "\n" +
             (r.holds ? "PASS" : "FAIL") + "\n");
    return r.holds ? 0 : 1;
  }

  int flags_bsigma() {
    auto cert = flags::bsigma_certificate(a_.n, cfg_.flags_max_n);
    auto v = flags::validate_certificate(cert);
    std::string path = a_.certificate.empty() ? "bsigma-" + std::to_string(a_.n) + ".json" : a_.certificate;
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write certificate to " + path);
    f << cert.dump(2) << "\n";
    bool ok = v.valid && v.value == kring::LClass(1);
    emit({{"n", a_.n}, {"value", v.value.to_string()}, {"valid", v.valid}, {"certificate", path}, {"problems", v.problems}},
         v.value.to_string() + "\ncertificate: " + path + (v.valid ? "" : " (INVALID: " + join(v.problems, "; ") + ")") + "\n");
    return ok ? 0 : 1;
  }

  int flags_validate() {
    auto v = flags::validate_certificate(read_json_arg(a_.certificate));
    emit({{"valid", v.valid}, {"value", v.value.to_string()}, {"problems", v.problems}},
         std::string(v.valid ? "VALID" : "INVALID") + " value " + v.value.to_string() + (v.problems.empty() ? "" : ": " + join(v.problems, "; ")) +
             "\n");
    return v.valid ? 0 : 1;
  }

  int count_sym() {
    check_order(a_.N, cfg_);
    auto x = pointcount::CountExpr::parse(a_.expr);
    auto c = pointcount::sym_power_counts(x, a_.q, a_.N);
    std::string text;
    for (int k = 1; k <= a_.N; ++k) text += "|sigma^" + std::to_string(k) + " X(F_" + std::to_string(a_.q) + ")| = " + c[k - 1].get_str() + "\n";
    emit({{"expr", x.to_string()}, {"q", a_.q}, {"counts", bigints(c)}}, text);
    return 0;
  }

  int count_verify() {
    if (a_.random > 0) return count_verify_random();
    auto x = pointcount::CountExpr::parse(a_.expr);
    auto r = pointcount::verify_symmetric_identity(x, a_.n, a_.q);
    bool ok = r.identity_holds && r.scaling_holds;
    emit(r.to_json(), "lhs = " + r.lhs.get_str() + "\nrhs = " + r.rhs.get_str() + "\nq^n |sigma^n X| = " +
                          BigInt(pow_int(BigInt(a_.q), a_.n) * r.sym_x).get_str() + "\n" + (ok ? "PASS" : "FAIL") + "\n");
    return ok ? 0 : 1;
  }

  int count_verify_random() {
    std::mt19937_64 rng(cfg_.seed);
    const long qs[] = {2, 3, 4, 5, 7};
    nlohmann::json cases = nlohmann::json::array();
    int failures = 0;
    std::string text;
    for (int k = 0; k < a_.random; ++k) {
      std::string e = random_expr(rng, 2);
      int n = 1 + static_cast<int>(rng() % 4);
      long q = qs[rng() % 5];
      auto r = pointcount::verify_symmetric_identity(pointcount::CountExpr::parse(e), n, q);
      bool ok = r.identity_holds && r.scaling_holds;
      failures += !ok;
      cases.push_back({{"expr", e}, {"n", n}, {"q", q}, {"pass", ok}});
      text += std::string(ok ? "PASS " : "FAIL ") + e + " n=" + std::to_string(n) + " q=" + std::to_string(q) + "\n";
    }
    text += "seed " + std::to_string(cfg_.seed) + ": " + std::to_string(a_.random - failures) + "/" + std::to_string(a_.random) + " pass\n";
    emit({{"seed", cfg_.seed}, {"cases", cases}, {"failures", failures}}, text);
    return failures ? 1 : 0;
  }

  int reps_snf() {
    auto A = matrix_from_json(read_json_arg(a_.matrix));
    auto s = smith_normal_form(A, false);
    auto c = cokernel(A);
    emit({{"diagonal", bigints(s.diagonal())}, {"rank", s.rank()}, {"cokernel", {{"torsion", bigints(c.torsion)}, {"free_rank", c.free_rank}}}},
         "diagonal " + list_str(s.diagonal()) + "\nrank " + std::to_string(s.rank()) + "\ncokernel torsion " + list_str(c.torsion) +
             ", free rank " + std::to_string(c.free_rank) + "\n");
    return 0;
  }

  int reps_swan() {
    auto m = reps::swan_module(a_.n);
    nlohmann::json basis = nlohmann::json::array();
    std::string text = "I_" + std::to_string(a_.n) + ": rank " + std::to_string(m.rank) + ", index invariants " + list_str(m.index_invariants) +
                       "\ncharacter " + m.character.to_string() + "\nbasis:\n";
    for (int j = 0; j < m.basis.cols(); ++j) {
      auto v = m.basis.column(j);
      basis.push_back({{"vector", bigints(v)}, {"text", reps::describe_vector(m, v)}});
      text += "  " + reps::describe_vector(m, v) + "\n";
    }
    nlohmann::json j{{"n", a_.n}, {"rank", m.rank}, {"index_invariants", bigints(m.index_invariants)}, {"basis", basis},
                     {"character", m.character.to_json()}};
    int status = 0;
    if (!a_.basis.empty()) {
      std::vector<IntVec> vs;
      for (const auto& row : read_json_arg(a_.basis)) {
        IntVec v;
        for (const auto& x : row) v.push_back(kring::bigint_from_json(x));
        vs.push_back(v);
      }
      auto chk = reps::check_swan_basis(m, vs);
      j["candidate"] = chk.to_json();
      text += std::string("candidate basis: ") + (chk.ok() ? "PASS" : "FAIL") + (chk.problems.empty() ? "" : " (" + join(chk.problems, "; ") + ")") + "\n";
      status = chk.ok() ? 0 : 1;
    }
    emit(j, text);
    return status;
  }

  int reps_lambda() {
    auto g = load_group(a_.group, cfg_);
    reps::VirtualCharacter chi = reps::VirtualCharacter::permutation(g);
    std::string source = a_.character;
    if (!a_.matrices.empty()) {
      std::vector<IntMatrix> ms;
      for (const auto& m : read_json_arg(a_.matrices)) ms.push_back(matrix_from_json(m));
      chi = reps::character_of_lattice(g, ms);
      source = "lattice";
    } else if (a_.character == "regular") {
      chi = reps::VirtualCharacter::regular(g);
    } else if (a_.character != "permutation") {
      throw InvalidArgument("character must be permutation or regular");
    }
    auto l = chi.lambda(a_.i);
    emit({{"group", g->name()}, {"source", source}, {"i", a_.i}, {"character", chi.to_json()}, {"lambda", l.to_json()}},
         "chi = " + chi.to_string() + "\nlambda^" + std::to_string(a_.i) + " chi = " + l.to_string() + "\n");
    return 0;
  }

  int toric_list() {
    auto names = toric::torus_suite();
    emit(names, join(names, "\n") + "\n");
    return 0;
  }

  int toric_validate() {
    auto r = toric::validate_fan(load_fan(a_.fan));
    emit(r.to_json(), std::string(r.valid ? "VALID" : "INVALID") + (r.problems.empty() ? "" : ": " + join(r.problems, "; ")) + "\n");
    return r.valid ? 0 : 1;
  }

  int toric_chow() {
    auto s = toric::chow_characters(load_fan(a_.fan));
    emit(s.to_json(), s.to_string() + "\n");
    return 0;
  }

  int toric_ns() {
    auto r = toric::ns_torus_check(load_fan(a_.fan));
    emit(r.to_json(), "NS_s = " + r.ns.to_string() + "\npart 1: " + (r.part1_pass ? "PASS" : "FAIL") + "\npart 2: " + (r.part2_pass ? "PASS" : "FAIL") +
                          "\nsignature: " + (r.signature_pass ? "PASS" : "FAIL") + "\n" + (r.pass() ? "PASS" : "FAIL") + "\n");
    return r.pass() ? 0 : 1;
  }

  int toric_babelian() {
    check_order(a_.order, cfg_);
    auto mod = load_module(a_.module);
    auto r = toric::bclass_abelian_series(mod, parse_gens(a_.gens, mod), a_.order);
    bool ok = r.agree && r.quotient_matches && r.degree_one_matches;
    emit(r.to_json(), "via tori: " + r.via_tori.to_string() + "\ndirect:   " + r.direct.to_string() + "\nagree: " + (r.agree ? "yes" : "no") +
                          ", is one: " + (r.is_one ? "yes" : "no") + "\n" + (ok ? "PASS" : "FAIL") + "\n");
    return ok ? 0 : 1;
  }

  int b0() {
    auto g = load_group(a_.group, cfg_);
    if (g->order() >= kSlowGroupOrder && !a_.slow_64)
      throw SizeLimit("groups of order >= " + std::to_string(kSlowGroupOrder) + " need --slow-64");
    if (a_.method != "cocycle" && a_.method != "hopf" && a_.method != "both") throw InvalidArgument("method must be cocycle, hopf or both");
    nlohmann::json j;
    std::string text;
    bool ok = true;
    std::optional<bogomolov::B0Result> c;
    if (a_.method != "hopf") {
      c = bogomolov::b0(g, !a_.serial);
      j = c->to_json();
      text = "H2(G, Q/Z) = " + group_str(c->h2) + "\nB0(G) = " + group_str(c->b0) + "\n";
    }
    if (a_.method != "cocycle") {
      auto h = bogomolov::b0_hopf(*g);
      if (c) {
        ok = h.h2 == c->h2 && h.b0 == c->b0;
        j["hopf"] = {{"h2", h.h2}, {"b0", h.b0}};
        j["methods_agree"] = ok;
        text += std::string("Hopf formula: ") + (ok ? "agrees" : "DISAGREES: B0 = " + group_str(h.b0)) + "\n";
      } else {
        j = {{"group", g->name()}, {"order", g->order()}, {"h2", h.h2}, {"b0", h.b0}};
        text = "H2(G, Q/Z) = " + group_str(h.h2) + "\nB0(G) = " + group_str(h.b0) + "\n";
      }
    }
    emit(j, text);
    return ok ? 0 : 1;
  }

  int cyclo_hminus() {
    auto r = cyclo::h_minus_report(a_.m);
    emit(r.to_json(), "h-(Q(zeta_" + std::to_string(a_.m) + ")) = " + r.h_minus.get_str() + "\n");
    return 0;
  }

  int cyclo_units() {
    std::vector<cyclo::GroupRingElt> extras;
    for (const auto& u : a_.units) extras.push_back(cyclo::GroupRingElt::parse(a_.n, u));
    auto r = cyclo::unit_image_check(a_.n, extras);
    std::vector<std::string> inv;
    for (size_t k = 0; k < r.extras.size(); ++k) inv.push_back("(" + r.extras[k] + ")^-1 = " + r.inverses[k]);
    emit(r.to_json(), "|(Z/2[C_" + std::to_string(a_.n) + "])^*| = " + std::to_string(r.units_mod2) + ", image " + std::to_string(r.image) +
                          ", cokernel " + group_str(r.cokernel) + "\n" + (inv.empty() ? "" : join(inv, "\n") + "\n") +
                          (r.surjective() ? "surjective" : "not surjective") + "\n");
    return 0;
  }

  int verify_all() {
    acceptance::Options opt;
    opt.slow_64 = a_.slow_64;
    auto results = acceptance::run_all(opt);
    bool all = true;
    nlohmann::json arr = nlohmann::json::array();
    std::string text;
    for (const auto& r : results) {
      all = all && r.pass;
      nlohmann::json e{{"id", r.id}, {"title", r.title}, {"status", r.pass ? "PASS" : "FAIL"}, {"detail", r.detail}};
      if (a_.timings) e["seconds"] = r.seconds;
      arr.push_back(e);
      text += r.line() + "\n";
    }
    int passed = 0;
    for (const auto& r : results) passed += r.pass;
    text += std::to_string(passed) + "/" + std::to_string(results.size()) + " criteria pass\n";
    emit({{"criteria", arr}, {"passed", passed}, {"total", results.size()}, {"all_pass", all}, {"slow_64", a_.slow_64}}, text);
    return all ? 0 : 1;
  }

  int config_show() {
    auto j = cfg_.to_json();
    std::string text;
    for (auto it = j.begin(); it != j.end(); ++it) text += it.key() + " = " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
    emit(j, text);
    return 0;
  }

 private:
  const RunConfig& cfg_;
  const Args& a_;
  std::ostream& out_;
};

void diagnose(std::ostream& err, const std::string& kind, const std::string& message) {
  err << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  Args a;
  CLI::App app{"Exact computations with classes of classifying stacks of finite groups", "kbg"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--config", a.config_file, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", a.sets, "override a configuration key (key=value)");
  app.add_flag("--json", a.json_flag, "machine-readable JSON output");
  app.add_option("--format", a.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", a.seed, "seed for sampled checks")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", a.threads, "OpenMP threads (0: default)")->check(CLI::NonNegativeNumber);
  app.footer("Limits come from defaults, then --config, then KBG_<KEY> environment variables, then --set. Keys: " + join(config_keys(), ", "));

  std::function<int(Driver&)> action;
  auto on = [&](CLI::App* sub, std::function<int(Driver&)> fn) { sub->callback([&action, fn] { action = fn; }); };

  auto* kring = app.add_subcommand("kring", "classes in the localised Grothendieck ring")->require_subcommand(1);
  auto* ks = kring->add_subcommand("show", "canonical form of an expression in L");
  ks->add_option("--expr", a.expr, "e.g. \"(L^3-1)/(L-1)\"")->required();
  ks->add_option("--q", a.q, "also evaluate at L = q");
  on(ks, [](Driver& d) { return d.kring_show(); });
  auto* kl = kring->add_subcommand("lambda", "lambda_t series of a polynomial class");
  kl->add_option("--expr", a.expr)->required();
  kl->add_option("--order", a.order, "truncation order");
  on(kl, [](Driver& d) { return d.kring_series(false); });
  auto* ksg = kring->add_subcommand("sigma", "sigma_t series of a polynomial class");
  ksg->add_option("--expr", a.expr)->required();
  ksg->add_option("--order", a.order, "truncation order");
  on(ksg, [](Driver& d) { return d.kring_series(true); });
  auto* kw = kring->add_subcommand("witt-inverse", "y with lambda_t(f) * y = 1 + t");
  kw->add_option("--f", a.f, "polynomial in L that is a unit after localisation")->required();
  kw->add_option("--order", a.order, "truncation order");
  on(kw, [](Driver& d) { return d.kring_witt_inverse(); });

  auto* flags = app.add_subcommand("flags", "stabiliser flags of symmetric groups")->require_subcommand(1);
  auto* fe = flags->add_subcommand("enumerate", "conjugacy classes of strict flags");
  fe->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  on(fe, [](Driver& d) { return d.flags_enumerate(); });
  auto* fr = flags->add_subcommand("recursion", "check the flag recursion for L^n");
  fr->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  on(fr, [](Driver& d) { return d.flags_recursion(); });
  auto* fb = flags->add_subcommand("bsigma", "derive {B Sigma_n} = 1 and write the certificate");
  fb->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  fb->add_option("--certificate", a.certificate, "output path (default bsigma-<n>.json)");
  on(fb, [](Driver& d) { return d.flags_bsigma(); });
  auto* fv = flags->add_subcommand("validate", "validate a {B Sigma_n} certificate");
  fv->add_option("--certificate", a.certificate)->required()->check(CLI::ExistingFile);
  on(fv, [](Driver& d) { return d.flags_validate(); });

  auto* count = app.add_subcommand("count", "point counts over finite fields")->require_subcommand(1);
  auto* cs = count->add_subcommand("sym", "|sigma^k X(F_q)| for k = 1..N");
  cs->add_option("--expr", a.expr, "pt, A<m>, Gm, etale[perm], +, *")->required();
  cs->add_option("--q", a.q)->required();
  cs->add_option("--N", a.N);
  on(cs, [](Driver& d) { return d.count_sym(); });
  auto* cv = count->add_subcommand("verify-sympow", "partition decomposition of sigma^n(A^1 x X)");
  auto* cv_expr = cv->add_option("--expr", a.expr);
  auto* cv_n = cv->add_option("--n", a.n)->check(CLI::PositiveNumber);
  auto* cv_q = cv->add_option("--q", a.q);
  auto* cv_r = cv->add_option("--random", a.random, "check this many seeded random cases instead")->check(CLI::PositiveNumber);
  cv_expr->needs(cv_n)->needs(cv_q)->excludes(cv_r);
  cv->callback([&action, &a, cv_expr, cv_r] {
    if (cv_expr->count() == 0 && cv_r->count() == 0) throw CLI::RequiredError("--expr or --random");
    (void)a;
    action = [](Driver& d) { return d.count_verify(); };
  });

  auto* reps = app.add_subcommand("reps", "integral representations and characters")->require_subcommand(1);
  auto* rs = reps->add_subcommand("snf", "Smith normal form of an integer matrix");
  rs->add_option("--matrix", a.matrix, "JSON rows or a file")->required();
  on(rs, [](Driver& d) { return d.reps_snf(); });
  auto* rw = reps->add_subcommand("swan", "the augmentation kernel I_n and basis checks");
  rw->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  rw->add_option("--basis", a.basis, "candidate basis as JSON rows");
  on(rw, [](Driver& d) { return d.reps_swan(); });
  auto* rl = reps->add_subcommand("lambda", "exterior powers of a character");
  rl->add_option("--group", a.group, "JSON file or name")->required();
  rl->add_option("--i", a.i)->check(CLI::NonNegativeNumber);
  rl->add_option("--character", a.character, "permutation or regular");
  rl->add_option("--matrices", a.matrices, "integer matrices of the generators (JSON or file)");
  on(rl, [](Driver& d) { return d.reps_lambda(); });

  auto* toric = app.add_subcommand("toric", "equivariant toric computations")->require_subcommand(1);
  auto* tl = toric->add_subcommand("list", "names of the library fans in the check suite");
  on(tl, [](Driver& d) { return d.toric_list(); });
  auto* tv = toric->add_subcommand("validate", "check a fan with a group action");
  tv->add_option("--fan", a.fan, "JSON file or library name")->required();
  on(tv, [](Driver& d) { return d.toric_validate(); });
  auto* tc = toric->add_subcommand("chow", "Chow ring Hilbert series as characters");
  tc->add_option("--fan", a.fan)->required();
  on(tc, [](Driver& d) { return d.toric_chow(); });
  auto* tn = toric->add_subcommand("ns-check", "NS_s of the open torus against the exterior powers");
  tn->add_option("--fan", a.fan)->required();
  on(tn, [](Driver& d) { return d.toric_ns(); });
  auto* tb = toric->add_subcommand("babelian", "series of B A for a finite module");
  tb->add_option("--module", a.module, "Z/n, mu:p or z4-inversion")->required();
  tb->add_option("--gens", a.gens, "\"all\" or vectors like \"1;3\" or \"1,0;0,1\"");
  tb->add_option("--order", a.order, "truncation order");
  on(tb, [](Driver& d) { return d.toric_babelian(); });

  auto* b0 = app.add_subcommand("b0", "Schur and Bogomolov multipliers");
  b0->add_option("--group", a.group, "JSON file ({\"perm_gens\"} or {\"table\"}) or name")->required();
  b0->add_option("--method", a.method, "cocycle, hopf or both");
  b0->add_flag("--slow-64", a.slow_64, "allow groups of order >= 64");
  b0->add_flag("--serial", a.serial, "serial commuting-pair loop");
  on(b0, [](Driver& d) { return d.b0(); });

  auto* cyc = app.add_subcommand("cyclo", "cyclotomic class numbers and group ring units")->require_subcommand(1);
  auto* ch = cyc->add_subcommand("hminus", "relative class number of Q(zeta_m)");
  ch->add_option("--m", a.m)->required();
  on(ch, [](Driver& d) { return d.cyclo_hminus(); });
  auto* cu = cyc->add_subcommand("units", "image of units in (Z/2[C_n])^*");
  cu->add_option("--n", a.n)->required();
  cu->add_option("--unit", a.units, "extra unit of Z[C_n], e.g. \"x^3+x^2-1\"");
  on(cu, [](Driver& d) { return d.cyclo_units(); });

  auto* va = app.add_subcommand("verify-all", "run every acceptance criterion");
  va->add_flag("--slow-64", a.slow_64, "include the order-64 multiplier computation");
  va->add_flag("--timings", a.timings, "report timings in JSON output");
  on(va, [](Driver& d) { return d.verify_all(); });

  auto* cfg_cmd = app.add_subcommand("config", "print the effective configuration");
  on(cfg_cmd, [](Driver& d) { return d.config_show(); });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    diagnose(err, "UsageError", e.what());
    err << "run with --help for usage\n";
    return 2;
  }

  RunConfig cfg;
  try {
    if (!a.config_file.empty()) cfg.load_file(a.config_file);
    cfg.load_env(env ? env : EnvLookup([](const char* k) { return std::getenv(k); }));
    for (const auto& s : a.sets) {
      auto eq = s.find('=');
      if (eq == std::string::npos) throw ParseError("--set expects key=value, got '" + s + "'");
      cfg.set(s.substr(0, eq), s.substr(eq + 1));
    }
    if (!a.format.empty()) cfg.set("format", a.format);
    if (a.json_flag) cfg.format = Format::Json;
    if (a.seed >= 0) cfg.seed = static_cast<unsigned long long>(a.seed);
    if (a.threads >= 0) cfg.threads = a.threads;
  } catch (const Error& e) {
    diagnose(err, e.kind(), e.what());
    return 2;
  }
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);

  Driver d(cfg, a, out);
  try {
    return action(d);
  } catch (const Error& e) {
    diagnose(err, e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    diagnose(err, "InternalError", e.what());
    return 1;
  }
}

}  // namespace kbg::cli
