#include "kbg/toric/fan.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "kbg/errors.hpp"

namespace kbg::toric {

using nlohmann::json;
using reps::FinGroup;
using reps::Perm;

namespace {

IntMatrix ray_matrix(int n, const std::vector<IntVec>& rays) { return IntMatrix::from_columns(rays, n); }

// matrix A with A * ray_j = ray_{p(j)}, if one exists
std::optional<IntMatrix> lattice_map(int n, const std::vector<IntVec>& rays, const Perm& p) {
  IntMatrix R = ray_matrix(n, rays);
  std::vector<IntVec> img;
  for (int x : p) img.push_back(rays[x]);
  IntMatrix Rp = ray_matrix(n, img);
  IntMatrix At;
  try {
    At = solve_integral_matrix(R.transpose(), Rp.transpose());
  } catch (const NonIntegral&) {
    return std::nullopt;
  }
  IntMatrix A = At.transpose();
  if (A * R != Rp) return std::nullopt;
  BigInt d = determinant(A);
  if (d != 1 && d != -1) return std::nullopt;
  return A;
}

bool is_perm(const std::vector<int>& p, size_t m) {
  if (p.size() != m) return false;
  std::vector<char> seen(m, 0);
  for (int x : p)
    if (x < 0 || x >= static_cast<int>(m) || seen[x]++) return false;
  return true;
}

std::string face_str(const Face& f) {
  std::string s = "{";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + "}";
}

IntVec unit(int n, int i, long c = 1) {
  IntVec v(n, 0);
  v[i] = c;
  return v;
}

}  // namespace

GFan::GFan(int rank, std::vector<IntVec> rays, const std::vector<Face>& cones, std::vector<FanGenerator> gens,
           std::string name)
    : n_(rank), rays_(std::move(rays)), gens_(std::move(gens)), name_(std::move(name)) {
  if (n_ < 1) throw InvalidFan("rank must be positive");
  if (rays_.empty()) throw InvalidFan("fan has no rays");
  for (const auto& r : rays_)
    if (static_cast<int>(r.size()) != n_) throw InvalidFan("ray of the wrong length");
  std::set<Face> all{Face{}};
  for (Face c : cones) {
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw InvalidFan("cone repeats a ray " + face_str(c));
    for (int x : c)
      if (x < 0 || x >= static_cast<int>(rays_.size())) throw InvalidFan("cone refers to a missing ray");
    if (c.size() > 20) throw SizeLimit("cone too large");
    for (unsigned mask = 1; mask < (1u << c.size()); ++mask) {
      Face f;
      for (size_t i = 0; i < c.size(); ++i)
        if (mask >> i & 1) f.push_back(c[i]);
      all.insert(f);
    }
  }
  faces_.assign(all.begin(), all.end());
  std::stable_sort(faces_.begin(), faces_.end(), [](const Face& a, const Face& b) { return a.size() < b.size(); });
  for (size_t i = 0; i < faces_.size(); ++i) index_[faces_[i]] = static_cast<int>(i);
  for (const auto& g : gens_) {
    if (!is_perm(g.ray_perm, rays_.size())) throw InvalidFan("ray_perm is not a permutation of the rays");
    if (g.matrix.rows() && (g.matrix.rows() != n_ || g.matrix.cols() != n_))
      throw InvalidFan("generator matrix must be " + std::to_string(n_) + "x" + std::to_string(n_));
  }
}

GFan GFan::from_json(const json& j) {
  try {
    int n = j.at("rank").get<int>();
    std::vector<IntVec> rays;
    for (const auto& r : j.at("rays")) {
      IntVec v;
      for (const auto& x : r) v.emplace_back(x.get<long>());
      rays.push_back(v);
    }
    std::vector<Face> cones = j.at("cones").get<std::vector<Face>>();
    std::vector<FanGenerator> gens;
    if (j.contains("generators")) {
      for (const auto& g : j.at("generators")) {
        FanGenerator fg;
        fg.ray_perm = g.at("ray_perm").get<std::vector<int>>();
        if (g.contains("matrix")) {
          std::vector<IntVec> rows;
          for (const auto& r : g.at("matrix")) {
            IntVec v;
            for (const auto& x : r) v.emplace_back(x.get<long>());
            rows.push_back(v);
          }
          fg.matrix = IntMatrix::from_rows(rows, n);
        }
        gens.push_back(std::move(fg));
      }
    }
    return GFan(n, std::move(rays), cones, std::move(gens), j.value("name", std::string()));
  } catch (const json::exception& e) {
    throw ParseError(std::string("fan JSON: ") + e.what());
  }
}

json GFan::to_json() const {
  json j;
  if (!name_.empty()) j["name"] = name_;
  j["rank"] = n_;
  json rays = json::array();
  for (const auto& r : rays_) {
    json v = json::array();
    for (const auto& x : r) v.push_back(to_int64(x));
    rays.push_back(v);
  }
  j["rays"] = rays;
  std::set<Face> maximal(faces_.begin(), faces_.end());
  for (const auto& f : faces_)
    for (const auto& g : faces_)
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        maximal.erase(f);
        break;
      }
  j["cones"] = std::vector<Face>(maximal.begin(), maximal.end());
  json gens = json::array();
  for (const auto& g : gens_) {
    json e;
    e["ray_perm"] = g.ray_perm;
    IntMatrix A = g.matrix;
    if (!A.rows()) {
      auto m = lattice_map(n_, rays_, g.ray_perm);
      if (m) A = *m;
    }
    if (A.rows()) {
      json rows = json::array();
      for (int r = 0; r < A.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < A.cols(); ++c) row.push_back(to_int64(A(r, c)));
        rows.push_back(row);
      }
      e["matrix"] = rows;
    }
    gens.push_back(e);
  }
  j["generators"] = gens;
  return j;
}

void GFan::build_group() const {
  std::vector<Perm> perms;
  for (const auto& g : gens_) perms.push_back(g.ray_perm);
  if (perms.empty()) {
    Perm id(rays_.size());
    std::iota(id.begin(), id.end(), 0);
    perms.push_back(id);
  }
  auto G = std::make_shared<FinGroup>(FinGroup::from_permutations(perms));
  G->set_name(gens_.empty() ? "trivial" : "ray group of order " + std::to_string(G->order()));
  std::vector<IntMatrix> mats(G->order());
  for (int g = 0; g < G->order(); ++g) {
    auto A = lattice_map(n_, rays_, G->perm(g));
    if (!A) throw InvalidFan("ray permutation " + G->label(g) + " is not induced by a lattice automorphism");
    mats[g] = *A;
  }
  for (size_t i = 0; i < gens_.size(); ++i) {
    if (!gens_[i].matrix.rows()) continue;
    auto A = lattice_map(n_, rays_, gens_[i].ray_perm);
    if (gens_[i].matrix != *A)
      throw InvalidFan("generator " + std::to_string(i) + ": matrix does not induce the declared ray permutation");
  }
  group_ = std::move(G);
  mats_ = std::move(mats);
}

const reps::GroupPtr& GFan::group() const {
  if (!group_) build_group();
  return group_;
}

const IntMatrix& GFan::matrix_of(int g) const {
  group();
  return mats_.at(g);
}

Face GFan::image(int g, const Face& f) const {
  const Perm& p = group()->perm(g);
  Face out;
  for (int x : f) out.push_back(p[x]);
  std::sort(out.begin(), out.end());
  return out;
}

json FanReport::to_json() const { return {{"valid", valid}, {"problems", problems}}; }

FanReport validate_fan(const GFan& f) {
  FanReport rep;
  auto& pr = rep.problems;
  int n = f.rank();
  const auto& rays = f.rays();
  for (size_t i = 0; i < rays.size(); ++i) {
    BigInt g = 0;
    for (const auto& x : rays[i]) g = gcd(g, x);
    if (g == 0)
      pr.push_back("ray " + std::to_string(i) + " is zero");
    else if (g != 1)
      pr.push_back("ray " + std::to_string(i) + " is not primitive");
    for (size_t j = 0; j < i; ++j)
      if (rays[i] == rays[j]) pr.push_back("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  std::vector<Face> maximal;
  for (const auto& c : f.faces()) {
    bool is_max = true;
    for (size_t r = 0; r < rays.size() && is_max; ++r) {
      if (std::binary_search(c.begin(), c.end(), static_cast<int>(r))) continue;
      Face bigger = c;
      bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), static_cast<int>(r)), static_cast<int>(r));
      if (f.has_face(bigger)) is_max = false;
    }
    if (is_max) maximal.push_back(c);
  }
  for (const auto& c : maximal) {
    if (static_cast<int>(c.size()) != n) {
      pr.push_back("maximal cone " + face_str(c) + " has " + std::to_string(c.size()) + " rays, expected " +
                   std::to_string(n));
      continue;
    }
    std::vector<IntVec> cols;
    for (int x : c) cols.push_back(rays[x]);
    BigInt d = determinant(IntMatrix::from_columns(cols, n));
    if (d != 1 && d != -1)
      pr.push_back("cone " + face_str(c) + " is not smooth (determinant " + d.get_str() + ")");
  }
  for (const auto& c : f.faces()) {
    if (static_cast<int>(c.size()) != n - 1) continue;
    int count = 0;
    for (const auto& m : maximal)
      if (std::includes(m.begin(), m.end(), c.begin(), c.end()) && m.size() == c.size() + 1) ++count;
    if (count != 2)
      pr.push_back("cone " + face_str(c) + " lies in " + std::to_string(count) + " maximal cone" +
                   (count == 1 ? "" : "s") + ", expected 2");
  }
  if (!maximal.empty()) {
    std::vector<char> seen(maximal.size(), 0);
    std::queue<size_t> q;
    q.push(0);
    seen[0] = 1;
    size_t reached = 1;
    while (!q.empty()) {
      size_t a = q.front();
      q.pop();
      for (size_t b = 0; b < maximal.size(); ++b) {
        if (seen[b]) continue;
        Face common;
        std::set_intersection(maximal[a].begin(), maximal[a].end(), maximal[b].begin(), maximal[b].end(),
                              std::back_inserter(common));
        if (static_cast<int>(common.size()) == n - 1) {
          seen[b] = 1;
          ++reached;
          q.push(b);
        }
      }
    }
    if (reached != maximal.size()) pr.push_back("dual graph of the maximal cones is disconnected");
  }
  const auto& gens = f.generators();
  for (size_t i = 0; i < gens.size(); ++i) {
    const auto& p = gens[i].ray_perm;
    if (gens[i].matrix.rows()) {
      for (size_t r = 0; r < rays.size(); ++r)
        if (gens[i].matrix * rays[r] != rays[p[r]]) {
          pr.push_back("generator " + std::to_string(i) + " matrix sends ray " + std::to_string(r) + " elsewhere than ray " +
                       std::to_string(p[r]));
          break;
        }
    }
    for (const auto& c : f.faces()) {
      Face img;
      for (int x : c) img.push_back(p[x]);
      std::sort(img.begin(), img.end());
      if (!f.has_face(img)) {
        pr.push_back("generator " + std::to_string(i) + " maps cone " + face_str(c) + " to a non-cone");
        break;
      }
    }
  }
  if (pr.empty()) {
    try {
      f.group();
    } catch (const Error& e) {
      pr.push_back(e.what());
    }
  }
  rep.valid = pr.empty();
  return rep;
}

namespace {

FanGenerator gen_from_perm(Perm p) { return FanGenerator{IntMatrix(), std::move(p)}; }

Perm cycle_perm(int m, const std::vector<int>& cycle) {
  Perm p(m);
  std::iota(p.begin(), p.end(), 0);
  for (size_t i = 0; i < cycle.size(); ++i) p[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return p;
}

// rays e_1..e_{n} and -(e_1+...+e_n) in Z^n, all n-subsets as cones
GFan simplex_fan(int n, std::vector<FanGenerator> gens, std::string name) {
  std::vector<IntVec> rays;
  for (int i = 0; i < n; ++i) rays.push_back(unit(n, i));
  rays.push_back(IntVec(n, -1));
  std::vector<Face> cones;
  for (int skip = 0; skip <= n; ++skip) {
    Face c;
    for (int i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return GFan(n, rays, cones, std::move(gens), std::move(name));
}

}  // namespace

GFan projective_space(int n, const std::string& action) {
  if (n < 1 || n > 6) throw InvalidArgument("projective space dimension must be in 1..6");
  int m = n + 1;
  std::vector<FanGenerator> gens;
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  if (action == "trivial") {
  } else if (action == "cyclic") {
    gens.push_back(gen_from_perm(cycle_perm(m, all)));
  } else if (action == "symmetric") {
    gens.push_back(gen_from_perm(cycle_perm(m, {0, 1})));
    gens.push_back(gen_from_perm(cycle_perm(m, all)));
  } else if (action == "coordinate") {
    if (n < 2) throw InvalidArgument("coordinate action needs n >= 2");
    std::vector<int> first(all.begin(), all.end() - 1);
    gens.push_back(gen_from_perm(cycle_perm(m, {0, 1})));
    gens.push_back(gen_from_perm(cycle_perm(m, first)));
  } else {
    throw InvalidArgument("unknown action \"" + action + "\" (trivial, cyclic, symmetric, coordinate)");
  }
  return simplex_fan(n, std::move(gens), "P" + std::to_string(n) + ":" + action);
}

GFan twisted_permutation_fan(int n) {
  if (n < 2 || n > 7) throw InvalidArgument("twisted fan needs 2 <= n <= 7");
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<FanGenerator> gens{gen_from_perm(cycle_perm(n, {0, 1})), gen_from_perm(cycle_perm(n, all))};
  if (n == 2) gens.pop_back();
  return simplex_fan(n - 1, std::move(gens), "twisted" + std::to_string(n));
}

GFan product_of_lines(int k, const std::string& action) {
  if (k < 1 || k > 5) throw InvalidArgument("number of factors must be in 1..5");
  std::vector<IntVec> rays;
  for (int i = 0; i < k; ++i) {
    rays.push_back(unit(k, i, 1));
    rays.push_back(unit(k, i, -1));
  }
  std::vector<Face> cones;
  for (int signs = 0; signs < (1 << k); ++signs) {
    Face c;
    for (int i = 0; i < k; ++i) c.push_back(2 * i + (signs >> i & 1));
    cones.push_back(c);
  }
  // permutation of the factors, lifted to the rays
  auto lift = [&](const Perm& coords) {
    Perm p(2 * k);
    for (int i = 0; i < k; ++i) {
      p[2 * i] = 2 * coords[i];
      p[2 * i + 1] = 2 * coords[i] + 1;
    }
    return gen_from_perm(p);
  };
  std::vector<int> all(k);
  std::iota(all.begin(), all.end(), 0);
  std::vector<FanGenerator> gens;
  if (action == "trivial") {
  } else if (action == "swap") {
    if (k < 2) throw InvalidArgument("swap action needs at least two factors");
    gens.push_back(lift(cycle_perm(k, {0, 1})));
    if (k > 2) gens.push_back(lift(cycle_perm(k, all)));
  } else if (action == "cyclic") {
    if (k < 2) throw InvalidArgument("cyclic action needs at least two factors");
    gens.push_back(lift(cycle_perm(k, all)));
  } else if (action == "inversion") {
    Perm p(2 * k);
    for (int i = 0; i < 2 * k; ++i) p[i] = i ^ 1;
    gens.push_back(gen_from_perm(p));
  } else {
    throw InvalidArgument("unknown action \"" + action + "\" (trivial, swap, cyclic, inversion)");
  }
  return GFan(k, rays, cones, std::move(gens), "P1^" + std::to_string(k) + ":" + action);
}

GFan permutohedral_fan(int n) {
  if (n < 2 || n > 5) throw InvalidArgument("permutohedral fan needs 2 <= n <= 5");
  int full = (1 << n) - 1;
  std::vector<int> subsets;
  for (int s = 1; s < full; ++s) subsets.push_back(s);
  std::vector<int> index(full + 1, -1);
  for (size_t i = 0; i < subsets.size(); ++i) index[subsets[i]] = static_cast<int>(i);
  // coordinates: images of e_1..e_{n-1}, e_n = -(e_1+...+e_{n-1})
  std::vector<IntVec> rays;
  for (int s : subsets) {
    IntVec v(n - 1, 0);
    for (int i = 0; i < n; ++i) {
      if (!(s >> i & 1)) continue;
      if (i < n - 1)
        v[i] += 1;
      else
        for (auto& x : v) x -= 1;
    }
    rays.push_back(v);
  }
  // maximal cones: chains {a_1} < {a_1,a_2} < ... from orderings of {1..n}
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Face> cones;
  do {
    Face c;
    int s = 0;
    for (int i = 0; i + 1 < n; ++i) {
      s |= 1 << order[i];
      c.push_back(index[s]);
    }
    cones.push_back(c);
  } while (std::next_permutation(order.begin(), order.end()));
  auto lift = [&](const Perm& pts) {
    Perm p(subsets.size());
    for (size_t i = 0; i < subsets.size(); ++i) {
      int t = 0;
      for (int x = 0; x < n; ++x)
        if (subsets[i] >> x & 1) t |= 1 << pts[x];
      p[i] = index[t];
    }
    return gen_from_perm(p);
  };
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<FanGenerator> gens{lift(cycle_perm(n, {0, 1}))};
  if (n > 2) gens.push_back(lift(cycle_perm(n, all)));
  return GFan(n - 1, rays, cones, std::move(gens), "permutohedral" + std::to_string(n));
}

GFan broken_plane_fan() {
  GFan p = projective_space(2);
  return GFan(2, p.rays(), {{0, 1}, {1, 2}}, {}, "broken-P2");
}

GFan library_fan(const std::string& name) {
  auto colon = name.find(':');
  std::string base = name.substr(0, colon);
  std::string action = colon == std::string::npos ? "trivial" : name.substr(colon + 1);
  auto number = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw InvalidArgument("unknown fan \"" + name + "\"");
    return std::stoi(s);
  };
  if (base == "broken-P2") return broken_plane_fan();
  if (base.rfind("P1^", 0) == 0) return product_of_lines(number(base.substr(3)), action);
  if (base.rfind("twisted", 0) == 0) return twisted_permutation_fan(number(base.substr(7)));
  if (base.rfind("permutohedral", 0) == 0) return permutohedral_fan(number(base.substr(13)));
  if (base.rfind("P", 0) == 0) return projective_space(number(base.substr(1)), action);
  throw InvalidArgument("unknown fan \"" + name + "\"");
}

std::vector<std::string> torus_suite() {
  std::vector<std::string> out;
  for (int n = 1; n <= 4; ++n) {
    out.push_back("P" + std::to_string(n) + ":trivial");
    out.push_back("P" + std::to_string(n) + ":cyclic");
    out.push_back("P" + std::to_string(n) + ":symmetric");
    if (n >= 2) out.push_back("P" + std::to_string(n) + ":coordinate");
  }
  for (int k = 1; k <= 3; ++k) {
    out.push_back("P1^" + std::to_string(k) + ":trivial");
    out.push_back("P1^" + std::to_string(k) + ":inversion");
    if (k >= 2) {
      out.push_back("P1^" + std::to_string(k) + ":swap");
      out.push_back("P1^" + std::to_string(k) + ":cyclic");
    }
  }
  for (int n = 2; n <= 5; ++n) out.push_back("twisted" + std::to_string(n));
  return out;
}

}  // namespace kbg::toric
