#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kbg/arith/intmatrix.hpp"
#include "kbg/reps/group.hpp"

namespace kbg::toric {

using Face = std::vector<int>;  // sorted ray indices

struct FanGenerator {
  IntMatrix matrix;          // action on M
  std::vector<int> ray_perm;  // image of each ray index
};

// Simplicial fan in M = Z^n with a finite group acting by lattice automorphisms
// that permute the rays.
class GFan {
 public:
  GFan() = default;
  // cones may list only the maximal cones; all faces are added.
  GFan(int rank, std::vector<IntVec> rays, const std::vector<Face>& cones, std::vector<FanGenerator> gens,
       std::string name = "");
  static GFan from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  int rank() const { return n_; }
  const std::string& name() const { return name_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<Face>& faces() const { return faces_; }  // includes the empty face
  bool has_face(const Face& f) const { return index_.count(f) > 0; }
  const std::vector<FanGenerator>& generators() const { return gens_; }

  // Group generated by the ray permutations; matrix_of(g) is g acting on M.
  // Throws InvalidFan if the ray permutations do not come from lattice maps.
  const reps::GroupPtr& group() const;
  const IntMatrix& matrix_of(int g) const;
  // image of a face under g
  Face image(int g, const Face& f) const;

 private:
  void build_group() const;
  int n_ = 0;
  std::vector<IntVec> rays_;
  std::vector<Face> faces_;
  std::map<Face, int> index_;
  std::vector<FanGenerator> gens_;
  std::string name_;
  mutable reps::GroupPtr group_;
  mutable std::vector<IntMatrix> mats_;
};

struct FanReport {
  bool valid = false;
  std::vector<std::string> problems;
  nlohmann::json to_json() const;
};

FanReport validate_fan(const GFan& f);

// Library fans.
// P^n: rays e_1..e_n and -(e_1+...+e_n). action: "trivial", "cyclic" or "symmetric"
// (permuting all n+1 rays).
GFan projective_space(int n, const std::string& action = "trivial");
// (P^1)^k; action "trivial", "swap" (all coordinate permutations), "cyclic" or "inversion" (-1).
GFan product_of_lines(int k, const std::string& action = "trivial");
// M = Z^n / Z(1,...,1) with rays the images of e_i and Sigma_n permuting them.
GFan twisted_permutation_fan(int n);
// Rays the images of the proper non-empty subsets of {1..n} in Z^n / Z(1,...,1), cones the
// chains of subsets; Sigma_n permutes coordinates.
GFan permutohedral_fan(int n);
// P^2 with one maximal cone removed.
GFan broken_plane_fan();

// "P2", "P3:symmetric", "P1^2:swap", "twisted4", "permutohedral3", "broken-P2", ...
GFan library_fan(const std::string& name);
// Fans used for the torus checks.
std::vector<std::string> torus_suite();

}  // namespace kbg::toric
