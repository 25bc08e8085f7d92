#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace kbg::acceptance {

struct Options {
  bool slow_64 = false;  // also run the order-64 double computation
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no limit
  std::string detail;
  nlohmann::json data;
  std::string line() const;  // "[PASS] 3  symmetric-power identity ... (1.20 s)"
  nlohmann::json to_json() const;
};

constexpr int kCriteria = 10;

std::string criterion_title(int id);
CriterionResult run_criterion(int id, const Options& opt = {});
std::vector<CriterionResult> run_all(const Options& opt = {});

// library of point-count shapes used by the symmetric-power criterion
const std::vector<std::string>& sympow_shapes();

}  // namespace kbg::acceptance
