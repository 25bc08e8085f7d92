#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace kbg::cli {

enum class Format { Text, Json };

struct RunConfig {
  int flags_max_n = 9;
  int max_group_order = 128;
  int max_series_order = 32;
  Format format = Format::Text;
  unsigned long long seed = 20240601;
  int threads = 0;  // 0: OpenMP default

  // key = value; throws InvalidArgument on unknown keys or bad values
  void set(const std::string& key, const std::string& value);
  void load_file(const std::string& path);
  // KBG_FLAGS_MAX_N, KBG_MAX_GROUP_ORDER, ... through a lookup (getenv by default)
  void load_env(const std::function<const char*(const char*)>& lookup);
  void validate() const;
  nlohmann::json to_json() const;
};

const std::vector<std::string>& config_keys();

}  // namespace kbg::cli
