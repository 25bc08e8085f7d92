#include "kbg/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include "kbg/errors.hpp"

namespace kbg::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

long long to_int(const std::string& key, const std::string& value) {
  size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw InvalidArgument("config key '" + key + "' needs an integer, got '" + value + "'");
  return v;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"flags_max_n", "max_group_order", "max_series_order", "format", "seed", "threads"};
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  std::string value = trim(raw);
  if (key == "flags_max_n") {
    flags_max_n = static_cast<int>(to_int(key, value));
  } else if (key == "max_group_order") {
    max_group_order = static_cast<int>(to_int(key, value));
  } else if (key == "max_series_order") {
    max_series_order = static_cast<int>(to_int(key, value));
  } else if (key == "format") {
    if (value == "text") format = Format::Text;
    else if (value == "json") format = Format::Json;
    else throw InvalidArgument("format must be text or json, got '" + value + "'");
  } else if (key == "seed") {
    long long s = to_int(key, value);
    if (s < 0) throw InvalidArgument("seed must be non-negative");
    seed = static_cast<unsigned long long>(s);
  } else if (key == "threads") {
    threads = static_cast<int>(to_int(key, value));
  } else {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
  validate();
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(path + ":" + std::to_string(lineno) + ": expected key = value");
    set(trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

void RunConfig::load_env(const std::function<const char*(const char*)>& lookup) {
  for (const auto& key : config_keys()) {
    std::string var = "KBG_" + key;
    std::transform(var.begin(), var.end(), var.begin(), [](unsigned char c) { return std::toupper(c); });
    if (const char* v = lookup(var.c_str())) set(key, v);
  }
}

void RunConfig::validate() const {
  if (flags_max_n < 1) throw InvalidArgument("flags_max_n must be positive");
  if (max_group_order < 1) throw InvalidArgument("max_group_order must be positive");
  if (max_series_order < 1) throw InvalidArgument("max_series_order must be positive");
  if (threads < 0) throw InvalidArgument("threads must be non-negative");
}

nlohmann::json RunConfig::to_json() const {
  return {{"flags_max_n", flags_max_n},
          {"max_group_order", max_group_order},
          {"max_series_order", max_series_order},
          {"format", format == Format::Json ? "json" : "text"},
          {"seed", seed},
          {"threads", threads}};
}

}  // namespace kbg::cli
