#include <algorithm>
#include <cctype>
#include <sstream>

#include "kbg/errors.hpp"
#include "kbg/flags/flags.hpp"

namespace kbg::flags {

namespace {

void sort_blocks(std::vector<std::vector<int>>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.front() < y.front();
  });
}

}  // namespace

SetPartition SetPartition::from_blocks(int n, std::vector<std::vector<int>> blocks) {
  std::vector<int> seen(n + 1, 0);
  for (const auto& b : blocks) {
    if (b.empty()) throw InvalidArgument("empty block in partition");
    for (int x : b) {
      if (x < 1 || x > n) throw InvalidArgument("partition element out of range");
      if (seen[x]++) throw InvalidArgument("partition element repeated");
    }
  }
  for (int x = 1; x <= n; ++x)
    if (!seen[x]) throw InvalidArgument("partition does not cover " + std::to_string(x));
  sort_blocks(blocks);
  return SetPartition{n, std::move(blocks)};
}

SetPartition SetPartition::discrete(int n) {
  std::vector<std::vector<int>> b;
  for (int i = 1; i <= n; ++i) b.push_back({i});
  return from_blocks(n, b);
}

SetPartition SetPartition::full(int n) {
  std::vector<int> all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  return from_blocks(n, {all});
}

SetPartition SetPartition::parse(const std::string& text) {
  std::vector<std::vector<int>> blocks;
  std::stringstream ss(text);
  std::string part;
  int n = 0;
  bool commas = text.find(',') != std::string::npos;
  while (std::getline(ss, part, '|')) {
    std::vector<int> b;
    if (commas) {
      std::stringstream ps(part);
      std::string tok;
      while (std::getline(ps, tok, ',')) {
        tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
        if (tok.empty()) continue;
        if (!std::all_of(tok.begin(), tok.end(), ::isdigit)) throw ParseError("bad element " + tok);
        b.push_back(std::stoi(tok));
      }
    } else {
      for (char c : part) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
          throw ParseError(std::string("bad partition character '") + c + "'");
        b.push_back(c - '0');
      }
    }
    if (b.empty()) throw ParseError("empty block in \"" + text + "\"");
    for (int x : b) n = std::max(n, x);
    blocks.push_back(b);
  }
  if (blocks.empty()) throw ParseError("empty partition");
  try {
    return from_blocks(n, blocks);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

std::string SetPartition::to_string() const {
  std::string out;
  bool commas = n > 9;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "|";
    for (size_t j = 0; j < blocks[i].size(); ++j) {
      if (commas && j) out += ",";
      out += std::to_string(blocks[i][j]);
    }
  }
  return out;
}

bool SetPartition::refines(const SetPartition& coarser) const {
  if (n != coarser.n) return false;
  std::vector<int> owner(n + 1);
  for (size_t b = 0; b < coarser.blocks.size(); ++b)
    for (int x : coarser.blocks[b]) owner[x] = static_cast<int>(b);
  for (const auto& b : blocks)
    for (int x : b)
      if (owner[x] != owner[b.front()]) return false;
  return true;
}

EquivFlag EquivFlag::parse(int n, const std::string& text) {
  EquivFlag f;
  f.n = n;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('<', pos);
    std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    SetPartition p = SetPartition::parse(part);
    if (p.n < n) {
      // Trailing singletons may be omitted only if n is given explicitly.
      std::vector<std::vector<int>> b = p.blocks;
      for (int x = p.n + 1; x <= n; ++x) b.push_back({x});
      p = SetPartition::from_blocks(n, b);
    }
    if (p.n != n) throw ParseError("partition \"" + part + "\" is not on {1.." + std::to_string(n) + "}");
    f.chain.push_back(p);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  f.validate();
  return f;
}

std::string EquivFlag::to_string() const {
  std::string out;
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i) out += " < ";
    out += chain[i].to_string();
  }
  return out;
}

void EquivFlag::validate() const {
  if (chain.empty()) throw InvalidArgument("a flag needs at least one partition");
  for (const auto& p : chain)
    if (p.n != n) throw InvalidArgument("flag partitions on different ground sets");
  if (chain.front().is_discrete()) throw InvalidArgument("first partition of a flag must be non-discrete");
  for (size_t i = 1; i < chain.size(); ++i) {
    if (!chain[i - 1].refines(chain[i]) || chain[i - 1] == chain[i])
      throw InvalidArgument("flag is not strictly increasing at position " + std::to_string(i + 1));
  }
}

}  // namespace kbg::flags
