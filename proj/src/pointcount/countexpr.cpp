#include <cctype>
#include <set>

#include "kbg/errors.hpp"
#include "kbg/pointcount/pointcount.hpp"

namespace kbg::pointcount {

CountExpr CountExpr::point() { return CountExpr(); }

CountExpr CountExpr::affine(int m) {
  if (m < 0) throw InvalidArgument("affine dimension must be non-negative");
  CountExpr e;
  e.kind_ = Kind::Affine;
  e.m_ = m;
  return e;
}

CountExpr CountExpr::gm() {
  CountExpr e;
  e.kind_ = Kind::Gm;
  return e;
}

CountExpr CountExpr::etale(std::vector<int> perm) {
  std::set<int> seen(perm.begin(), perm.end());
  if (seen.size() != perm.size() || (!perm.empty() && (*seen.begin() != 0 || *seen.rbegin() != static_cast<int>(perm.size()) - 1)))
    throw InvalidArgument("etale data must be a permutation");
  CountExpr e;
  e.kind_ = Kind::Etale;
  e.perm_ = std::move(perm);
  return e;
}

CountExpr CountExpr::sum(std::vector<CountExpr> parts) {
  if (parts.size() == 1) return parts.front();
  CountExpr e;
  e.kind_ = Kind::Sum;
  e.parts_ = std::move(parts);
  return e;
}

CountExpr CountExpr::product(std::vector<CountExpr> factors) {
  if (factors.size() == 1) return factors.front();
  CountExpr e;
  e.kind_ = Kind::Product;
  e.parts_ = std::move(factors);
  return e;
}

std::string CountExpr::to_string() const {
  switch (kind_) {
    case Kind::Point:
      return "pt";
    case Kind::Affine:
      return "A{" + std::to_string(m_) + "}";
    case Kind::Gm:
      return "Gm";
    case Kind::Etale: {
      std::string s = "etale[";
      for (size_t i = 0; i < perm_.size(); ++i) s += (i ? "," : "") + std::to_string(perm_[i] + 1);
      return s + "]";
    }
    case Kind::Sum:
    case Kind::Product: {
      std::string s = "(";
      for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += kind_ == Kind::Sum ? "+" : "*";
        s += parts_[i].to_string();
      }
      return s + ")";
    }
  }
  return "";
}

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  CountExpr run() {
    CountExpr e = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what + " at position " + std::to_string(i_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool eat_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) == 0) {
      i_ += w.size();
      return true;
    }
    return false;
  }
  int number() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    if (i_ - start > 6) fail("number too large");
    return std::stoi(s_.substr(start, i_ - start));
  }

  CountExpr expr() {
    std::vector<CountExpr> parts{term()};
    while (eat('+')) parts.push_back(term());
    return CountExpr::sum(std::move(parts));
  }
  CountExpr term() {
    std::vector<CountExpr> f{factor()};
    while (eat('*')) f.push_back(factor());
    return CountExpr::product(std::move(f));
  }
  CountExpr factor() {
    if (eat('(')) {
      CountExpr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (eat_word("pt")) return CountExpr::point();
    if (eat_word("Gm")) return CountExpr::gm();
    if (eat_word("etale[")) return etale_body();
    if (eat_word("A")) {
      if (eat('{')) {
        int m = number();
        if (!eat('}')) fail("expected '}'");
        return CountExpr::affine(m);
      }
      return CountExpr::affine(number());
    }
    fail("expected pt, A{m}, Gm, etale[...] or '('");
  }
  CountExpr etale_body() {
    std::vector<int> perm;
    skip();
    if (i_ < s_.size() && s_[i_] == '(') {
      // cycle notation on 1..max; points not mentioned are fixed
      std::vector<std::vector<int>> cycles;
      int top = 0;
      while (eat('(')) {
        std::vector<int> cyc;
        size_t close = s_.find(')', i_);
        bool commas = s_.find(',', i_) < close;
        while (!eat(')')) {
          skip();
          if (i_ >= s_.size()) fail("unterminated cycle");
          if (s_[i_] == ',') {
            ++i_;
            continue;
          }
          int v;
          if (commas) {
            v = number();
          } else {
            if (!std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected a digit");
            v = s_[i_++] - '0';
          }
          if (v < 1) fail("points are numbered from 1");
          cyc.push_back(v);
          top = std::max(top, v);
        }
        cycles.push_back(cyc);
      }
      perm.resize(top);
      for (int i = 0; i < top; ++i) perm[i] = i;
      std::set<int> used;
      for (const auto& c : cycles)
        for (size_t k = 0; k < c.size(); ++k) {
          if (!used.insert(c[k]).second) fail("point repeated in cycles");
          perm[c[k] - 1] = c[(k + 1) % c.size()] - 1;
        }
    } else if (!eat(']')) {
      do perm.push_back(number() - 1);
      while (eat(','));
      if (!eat(']')) fail("expected ']'");
      try {
        return CountExpr::etale(perm);
      } catch (const InvalidArgument& e) {
        fail(e.what());
      }
    } else {
      return CountExpr::etale({});
    }
    if (!eat(']')) fail("expected ']'");
    return CountExpr::etale(perm);
  }
};

}  // namespace

CountExpr CountExpr::parse(const std::string& text) { return Parser(text).run(); }

}  // namespace kbg::pointcount
