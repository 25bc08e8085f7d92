#include "kbg/kring/lclass.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "kbg/arith/numtheory.hpp"
#include "kbg/errors.hpp"

namespace kbg::kring {

namespace {

const IntPoly& phi_poly(int d) {
  thread_local std::unordered_map<int, IntPoly> memo;
  auto it = memo.find(d);
  if (it != memo.end()) return it->second;
  return memo.emplace(d, cyclotomic_poly(d)).first->second;
}

IntPoly phi_product(const std::map<int, int>& exps) {
  IntPoly r = IntPoly::constant(1);
  for (const auto& [d, e] : exps)
    if (e > 0) r *= phi_poly(d).pow(e);
  return r;
}

void canonical(const LPoly& num, std::map<int, int> exps, int lpow, LPoly& out_num,
                 std::vector<int>& out_cyc, int& out_lpow) {
  out_cyc.clear();
  if (num.is_zero()) {
    out_num = LPoly();
    out_lpow = 0;
    return;
  }
  int s = 0;
  IntPoly P = num.to_poly(s);
  for (auto& [d, e] : exps) {
    while (e > 0) {
      auto q = P.divide_exact(phi_poly(d));
      if (!q) break;
      P = std::move(*q);
      --e;
    }
  }
  IntPoly cof = IntPoly::constant(1);
  for (;;) {
    int top = 0;
    for (const auto& [d, e] : exps)
      if (e > 0) top = std::max(top, d);
    if (top == 0) break;
    out_cyc.push_back(top);
    for (auto k : divisors(top)) {
      int& e = exps[static_cast<int>(k)];
      if (e > 0)
        --e;
      else
        cof *= phi_poly(static_cast<int>(k));
    }
  }
  std::sort(out_cyc.begin(), out_cyc.end());
  P *= cof;
  int t = s - lpow;
  if (t >= 0) {
    out_num = LPoly::from_poly(P, t);
    out_lpow = 0;
  } else {
    out_num = LPoly::from_poly(P, 0);
    out_lpow = -t;
  }
}

}  // namespace

std::map<int, int> cyclotomic_exponents(const std::vector<int>& ns) {
  std::map<int, int> e;
  for (int n : ns) {
    if (n < 1) throw InvalidArgument("denominator factor L^n - 1 needs n >= 1");
    for (auto d : divisors(n)) e[static_cast<int>(d)] += 1;
  }
  return e;
}

std::optional<CyclotomicFactorisation> factor_cyclotomic(const LPoly& p) {
  if (p.is_zero()) return std::nullopt;
  CyclotomicFactorisation f;
  IntPoly P = p.to_poly(f.shift);
  if (abs(P.coeff(0)) != 1 || abs(P.leading()) != 1) return std::nullopt;
  long bound = 2L * P.degree() * P.degree() + 2;
  for (long d = 1; d <= bound && P.degree() > 0; ++d) {
    if (euler_phi(d) > P.degree()) continue;
    const IntPoly& phi = phi_poly(static_cast<int>(d));
    for (;;) {
      auto q = P.divide_exact(phi);
      if (!q) break;
      P = std::move(*q);
      f.exps[static_cast<int>(d)] += 1;
    }
  }
  if (P.degree() != 0 || abs(P.coeff(0)) != 1) return std::nullopt;
  f.sign = P.coeff(0) > 0 ? 1 : -1;
  return f;
}

LClass::LClass(long c) : num_(c) {}

LClass::LClass(const LPoly& p) {
  canonical(p, {}, 0, num_, den_cyc_, den_lpow_);
}

LClass LClass::from_parts(const LPoly& num, const std::vector<int>& den_cyc, int den_lpow) {
  LClass r;
  canonical(num, cyclotomic_exponents(den_cyc), den_lpow, r.num_, r.den_cyc_, r.den_lpow_);
  return r;
}

LClass LClass::operator+(const LClass& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  auto ea = cyclotomic_exponents(den_cyc_), eb = cyclotomic_exponents(o.den_cyc_);
  std::map<int, int> E = ea, fa, fb;
  for (const auto& [d, e] : eb) E[d] = std::max(E[d], e);
  for (const auto& [d, e] : E) {
    fa[d] = e - (ea.count(d) ? ea[d] : 0);
    fb[d] = e - (eb.count(d) ? eb[d] : 0);
  }
  int A = std::max(den_lpow_, o.den_lpow_);
  LPoly n = num_ * LPoly::from_poly(phi_product(fa), A - den_lpow_) +
            o.num_ * LPoly::from_poly(phi_product(fb), A - o.den_lpow_);
  LClass r;
  canonical(n, E, A, r.num_, r.den_cyc_, r.den_lpow_);
  return r;
}

LClass LClass::operator-() const {
  LClass r(*this);
  r.num_ = -num_;
  return r;
}

LClass LClass::operator-(const LClass& o) const { return *this + (-o); }

LClass LClass::operator*(const LClass& o) const {
  if (is_zero() || o.is_zero()) return LClass();
  auto e = cyclotomic_exponents(den_cyc_);
  for (const auto& [d, k] : cyclotomic_exponents(o.den_cyc_)) e[d] += k;
  LClass r;
  canonical(num_ * o.num_, e, den_lpow_ + o.den_lpow_, r.num_, r.den_cyc_, r.den_lpow_);
  return r;
}

LClass LClass::operator/(const LClass& o) const {
  auto f = factor_cyclotomic(o.num_);
  if (!f) throw DivisionByNonUnit("divisor " + o.to_string() + " is not a unit");
  LPoly n = num_ * LPoly::monomial(o.den_lpow_, f->sign);
  for (int k : o.den_cyc_) n *= LPoly::l_pow_minus_one(k);
  auto e = cyclotomic_exponents(den_cyc_);
  for (const auto& [d, k] : f->exps) e[d] += k;
  LClass r;
  canonical(n, e, den_lpow_ + f->shift, r.num_, r.den_cyc_, r.den_lpow_);
  return r;
}

bool LClass::operator==(const LClass& o) const {
  return num_ == o.num_ && den_cyc_ == o.den_cyc_ && den_lpow_ == o.den_lpow_;
}

bool LClass::operator<(const LClass& o) const {
  if (den_lpow_ != o.den_lpow_) return den_lpow_ < o.den_lpow_;
  if (den_cyc_ != o.den_cyc_) return den_cyc_ < o.den_cyc_;
  return num_.terms() < o.num_.terms();
}

bool LClass::is_unit() const { return factor_cyclotomic(num_).has_value(); }

LClass LClass::inverse() const { return LClass(1) / *this; }

LClass LClass::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  LClass r(1), b(*this);
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

LClass LClass::substitute_power(int k) const {
  if (k < 1) throw InvalidArgument("substitution L -> L^k needs k >= 1");
  std::vector<int> cyc;
  for (int n : den_cyc_) cyc.push_back(n * k);
  return from_parts(num_.substitute_power(k), cyc, den_lpow_ * k);
}

BigRat LClass::evaluate(const BigInt& q) const {
  BigRat den = BigRat(pow_int(q, den_lpow_));
  for (int n : den_cyc_) den *= BigRat(pow_int(q, n) - 1);
  if (den == 0) throw InvalidArgument("evaluation point is a pole");
  BigRat r = num_.eval_rational(BigRat(q)) / den;
  r.canonicalize();
  return r;
}

std::string LClass::to_string() const {
  std::string n = num_.to_string();
  if (is_polynomial()) return n;
  bool single = num_.terms().size() == 1;
  std::string out = single ? n : "(" + n + ")";
  out += " / ";
  if (den_lpow_ == 1) out += "L";
  if (den_lpow_ > 1) out += "L^" + std::to_string(den_lpow_);
  for (int k : den_cyc_) out += k == 1 ? "(L-1)" : "(L^" + std::to_string(k) + "-1)";
  return out;
}

namespace {

// expr    := ['+'|'-'] term (('+'|'-') term)*
// term    := product (('*'|'/') product)*
// product := power power*          (juxtaposition binds tighter than * and /)
// power   := atom ['^' ['-'] integer | '^' '(' ['-'] integer ')']
// atom    := integer | 'L' | '(' expr ')'
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  LClass parse_all() {
    LClass v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) {
    throw ParseError(why + " at offset " + std::to_string(i_) + " in \"" + s_ + "\"");
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool starts_atom() {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'L' || c == '(';
  }

  LClass expr() {
    bool neg = false;
    char c = peek();
    if (c == '+' || c == '-') {
      neg = c == '-';
      ++i_;
    }
    LClass v = term();
    if (neg) v = -v;
    for (;;) {
      c = peek();
      if (c == '+') {
        ++i_;
        v += term();
      } else if (c == '-') {
        ++i_;
        v -= term();
      } else {
        return v;
      }
    }
  }

  LClass term() {
    LClass v = product();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        v *= product();
      } else if (c == '/') {
        ++i_;
        v = v / product();
      } else {
        return v;
      }
    }
  }

  LClass product() {
    if (!starts_atom()) fail("expected a number, L or '('");
    LClass v = power();
    while (starts_atom()) v *= power();
    return v;
  }

  LClass power() {
    LClass base = atom();
    if (peek() != '^') return base;
    ++i_;
    bool paren = false;
    if (peek() == '(') {
      paren = true;
      ++i_;
    }
    bool neg = false;
    if (peek() == '-') {
      neg = true;
      ++i_;
    }
    BigInt e = integer();
    if (paren) {
      if (peek() != ')') fail("expected ')'");
      ++i_;
    }
    if (!e.fits_sint_p()) fail("exponent too large");
    int k = static_cast<int>(e.get_si());
    return base.pow(neg ? -k : k);
  }

  LClass atom() {
    char c = peek();
    if (c == 'L') {
      ++i_;
      return LClass::L();
    }
    if (c == '(') {
      ++i_;
      LClass v = expr();
      if (peek() != ')') fail("expected ')'");
      ++i_;
      return v;
    }
    return LClass(LPoly::constant(integer()));
  }

  BigInt integer() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected an integer");
    return BigInt(s_.substr(start, i_ - start));
  }

  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

LClass LClass::parse(const std::string& text) { return Parser(text).parse_all(); }

}  // namespace kbg::kring
