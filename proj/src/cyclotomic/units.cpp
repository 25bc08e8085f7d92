#include <algorithm>
#include <cctype>
#include <map>

#include "kbg/arith/intmatrix.hpp"
#include "kbg/arith/numtheory.hpp"
#include "kbg/cyclotomic/cyclotomic.hpp"
#include "kbg/errors.hpp"

namespace kbg::cyclo {

GroupRingElt::GroupRingElt(int n_, std::vector<BigInt> coeffs) : n(n_), c(n_, 0) {
  if (n < 1) throw InvalidArgument("cyclic group order must be positive");
  for (size_t i = 0; i < coeffs.size(); ++i) c[i % n] += coeffs[i];
}

GroupRingElt GroupRingElt::monomial(int n, int k) {
  GroupRingElt e(n, {});
  e.c[((k % n) + n) % n] = 1;
  return e;
}

GroupRingElt GroupRingElt::parse(int n, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty group ring element");
  GroupRingElt out(n, {});
  size_t i = 0;
  auto number = [&](BigInt& v) {
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    v = BigInt(s.substr(i, j - i));
    i = j;
    return true;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    BigInt coef = 1;
    bool has_coef = number(coef);
    if (has_coef && i < s.size() && s[i] == '*') ++i;
    long e = 0;
    if (i < s.size() && (s[i] == 'x' || s[i] == 'g')) {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        BigInt ev;
        bool neg = i < s.size() && s[i] == '-';
        if (neg) ++i;
        if (!number(ev)) throw ParseError("exponent expected in '" + text + "'");
        e = neg ? -ev.get_si() : ev.get_si();
      }
    } else if (!has_coef) {
      throw ParseError("cannot parse '" + text + "'");
    }
    out.c[((e % n) + n) % n] += coef * sign;
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw ParseError("unexpected '" + std::string(1, s[i]) + "' in '" + text + "'");
  }
  return out;
}

GroupRingElt GroupRingElt::operator*(const GroupRingElt& o) const {
  if (n != o.n) throw InvalidArgument("group rings differ");
  GroupRingElt r(n, {});
  for (int i = 0; i < n; ++i) {
    if (c[i] == 0) continue;
    for (int j = 0; j < n; ++j) r.c[(i + j) % n] += c[i] * o.c[j];
  }
  return r;
}

bool GroupRingElt::is_one() const { return *this == monomial(n, 0); }

GroupRingElt GroupRingElt::substitute(int k) const {
  if (gcd64(k, n) != 1) throw InvalidArgument("substitution must be an automorphism");
  GroupRingElt r(n, {});
  for (int i = 0; i < n; ++i) r.c[((static_cast<long>(i) * k) % n + n) % n] += c[i];
  return r;
}

std::string GroupRingElt::to_string() const {
  std::vector<BigInt> v(c.begin(), c.end());
  return IntPoly(v).to_string("x");
}

GroupRingElt unit_inverse(const GroupRingElt& u) {
  int n = u.n;
  IntMatrix M(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) M((i + j) % n, j) = u.c[i];
  BigInt det = determinant(M);
  if (abs(det) != 1)
    throw NotAUnit(u.to_string() + " is not a unit of Z[C_" + std::to_string(n) + "]: multiplication has determinant " + det.get_str());
  IntVec e(n, 0);
  e[0] = 1;
  auto x = solve_integral(M, e);
  if (!x) throw NotAUnit("no integral inverse for " + u.to_string());
  GroupRingElt inv(n, *x);
  if (!(u * inv).is_one()) throw std::logic_error("inverse check failed");
  return inv;
}

nlohmann::json UnitImageReport::to_json() const {
  return {{"n", n},
          {"units_mod_2", units_mod2},
          {"image_order", image},
          {"cokernel", cokernel},
          {"surjective", surjective()},
          {"extra_units", extras},
          {"inverses", inverses}};
}

namespace {

using Mask = unsigned;

Mask rotl(Mask a, int k, int n) {
  Mask full = (1u << n) - 1;
  return k == 0 ? a : ((a << k) | (a >> (n - k))) & full;
}

Mask mul2(Mask a, Mask b, int n) {
  Mask r = 0;
  for (int i = 0; i < n; ++i)
    if (a >> i & 1) r ^= rotl(b, i, n);
  return r;
}

// multiplication by a is invertible over F_2
bool is_unit2(Mask a, int n) {
  std::vector<Mask> rows;
  for (int i = 0; i < n; ++i) rows.push_back(rotl(a, i, n));
  int rank = 0;
  for (int bit = 0; bit < n; ++bit) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (rows[r] >> bit & 1) piv = r;
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < n; ++r)
      if (r != rank && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank == n;
}

Mask reduce2(const GroupRingElt& u) {
  Mask m = 0;
  for (int i = 0; i < u.n; ++i)
    if (mpz_odd_p(u.c[i].get_mpz_t())) m |= 1u << i;
  return m;
}

Mask pow2(Mask a, long e, int n) {
  Mask r = 1;
  while (e > 0) {
    if (e & 1) r = mul2(r, a, n);
    a = mul2(a, a, n);
    e >>= 1;
  }
  return r;
}

}  // namespace

UnitImageReport unit_image_check(int n, const std::vector<GroupRingElt>& extras) {
  if (n < 1 || n % 2 == 0) throw InvalidArgument("n must be odd and positive");
  if (n > kMaxUnitCheckN) throw SizeLimit("unit check limited to n <= " + std::to_string(kMaxUnitCheckN));
  UnitImageReport rep;
  rep.n = n;
  std::vector<Mask> gens{rotl(1, 1 % n, n)};  // image of x; -1 maps to 1
  for (const auto& u : extras) {
    if (u.n != n) throw InvalidArgument("extra unit lives in a different group ring");
    GroupRingElt inv = unit_inverse(u);
    rep.extras.push_back(u.to_string());
    rep.inverses.push_back(inv.to_string());
    gens.push_back(reduce2(u));
  }
  Mask total = 1u << n;
  std::vector<Mask> units;
  for (Mask a = 1; a < total; ++a)
    if (is_unit2(a, n)) units.push_back(a);
  rep.units_mod2 = static_cast<long>(units.size());

  std::vector<char> inH(total, 0);
  std::vector<Mask> H{1};
  inH[1] = 1;
  for (size_t i = 0; i < H.size(); ++i)
    for (Mask g : gens) {
      Mask y = mul2(H[i], g, n);
      if (!inH[y]) {
        inH[y] = 1;
        H.push_back(y);
      }
    }
  rep.image = static_cast<long>(H.size());
  long q = rep.units_mod2 / rep.image;

  // p-parts of the quotient from the sizes of its p^k-torsion
  std::vector<long> cyc;
  for (auto [p, e] : factorize(q)) {
    std::vector<int> c{0};
    while (c.back() < e) {
      long pk = ipow64(p, static_cast<int>(c.size()));
      long cnt = 0;
      for (Mask u : units) cnt += inH[pow2(u, pk, n)];
      long sz = cnt / rep.image;
      int lg = 0;
      while (sz > 1) {
        sz /= p;
        ++lg;
      }
      c.push_back(lg);
    }
    c.push_back(e);
    for (size_t k = 1; k + 1 < c.size(); ++k) {
      int at_least = c[k] - c[k - 1], at_least_next = c[k + 1] - c[k];
      for (int t = 0; t < at_least - at_least_next; ++t) cyc.push_back(ipow64(p, static_cast<int>(k)));
    }
  }
  // invariant factors
  std::map<long, std::vector<long>> by_prime;
  for (long o : cyc) by_prime[factorize(o).front().first].push_back(o);
  size_t len = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.rbegin(), v.rend());
    len = std::max(len, v.size());
  }
  rep.cokernel.assign(len, 1);
  for (auto& [p, v] : by_prime)
    for (size_t i = 0; i < v.size(); ++i) rep.cokernel[i] *= v[i];
  std::reverse(rep.cokernel.begin(), rep.cokernel.end());
  return rep;
}

}  // namespace kbg::cyclo
