#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include "kbg/arith/numtheory.hpp"
#include "kbg/cyclotomic/cyclotomic.hpp"
#include "kbg/errors.hpp"

namespace kbg::cyclo {

namespace {

long mod(long a, long m) { return ((a % m) + m) % m; }

int lambda_of(long m) { return static_cast<int>(m <= 2 ? 1 : carmichael(m)); }

long primitive_root(long q, long phi) {
  auto f = factorize(phi);
  for (long g = 2; g < q; ++g) {
    if (gcd64(g, q) != 1) continue;
    bool ok = true;
    for (auto [p, e] : f) ok = ok && powmod64(g, phi / p, q) != 1;
    if (ok) return g;
  }
  return 1;
}

// x = r mod q, x = 1 mod m/q
long crt_lift(long r, long q, long m) {
  long rest = m / q;
  if (rest == 1) return mod(r, m);
  long u, v;
  xgcd64(q, rest, u, v);  // u q + v rest = 1
  return mod(r * mod(v * rest, m) + mod(u * q, m), m);
}

}  // namespace

DirichletChar::DirichletChar(long modulus, std::vector<int> exps) : m_(modulus), N_(lambda_of(modulus)), exps_(std::move(exps)) {
  if (m_ < 1 || static_cast<long>(exps_.size()) != m_) throw InvalidArgument("character needs one value per residue");
  for (long a = 0; a < m_; ++a) {
    bool unit = gcd64(a, m_) == 1;
    if (unit != (exps_[a] >= 0)) throw InvalidArgument("character must vanish exactly off the units");
    if (unit) exps_[a] %= N_;
  }
  // the primes below m that are prime to m generate the units
  for (long b = 2; b < m_; ++b) {
    if (!is_prime(b) || exps_[b] < 0) continue;
    for (long a = 1; a < m_; ++a)
      if (exps_[a] >= 0 && exps_[a * b % m_] != (exps_[a] + exps_[b]) % N_)
        throw InvalidArgument("character is not multiplicative");
  }
  for (long f : divisors(m_)) {
    bool trivial = true;
    for (long a = 1; a < m_ && trivial; a += f)
      if (exps_[a] > 0) trivial = false;
    if (f == m_ || trivial) {
      f_ = f;
      break;
    }
  }
}

int DirichletChar::order() const {
  long g = N_;
  for (int e : exps_)
    if (e > 0) g = gcd64(g, e);
  return static_cast<int>(N_ / g);
}

bool DirichletChar::is_odd() const { return m_ > 2 && 2 * exps_[m_ - 1] == N_; }

int DirichletChar::exponent_at(long a) const { return exps_[mod(a, m_)]; }

CycloRat DirichletChar::value(long a) const {
  auto ctx = make_cyclo_context(N_);
  int e = exponent_at(a);
  if (e < 0) return CycloRat(ctx);
  return CycloRat::zeta_power(ctx, e);
}

DirichletChar DirichletChar::primitive() const {
  if (f_ == m_) return *this;
  int Nf = lambda_of(f_);
  int step = N_ / Nf;
  std::vector<int> e(f_, -1);
  for (long b = 0; b < f_; ++b) {
    if (gcd64(b, f_) != 1) continue;
    for (long a = b; a < m_; a += f_)
      if (exps_[a] >= 0) {
        if (exps_[a] % step) throw std::logic_error("character value outside mu_lambda(f)");
        e[b] = exps_[a] / step;
        break;
      }
  }
  return DirichletChar(f_, e);
}

std::string DirichletChar::to_string() const {
  std::string out = "chi mod " + std::to_string(m_) + " (conductor " + std::to_string(f_) + "): ";
  bool first = true;
  for (long a = 1; a < m_; ++a) {
    if (exps_[a] < 0) continue;
    out += (first ? "" : ", ") + std::to_string(a) + "->z" + std::to_string(N_) + "^" + std::to_string(exps_[a]);
    first = false;
  }
  return out;
}

std::vector<DirichletChar> dirichlet_group(long m) {
  if (m < 1) throw InvalidArgument("modulus must be positive");
  if (m > 2000) throw SizeLimit("modulus too large");
  int N = lambda_of(m);
  // cyclic factors (order, generator mod m)
  std::vector<std::pair<long, long>> gens;
  for (auto [p, e] : factorize(m)) {
    long q = ipow64(p, e);
    if (p == 2) {
      if (e >= 2) gens.emplace_back(2, crt_lift(q - 1, q, m));
      if (e >= 3) gens.emplace_back(q / 4, crt_lift(5, q, m));
    } else {
      long phi = q / p * (p - 1);
      gens.emplace_back(phi, crt_lift(primitive_root(q, phi), q, m));
    }
  }
  // discrete logs of every unit
  std::vector<std::vector<long>> logs(m);
  std::vector<long> idx(gens.size(), 0);
  while (true) {
    long a = 1 % m;
    for (size_t i = 0; i < gens.size(); ++i) a = a * powmod64(gens[i].second, idx[i], m) % m;
    logs[a] = idx;
    size_t i = 0;
    while (i < idx.size() && ++idx[i] == gens[i].first) idx[i++] = 0;
    if (i == idx.size()) break;
  }
  std::vector<DirichletChar> out;
  std::vector<long> j(gens.size(), 0);
  while (true) {
    std::vector<int> exps(m, -1);
    for (long a = 0; a < m; ++a) {
      if (gcd64(a, m) != 1) continue;
      long s = 0;
      for (size_t i = 0; i < gens.size(); ++i) s += j[i] * logs[a][i] * (N / gens[i].first);
      exps[a] = static_cast<int>(s % N);
    }
    out.emplace_back(m, exps);
    size_t i = 0;
    while (i < j.size() && ++j[i] == gens[i].first) j[i++] = 0;
    if (i == j.size()) break;
  }
  return out;
}

namespace {

CycloRat b1_in(const DirichletChar& chi, const std::shared_ptr<const CycloContext>& ctx) {
  if (!chi.is_odd()) throw EvenCharacter("B_1 is only taken for odd characters");
  DirichletChar p = chi.primitive();
  long f = p.modulus();
  int step = ctx->order / p.value_order();
  CycloRat s(ctx);
  for (long a = 1; a <= f; ++a) {
    int e = p.exponent_at(a);
    if (e < 0) continue;
    s += CycloRat::zeta_power(ctx, static_cast<long>(e) * step) * BigRat(a);
  }
  return s * BigRat(1, f);
}

bool is_prime_power(long m) {
  long p;
  int k;
  return prime_power(m, p, k);
}

// complex ball: |z - mid| <= rad
struct Ball {
  std::complex<long double> mid;
  long double rad = 0;
};

constexpr long double kEps = 8 * std::numeric_limits<long double>::epsilon();

Ball operator+(const Ball& a, const Ball& b) {
  Ball r{a.mid + b.mid, a.rad + b.rad};
  r.rad += kEps * std::abs(r.mid);
  return r;
}

Ball operator*(const Ball& a, const Ball& b) {
  Ball r{a.mid * b.mid, 0};
  r.rad = std::abs(a.mid) * b.rad + std::abs(b.mid) * a.rad + a.rad * b.rad + kEps * std::abs(r.mid);
  return r;
}

Ball zeta(long k, long N) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double t = 2 * pi * static_cast<long double>(k % N) / static_cast<long double>(N);
  return {{std::cos(t), std::sin(t)}, kEps};
}

}  // namespace

CycloRat bernoulli_b1(const DirichletChar& chi) {
  return b1_in(chi, make_cyclo_context(chi.primitive().value_order()));
}

const std::vector<long>& triviality_list() {
  static const std::vector<long> list{1,  3,  4,  5,  7,  8,  9,  11, 12, 13, 15, 16, 17, 19, 20,
                                      21, 24, 25, 27, 28, 32, 33, 35, 36, 40, 44, 45, 48, 60, 84};
  return list;
}

nlohmann::json HMinusReport::to_json() const {
  return {{"m", m},
          {"field_conductor", field_m},
          {"h_minus", h_minus.get_str()},
          {"Q", q_index},
          {"w", roots_of_unity},
          {"odd_characters", odd_characters},
          {"galois_fixed", galois_fixed},
          {"oracle", {{"mid", oracle_mid}, {"radius", oracle_radius}}},
          {"b1", b1}};
}

HMinusReport h_minus_report(long m) {
  if (m < 1) throw InvalidArgument("conductor must be positive");
  if (m > kMaxHMinusConductor) throw SizeLimit("h_minus is limited to m <= " + std::to_string(kMaxHMinusConductor));
  HMinusReport rep;
  rep.m = m;
  rep.field_m = m % 4 == 2 ? m / 2 : m;
  long fm = rep.field_m;
  if (fm <= 2) {
    rep.h_minus = 1;
    rep.galois_fixed = true;
    rep.oracle_mid = 1;
    return rep;
  }
  rep.q_index = is_prime_power(fm) ? 1 : 2;
  rep.roots_of_unity = fm % 2 == 0 ? fm : 2 * fm;
  auto ctx = make_cyclo_context(lambda_of(fm));
  CycloRat prod(ctx, BigRat(1));
  for (const auto& chi : dirichlet_group(fm)) {
    if (!chi.is_odd()) continue;
    ++rep.odd_characters;
    CycloRat b = b1_in(chi, ctx);
    rep.b1.push_back(b.to_string());
    prod *= b * BigRat(-1, 2);
  }
  if (rep.odd_characters != euler_phi(fm) / 2) throw std::logic_error("odd character count differs from phi(m)/2");
  rep.galois_fixed = true;
  for (long a = 1; a < ctx->order; ++a)
    if (gcd64(a, ctx->order) == 1 && prod.galois(a) != prod) rep.galois_fixed = false;
  if (!rep.galois_fixed || !prod.is_rational()) throw NonIntegral("Bernoulli product is not rational");
  BigRat h = prod.rational_part() * BigRat(rep.q_index * rep.roots_of_unity);
  if (h.get_den() != 1 || h <= 0) throw NonIntegral("relative class number came out as " + h.get_str());
  rep.h_minus = h.get_num();
  auto [mid, rad] = h_minus_oracle(m);
  rep.oracle_mid = mid;
  rep.oracle_radius = rad;
  return rep;
}

std::pair<double, double> h_minus_oracle(long m) {
  long fm = m % 4 == 2 ? m / 2 : m;
  if (fm <= 2) return {1.0, 0.0};
  Ball prod{{1.0L, 0.0L}, 0};
  for (const auto& chi : dirichlet_group(fm)) {
    if (!chi.is_odd()) continue;
    DirichletChar p = chi.primitive();
    long f = p.modulus();
    Ball s{{0, 0}, 0};
    for (long a = 1; a <= f; ++a) {
      int e = p.exponent_at(a);
      if (e < 0) continue;
      Ball z = zeta(e, p.value_order());
      s = s + Ball{z.mid * static_cast<long double>(a), z.rad * a};
    }
    // -B/2 = -s / (2f)
    long double scale = -1.0L / (2.0L * f);
    prod = prod * Ball{s.mid * scale, s.rad * std::abs(scale)};
  }
  long double factor = (is_prime_power(fm) ? 1 : 2) * (fm % 2 == 0 ? fm : 2 * fm);
  Ball h{prod.mid * factor, prod.rad * factor};
  return {static_cast<double>(h.mid.real()), static_cast<double>(h.rad + std::abs(h.mid.imag()))};
}

}  // namespace kbg::cyclo
