#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kbg/arith/bigint.hpp"
#include "kbg/errors.hpp"

namespace kbg {

// Data for Q(zeta_N): the minimal polynomial and the reduction of every power
// zeta^k, 0 <= k < N, in the power basis 1, zeta, ..., zeta^(phi(N)-1).
struct CycloContext {
  int order = 1;
  int degree = 1;
  std::vector<BigInt> minpoly;
  std::vector<std::vector<BigInt>> powers;
};

std::shared_ptr<const CycloContext> make_cyclo_context(int order);

// Element of Z[zeta_N] (Coeff = BigInt) or Q(zeta_N) (Coeff = BigRat).
template <class Coeff>
class Cyclo {
 public:
  Cyclo() = default;
  explicit Cyclo(std::shared_ptr<const CycloContext> ctx, const Coeff& c = Coeff(0))
      : ctx_(std::move(ctx)), c_(ctx_->degree) {
    c_[0] = c;
  }
  static Cyclo zeta_power(std::shared_ptr<const CycloContext> ctx, long k) {
    Cyclo r(ctx);
    const auto& p = ctx->powers[((k % ctx->order) + ctx->order) % ctx->order];
    for (int i = 0; i < ctx->degree; ++i) r.c_[i] = p[i];
    return r;
  }

  const std::shared_ptr<const CycloContext>& context() const { return ctx_; }
  int order() const { return ctx_->order; }
  const std::vector<Coeff>& coeffs() const { return c_; }

  bool is_rational() const {
    for (int i = 1; i < ctx_->degree; ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  const Coeff& rational_part() const { return c_[0]; }
  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }

  Cyclo operator+(const Cyclo& o) const {
    check(o);
    Cyclo r(*this);
    for (int i = 0; i < ctx_->degree; ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Cyclo operator-(const Cyclo& o) const {
    check(o);
    Cyclo r(*this);
    for (int i = 0; i < ctx_->degree; ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Cyclo operator-() const {
    Cyclo r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Cyclo operator*(const Coeff& s) const {
    Cyclo r(*this);
    for (auto& x : r.c_) x *= s;
    return r;
  }
  Cyclo operator*(const Cyclo& o) const {
    check(o);
    int d = ctx_->degree;
    std::vector<Coeff> prod(2 * d - 1, Coeff(0));
    for (int i = 0; i < d; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    Cyclo r(ctx_);
    for (int k = 0; k < 2 * d - 1; ++k) {
      if (prod[k] == 0) continue;
      if (k < d) {
        r.c_[k] += prod[k];
        continue;
      }
      const auto& p = ctx_->powers[k % ctx_->order];
      for (int i = 0; i < d; ++i) r.c_[i] += prod[k] * Coeff(p[i]);
    }
    return r;
  }
  Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
  Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
  bool operator==(const Cyclo& o) const { return ctx_->order == o.ctx_->order && c_ == o.c_; }
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  // Field automorphism zeta -> zeta^a, gcd(a, N) = 1.
  Cyclo galois(long a) const {
    Cyclo r(ctx_);
    for (int i = 0; i < ctx_->degree; ++i) {
      if (c_[i] == 0) continue;
      long k = ((a * i) % ctx_->order + ctx_->order) % ctx_->order;
      const auto& p = ctx_->powers[k];
      for (int j = 0; j < ctx_->degree; ++j) r.c_[j] += c_[i] * Coeff(p[j]);
    }
    return r;
  }
  Cyclo conj() const { return galois(-1); }

  std::string to_string() const {
    std::string out;
    for (int i = ctx_->degree - 1; i >= 0; --i) {
      if (c_[i] == 0) continue;
      std::string cs = c_[i].get_str();
      if (!out.empty() && cs[0] != '-') out += "+";
      if (i == 0) {
        out += cs;
        continue;
      }
      if (cs == "-1")
        out += "-";
      else if (cs != "1")
        out += cs + "*";
      out += "z";
      if (i > 1) out += "^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    if (ctx_->degree > 1) out += " [z=zeta_" + std::to_string(ctx_->order) + "]";
    return out;
  }

 private:
  void check(const Cyclo& o) const {
    if (ctx_->order != o.ctx_->order) throw InvalidArgument("cyclotomic orders differ");
  }
  std::shared_ptr<const CycloContext> ctx_;
  std::vector<Coeff> c_;
};

using CycloInt = Cyclo<BigInt>;
using CycloRat = Cyclo<BigRat>;

}  // namespace kbg
