#include "kbg/reps/character.hpp"

#include "kbg/errors.hpp"

namespace kbg::reps {

VirtualCharacter::VirtualCharacter(GroupPtr g, std::vector<CycloInt> values) : g_(std::move(g)), v_(std::move(values)) {
  if (v_.size() != g_->classes().size()) throw InvalidArgument("one value per conjugacy class expected");
  for (const auto& x : v_)
    if (x.order() != std::max(g_->exponent(), 1)) throw InvalidArgument("character values in the wrong cyclotomic ring");
}

namespace {

std::shared_ptr<const CycloContext> ctx_for(const FinGroup& g) { return make_cyclo_context(std::max(g.exponent(), 1)); }

}  // namespace

VirtualCharacter VirtualCharacter::constant(GroupPtr g, long k) {
  auto ctx = ctx_for(*g);
  std::vector<CycloInt> v(g->classes().size(), CycloInt(ctx, BigInt(k)));
  return VirtualCharacter(std::move(g), std::move(v));
}

VirtualCharacter VirtualCharacter::from_integers(GroupPtr g, const std::vector<long>& values) {
  auto ctx = ctx_for(*g);
  std::vector<CycloInt> v;
  for (long x : values) v.emplace_back(ctx, BigInt(x));
  return VirtualCharacter(std::move(g), std::move(v));
}

VirtualCharacter VirtualCharacter::permutation(GroupPtr g) {
  if (!g->has_permutations()) throw InvalidArgument("permutation character needs a permutation group");
  std::vector<long> vals;
  for (const auto& cls : g->classes()) {
    const Perm& p = g->perm(cls.front());
    long fixed = 0;
    for (size_t x = 0; x < p.size(); ++x) fixed += p[x] == static_cast<int>(x);
    vals.push_back(fixed);
  }
  return from_integers(std::move(g), vals);
}

VirtualCharacter VirtualCharacter::regular(GroupPtr g) {
  std::vector<long> vals;
  for (const auto& cls : g->classes()) vals.push_back(cls.front() == g->identity() ? g->order() : 0);
  return from_integers(std::move(g), vals);
}

VirtualCharacter VirtualCharacter::linear(GroupPtr g, const std::vector<long>& k) {
  if (static_cast<int>(k.size()) != g->order()) throw InvalidArgument("one exponent per element expected");
  auto ctx = ctx_for(*g);
  int e = std::max(g->exponent(), 1);
  for (int a = 0; a < g->order(); ++a)
    for (int b = 0; b < g->order(); ++b)
      if (((k[a] + k[b] - k[g->mul(a, b)]) % e + e) % e != 0) throw NotARepresentation("exponents are not a homomorphism");
  std::vector<CycloInt> v;
  for (const auto& cls : g->classes()) v.push_back(CycloInt::zeta_power(ctx, k[cls.front()]));
  return VirtualCharacter(std::move(g), std::move(v));
}

BigInt VirtualCharacter::degree() const {
  const auto& v = at(g_->identity());
  if (!v.is_rational()) throw InvalidArgument("value at identity is not rational");
  return v.rational_part();
}

bool VirtualCharacter::is_rational() const {
  for (const auto& x : v_)
    if (!x.is_rational()) return false;
  return true;
}

namespace {

void same_group(const GroupPtr& a, const GroupPtr& b) {
  if (a.get() != b.get()) throw InvalidArgument("characters of different groups");
}

}  // namespace

VirtualCharacter VirtualCharacter::operator+(const VirtualCharacter& o) const {
  same_group(g_, o.g_);
  auto r = *this;
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
  return r;
}

VirtualCharacter VirtualCharacter::operator-(const VirtualCharacter& o) const {
  same_group(g_, o.g_);
  auto r = *this;
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
  return r;
}

VirtualCharacter VirtualCharacter::operator-() const {
  auto r = *this;
  for (auto& x : r.v_) x = -x;
  return r;
}

VirtualCharacter VirtualCharacter::operator*(const VirtualCharacter& o) const {
  same_group(g_, o.g_);
  auto r = *this;
  for (size_t i = 0; i < v_.size(); ++i) r.v_[i] *= o.v_[i];
  return r;
}

VirtualCharacter VirtualCharacter::operator*(long s) const {
  auto r = *this;
  for (auto& x : r.v_) x = x * BigInt(s);
  return r;
}

bool VirtualCharacter::operator==(const VirtualCharacter& o) const { return g_.get() == o.g_.get() && v_ == o.v_; }

VirtualCharacter VirtualCharacter::adams(long k) const {
  auto r = *this;
  for (size_t c = 0; c < v_.size(); ++c) r.v_[c] = v_[g_->class_power(static_cast<int>(c), k)];
  return r;
}

std::vector<VirtualCharacter> VirtualCharacter::lambda_series(int N) const {
  if (N < 0) throw InvalidArgument("lambda index must be non-negative");
  std::vector<VirtualCharacter> lam{constant(g_, 1)};
  std::vector<VirtualCharacter> psi{constant(g_, 0)};
  for (int j = 1; j <= N; ++j) psi.push_back(adams(j));
  for (int i = 1; i <= N; ++i) {
    VirtualCharacter s = constant(g_, 0);
    for (int j = 1; j <= i; ++j) {
      auto term = lam[i - j] * psi[j];
      s = j % 2 == 1 ? s + term : s - term;
    }
    for (auto& x : s.v_) {
      std::vector<BigInt> c = x.coeffs();
      CycloInt acc(x.context());
      for (size_t k = 0; k < c.size(); ++k) {
        BigInt quo;
        if (!divides_exactly(c[k], BigInt(i), quo))
          throw NonIntegral("lambda^" + std::to_string(i) + ": Newton division is not exact");
        if (quo != 0) acc += CycloInt::zeta_power(x.context(), static_cast<long>(k)) * quo;
      }
      x = acc;
    }
    lam.push_back(std::move(s));
  }
  return lam;
}

VirtualCharacter VirtualCharacter::lambda(int i) const { return lambda_series(i).back(); }

BigRat VirtualCharacter::inner(const VirtualCharacter& o) const {
  same_group(g_, o.g_);
  CycloInt s(v_.front().context());
  for (size_t c = 0; c < v_.size(); ++c)
    s += v_[c] * o.v_[c].conj() * BigInt(static_cast<long>(g_->classes()[c].size()));
  if (!s.is_rational()) throw NonIntegral("inner product is not rational");
  BigRat r(s.rational_part(), BigInt(g_->order()));
  r.canonicalize();
  return r;
}

std::string VirtualCharacter::to_string() const {
  std::string out = "(";
  for (size_t c = 0; c < v_.size(); ++c) {
    std::string s = v_[c].to_string();
    auto cut = s.find(" [");
    if (cut != std::string::npos) s = s.substr(0, cut);
    out += (c ? ", " : "") + s;
  }
  out += ")";
  if (!is_rational()) out += " [z=zeta_" + std::to_string(g_->exponent()) + "]";
  return out;
}

nlohmann::json VirtualCharacter::to_json() const {
  nlohmann::json vals = nlohmann::json::array();
  for (const auto& x : v_) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : x.coeffs()) cs.push_back(c.get_str());
    vals.push_back(cs);
  }
  nlohmann::json reps = nlohmann::json::array();
  for (const auto& cls : g_->classes()) reps.push_back(g_->label(cls.front()));
  return {{"group", g_->name()},
          {"exponent", g_->exponent()},
          {"class_representatives", reps},
          {"values", vals},
          {"text", to_string()}};
}

std::vector<IntMatrix> extend_representation(const FinGroup& g, const std::vector<IntMatrix>& gen) {
  const auto& gens = g.generators();
  if (gen.size() != gens.size())
    throw NotARepresentation("expected " + std::to_string(gens.size()) + " generator matrices");
  int d = gen.empty() ? 0 : gen.front().rows();
  for (const auto& m : gen)
    if (m.rows() != d || m.cols() != d) throw NotARepresentation("generator matrices must be square of equal size");
  std::vector<IntMatrix> mats(g.order());
  std::vector<char> set(g.order(), 0);
  mats[g.identity()] = IntMatrix::identity(d);
  set[g.identity()] = 1;
  std::vector<int> queue{g.identity()};
  for (size_t i = 0; i < queue.size(); ++i) {
    int x = queue[i];
    for (size_t k = 0; k < gens.size(); ++k) {
      int h = g.mul(gens[k], x);
      IntMatrix m = gen[k] * mats[x];
      if (!set[h]) {
        set[h] = 1;
        mats[h] = std::move(m);
        queue.push_back(h);
      } else if (mats[h] != m) {
        throw NotARepresentation("generator matrices violate a relation of the group");
      }
    }
  }
  return mats;
}

VirtualCharacter character_of_lattice(GroupPtr g, const std::vector<IntMatrix>& gen_matrices) {
  auto mats = extend_representation(*g, gen_matrices);
  std::vector<long> vals;
  for (const auto& cls : g->classes()) vals.push_back(mats[cls.front()].trace().get_si());
  return VirtualCharacter::from_integers(g, vals);
}

std::vector<VirtualCharacter> multiply_series(const std::vector<VirtualCharacter>& a,
                                              const std::vector<VirtualCharacter>& b, int N) {
  std::vector<VirtualCharacter> out;
  GroupPtr g = a.front().group();
  for (int n = 0; n <= N; ++n) {
    VirtualCharacter s = VirtualCharacter::constant(g, 0);
    for (int i = 0; i <= n; ++i)
      if (i < static_cast<int>(a.size()) && n - i < static_cast<int>(b.size())) s = s + a[i] * b[n - i];
    out.push_back(s);
  }
  return out;
}

}  // namespace kbg::reps
