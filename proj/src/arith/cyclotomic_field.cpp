#include "kbg/arith/cyclotomic_field.hpp"

#include "kbg/arith/poly.hpp"

namespace kbg {

std::shared_ptr<const CycloContext> make_cyclo_context(int order) {
  if (order < 1) throw InvalidArgument("cyclotomic order must be positive");
  auto ctx = std::make_shared<CycloContext>();
  ctx->order = order;
  IntPoly phi = cyclotomic_poly(order);
  ctx->degree = phi.degree();
  ctx->minpoly = phi.coeffs();
  ctx->powers.resize(order);
  for (int k = 0; k < order; ++k) {
    auto rem = IntPoly::monomial(k).divmod_monic(phi).second;
    std::vector<BigInt> v(ctx->degree);
    for (int i = 0; i <= rem.degree(); ++i) v[i] = rem.coeff(i);
    ctx->powers[k] = std::move(v);
  }
  return ctx;
}

}  // namespace kbg
