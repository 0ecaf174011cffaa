#include "lifshitz_cp/reflection.hpp"

#include <cmath>
#include <limits>

#include "lifshitz_cp/errors.hpp"
#include "lifshitz_cp/reflection_math.hpp"

namespace lcp {

namespace {

void require_permittivity(double eps, const char* what) {
  if (!(eps >= 1.0)) throw DomainError(std::string(what) + ": permittivity must be >= 1");
}

}  // namespace

FrequencyPoint FrequencyPoint::at_offset(std::size_t l, double zeta, double t) {
  return FrequencyPoint{zeta, zeta + t, l};
}

void FrequencyPoint::validate() const {
  if (!(zeta >= 0.0) || !std::isfinite(zeta)) throw DomainError("frequency point: zeta must be >= 0");
  if (!(y >= zeta) || !std::isfinite(y)) throw DomainError("frequency point: y must be >= zeta");
  if ((l == 0) != (zeta == 0.0))
    throw DomainError("frequency point: l == 0 must coincide with zeta == 0");
}

void ScreeningContext::validate() const {
  // Any of these would make eta_tilde complex or the coefficient undefined.
  if (!(eps >= 1.0)) throw DomainError("screening context: eps must be >= 1 (eta_tilde non-real)");
  if (!(delta >= 0.0) || std::isinf(delta))
    throw DomainError("screening context: dc addition must be finite and >= 0 (eta_tilde non-real)");
  if (!(kappa_a >= 0.0)) throw DomainError("screening context: kappa_a must be >= 0 (eta_tilde non-real)");
  if (!(eps0 >= 1.0) || std::isinf(eps0))
    throw DomainError("screening context: eps0 must be finite and >= 1");
}

ReflectionPair standard_pair(double eps, const FrequencyPoint& point) {
  point.validate();
  require_permittivity(eps, "standard_pair");
  if (point.l == 0) {
    if (std::isinf(eps)) return {1.0, 0.0};
    return {(eps - 1.0) / (eps + 1.0), 0.0};
  }
  if (std::isinf(eps)) return {1.0, -1.0};
  const auto r = detail::standard_coefficients(point.zeta, point.offset(), eps);
  return {r.tm, r.te};
}

double eta_tilde(const ScreeningContext& ctx, const FrequencyPoint& point) {
  ctx.validate();
  point.validate();
  if (ctx.delta == 0.0 || std::isinf(ctx.kappa_a)) return std::numeric_limits<double>::infinity();
  const double t = point.offset();
  const double u = t * (t + 2.0 * point.zeta);
  const double m = ctx.kappa_a * ctx.kappa_a * ctx.eps0 * ctx.eps_tilde() / (ctx.eps * ctx.delta);
  return std::sqrt(u + m);
}

double modified_tm(const ScreeningContext& ctx, const FrequencyPoint& point) {
  ctx.validate();
  point.validate();
  if (point.l == 0) {
    if (std::isinf(ctx.kappa_a)) return 1.0;
    if (ctx.kappa_a == 0.0) return (ctx.eps0 - 1.0) / (ctx.eps0 + 1.0);
    return detail::static_screened_tm(point.y, ctx.eps0, ctx.kappa_a);
  }
  const double eps_t = ctx.eps_tilde();
  if (ctx.delta == 0.0 || std::isinf(ctx.kappa_a)) return standard_pair(eps_t, point).r_tm;
  const double m = ctx.kappa_a * ctx.kappa_a * ctx.eps0 * eps_t / (ctx.eps * ctx.delta);
  return detail::modified_tm_coefficient(point.zeta, point.offset(), ctx.eps, eps_t, ctx.delta, m,
                                         ctx.kappa_a == 0.0);
}

double modified_te(double eps_tilde, const FrequencyPoint& point) {
  point.validate();
  require_permittivity(eps_tilde, "modified_te");
  if (point.l == 0) return 0.0;
  return standard_pair(eps_tilde, point).r_te;
}

double expand_tm_dielectric(double eps, double beta, const FrequencyPoint& point) {
  if (!(beta >= 0.0 && beta < 0.1)) throw DomainError("expand_tm_dielectric: beta must lie in [0, 0.1)");
  if (point.l == 0) throw DomainError("expand_tm_dielectric: defined for l >= 1 only");
  const double r = standard_pair(eps, point).r_tm;
  if (beta == 0.0) return r;
  const double y = point.y;
  const double z2 = point.zeta * point.zeta;
  const double s = std::sqrt(y * y + z2 * (eps - 1.0));
  const double p = eps * y + s;
  return r + beta * y * (2.0 * y * y + (eps - 2.0) * z2) / (s * p * p);
}

double expand_te_dielectric(double eps, double beta, const FrequencyPoint& point) {
  if (!(beta >= 0.0 && beta < 0.1)) throw DomainError("expand_te_dielectric: beta must lie in [0, 0.1)");
  if (point.l == 0) throw DomainError("expand_te_dielectric: defined for l >= 1 only");
  const double r = standard_pair(eps, point).r_te;
  if (beta == 0.0) return r;
  const double y = point.y;
  const double z2 = point.zeta * point.zeta;
  const double s = std::sqrt(y * y + z2 * (eps - 1.0));
  const double p = y + s;
  return r - beta * z2 * y / (s * p * p);
}

double metal_z_factor(const ScreeningContext& ctx, const FrequencyPoint& point) {
  ctx.validate();
  point.validate();
  const double eps_t = ctx.eps_tilde();
  const double y = point.y;
  const double t = point.offset();
  const double u = t * (t + 2.0 * point.zeta);
  const double s = std::sqrt(y * y + point.zeta * point.zeta * (eps_t - 1.0));
  const double p = eps_t * y + s;
  const double pref = std::sqrt(eps_t * ctx.delta * ctx.delta * ctx.delta / (ctx.eps0 * ctx.eps));
  return pref * y * u / (p * p);
}

double expand_tm_metal(const ScreeningContext& ctx, double beta_a, const FrequencyPoint& point) {
  if (!(beta_a >= 0.0 && beta_a < 0.05)) throw DomainError("expand_tm_metal: beta_a must lie in [0, 0.05)");
  if (point.l == 0) throw DomainError("expand_tm_metal: defined for l >= 1 only");
  const double r = standard_pair(ctx.eps_tilde(), point).r_tm;
  if (beta_a == 0.0) return r;
  return r - 2.0 * beta_a * metal_z_factor(ctx, point);
}

}  // namespace lcp
