#pragma once

// Scalar reference arithmetic for the reflection coefficients and the
// Lifshitz bracket. The AVX2 kernels reproduce these expressions operation for
// operation, so both paths round identically.
//
// Variables: zeta >= 0, t = y - zeta >= 0, u = y^2 - zeta^2 = t (t + 2 zeta).

#include <cmath>

namespace lcp::detail {

struct CoefficientPair {
  double tm;
  double te;
};

// (eps y - s)/(eps y + s) with s = sqrt(y^2 + zeta^2 (eps - 1)), rewritten as
// (eps - 1)((eps + 1) y^2 - zeta^2) / (eps y + s)^2 so nothing cancels near
// y = zeta; likewise (y - s)/(y + s) = -zeta^2 (eps - 1) / (y + s)^2.
inline CoefficientPair standard_coefficients(double zeta, double t, double eps) {
  const double y = zeta + t;
  const double y2 = y * y;
  const double z2 = zeta * zeta;
  const double q = z2 * (eps - 1.0);
  const double s = std::sqrt(y2 + q);
  const double p_tm = eps * y + s;
  const double p_te = y + s;
  const double n_tm = (eps - 1.0) * ((eps + 1.0) * y2 - z2) / p_tm;
  const double n_te = -q / p_te;
  return {n_tm / p_tm, n_te / p_te};
}

// Screening-modified TM coefficient at a nonzero Matsubara frequency.
//   eps        core permittivity
//   eps_tilde  eps + delta (dc-included)
//   m          kappa_a^2 eps0 eps_tilde / (eps delta), the screening part of eta^2
//   kappa_zero m == 0: use D = sqrt(u) delta / eps (avoids 0/0 at y = zeta)
inline double modified_tm_coefficient(double zeta, double t, double eps, double eps_tilde,
                                      double delta, double m, bool kappa_zero) {
  const double y = zeta + t;
  const double y2 = y * y;
  const double z2 = zeta * zeta;
  const double u = t * (t + 2.0 * zeta);
  const double s = std::sqrt(y2 + z2 * (eps_tilde - 1.0));
  const double p = eps_tilde * y + s;
  const double n = (eps_tilde - 1.0) * ((eps_tilde + 1.0) * y2 - z2) / p;
  double d;
  if (kappa_zero) {
    d = std::sqrt(u) * (delta / eps);
  } else {
    const double eta = std::sqrt(u + m);
    d = u * delta / (eta * eps);
  }
  return (n - d) / (p + d);
}

// Zero-frequency screened TM coefficient
// (eps0 w - y)/(eps0 w + y), w = sqrt(y^2 + kappa_a^2), in cancellation-free form.
inline double static_screened_tm(double y, double eps0, double kappa_a) {
  const double w = std::sqrt(y * y + kappa_a * kappa_a);
  const double p = eps0 * w + y;
  const double n = ((eps0 * eps0 - 1.0) * (y * y) + (eps0 * eps0) * (kappa_a * kappa_a)) / p;
  return n / p;
}

// Lifshitz bracket (2y^2 - zeta^2) r_tm - zeta^2 r_te.
inline double bracket(double zeta, double t, double r_tm, double r_te) {
  const double y = zeta + t;
  const double z2 = zeta * zeta;
  return (2.0 * (y * y) - z2) * r_tm - z2 * r_te;
}

}  // namespace lcp::detail
