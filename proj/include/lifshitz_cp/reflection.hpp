#pragma once

// TM/TE reflection coefficients at imaginary Matsubara frequencies, standard
// and screening-modified, with analytic zero-frequency branches.

#include <cstddef>

namespace lcp {

struct FrequencyPoint {
  double zeta = 0.0;  // dimensionless Matsubara frequency
  double y = 0.0;     // integration variable, y >= zeta
  std::size_t l = 0;  // l == 0 <=> zeta == 0

  /// Point at y = zeta + t; keeps t exact for the y ~ zeta region.
  static FrequencyPoint at_offset(std::size_t l, double zeta, double t);
  double offset() const { return y - zeta; }
  void validate() const;
};

struct ReflectionPair {
  double r_tm = 0.0;
  double r_te = 0.0;
};

/// Inputs of the screening-modified TM coefficient at one Matsubara frequency.
struct ScreeningContext {
  double eps = 1.0;      // core permittivity at zeta_l
  double delta = 0.0;    // Drude-like dc addition, eps_tilde - eps
  double kappa_a = 0.0;  // 2 a kappa
  double eps0 = 1.0;     // static core permittivity

  double eps_tilde() const { return eps + delta; }
  void validate() const;
};

ReflectionPair standard_pair(double eps, const FrequencyPoint& point);

/// Auxiliary root eta_tilde of the modified TM coefficient (infinite when delta == 0).
double eta_tilde(const ScreeningContext& ctx, const FrequencyPoint& point);
double modified_tm(const ScreeningContext& ctx, const FrequencyPoint& point);
double modified_te(double eps_tilde, const FrequencyPoint& point);

// First-order expansions, used to cross-check modified_tm.

/// r_tm + beta * d r_tm / d eps: small dc addition beta on a dielectric.
double expand_tm_dielectric(double eps, double beta, const FrequencyPoint& point);
/// r_te + beta * d r_te / d eps.
double expand_te_dielectric(double eps, double beta, const FrequencyPoint& point);
/// r_tm(eps_tilde) - 2 beta_a Z_l with beta_a = 1/kappa_a (metallic screening).
double expand_tm_metal(const ScreeningContext& ctx, double beta_a, const FrequencyPoint& point);
/// The Z_l factor of the metallic expansion.
double metal_z_factor(const ScreeningContext& ctx, const FrequencyPoint& point);

}  // namespace lcp
