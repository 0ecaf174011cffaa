#pragma once

// Closed-form low-temperature laws and T -> 0 entropy limits, used as
// references for the numerical pipeline. x = T / T_eff throughout.

#include "lifshitz_cp/lifshitz.hpp"
#include "lifshitz_cp/response.hpp"

namespace lcp {

struct AsymptoticCoefficients {
  /// Tabulated C(eps0); throws DomainError for any eps0 not in the table.
  static double C(double eps0);
  static bool has(double eps0);
  /// (eps0 - 1)/(eps0 + 1); 1 for eps0 = inf.
  static double r0(double eps0);
};

enum class CarrierClass { VanishingN, PersistentN };

/// E(a) - (hbar c pi^3 / 240 a^4) alpha(0) C(eps0) x^4, given E(a) in erg.
double dielectric_free_energy_asym(double eps0, const AtomModel& atom, const EvaluationPoint& pt,
                                   double energy_T0);
/// (pi^3 k_B / 30 a^3) alpha(0) C(eps0) x^3.
double dielectric_entropy_asym(double eps0, const AtomModel& atom, const EvaluationPoint& pt);

/// -(k_B T / 4 a^3)(1 - r0) alpha(0).
double dc_free_energy_correction(double eps0, const AtomModel& atom, const EvaluationPoint& pt);
/// k_B (1 - r0) alpha(0) / (4 a^3).
double dc_entropy_limit(double eps0, const AtomModel& atom, double a);

struct MetalAsymptotics {
  double free_energy;  // erg
  double entropy;      // erg/K
};
/// Ideal-metal laws: F = E(a) - (hbar c pi^3 / 360 a^4) alpha(0) x^4 and
/// S = (pi^3 k_B / 45 a^3) alpha(0) x^3. skin_ratio is delta_0 / a of the
/// wall being compared (must not exceed 0.01).
MetalAsymptotics metal_asym(const AtomModel& atom, const EvaluationPoint& pt, double energy_T0,
                            double skin_ratio = 0.0);

/// 0 for vanishing carrier density, dc_entropy_limit otherwise.
double screened_entropy_limit(double eps0, const AtomModel& atom, double a, CarrierClass cls);
/// S^mod(a, 0) for a screened metal: zero.
double screened_metal_check(const AtomModel& atom, const EvaluationPoint& pt);

}  // namespace lcp
