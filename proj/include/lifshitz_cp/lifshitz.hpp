#pragma once

// Casimir-Polder free energy of an atom near a wall from the Lifshitz formula,
// the entropy by temperature differentiation, and the T = 0 energy.
//
// The computed object is the reduced free energy
//   Phi = -8 a^3 F / (k_B T) = sum'_l alpha(i omega_c zeta_l) I_l,
//   I_l = int_{zeta_l}^inf dy e^{-y} [(2y^2 - zeta_l^2) r_tm - zeta_l^2 r_te],
// with the l = 0 term halved.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lifshitz_cp/reflection.hpp"
#include "lifshitz_cp/response.hpp"

namespace lcp {

struct EvaluationPoint {
  double a = 0.0;  // cm
  double T = 0.0;  // K

  double omega_c() const;  // c / 2a, rad/s
  double T_eff() const;    // hbar omega_c / k_B, K
  double tau() const;      // 2 pi T / T_eff
  double zeta(std::size_t l) const { return static_cast<double>(l) * tau(); }
  void validate() const;
};

struct QuadratureSpec {
  double tolerance = 1e-10;          // relative
  std::size_t max_terms = 4'000'000;  // Matsubara budget
  std::size_t max_subdivisions = 400;  // adaptive bisections per inner integral
  double entropy_step = 0.25;         // central-difference step as a fraction of T
  double entropy_step_cap = 4e-3;     // upper bound on that step as a fraction of T_eff
  unsigned threads = 0;               // 0: LIFSHITZ_CP_THREADS or hardware concurrency

  void validate() const;
};

struct EntropyAudit {
  double step = 0.0;            // h in K
  double richardson_h = 0.0;    // dF/dT from steps (h, h/2)
  double richardson_h2 = 0.0;   // dF/dT from steps (h/2, h/4)
  double inconsistency = 0.0;   // |difference| in erg/K
  double allowed = 0.0;         // 100 tol |F| / T
};

struct Diagnostics {
  std::size_t l_max = 0;          // highest Matsubara index summed
  double zeta_cut = 0.0;
  double truncation_bound = 0.0;  // bound on the neglected tail, relative to |Phi|
  double quadrature_error = 0.0;  // summed per-term estimates, relative to |Phi|
  std::vector<double> term_errors;  // per-term absolute estimates, reduced units (cm^3)
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  std::string kernel;
  std::optional<EntropyAudit> entropy;
};

struct ComputationResult {
  double free_energy = 0.0;  // erg
  std::optional<double> entropy;    // erg/K
  std::optional<double> energy_T0;  // erg
  double reduced = 0.0;  // Phi (finite T) or int_0^inf alpha I dzeta (T = 0), cm^3
  Diagnostics diagnostics;
};

/// zeta_l = l tau for l = 0..l_max.
std::vector<double> matsubara_grid(const EvaluationPoint& pt, std::size_t l_max);

ComputationResult free_energy(const WallModel& wall, const AtomModel& atom, const EvaluationPoint& pt,
                              const QuadratureSpec& q = {});
/// -dF/dT by central differences with Richardson extrapolation. The result
/// also carries F at pt.
ComputationResult entropy(const WallModel& wall, const AtomModel& atom, const EvaluationPoint& pt,
                          const QuadratureSpec& q = {});
/// Continuum (T -> 0) limit of the Matsubara sum; the wall is taken in its
/// T -> 0 state.
ComputationResult energy_T0(const WallModel& wall, const AtomModel& atom, double a,
                            const QuadratureSpec& q = {});

/// Single term alpha_l I_l (unhalved) in cm^3, and its integral I_l alone.
struct TermValue {
  double alpha = 0.0;
  double integral = 0.0;
  double error = 0.0;
};
TermValue matsubara_term(const WallModel& wall, const AtomModel& atom, const EvaluationPoint& pt,
                         std::size_t l, const QuadratureSpec& q = {});

/// Reflection coefficients the sum uses for this wall at (pt, l, y).
ReflectionPair wall_coefficients(const WallModel& wall, const EvaluationPoint& pt, std::size_t l,
                                 double y);

/// Prefactor k_B T / (8 a^3): F = -prefactor * Phi.
double thermal_prefactor(const EvaluationPoint& pt);

}  // namespace lcp
