#include "lifshitz_cp/asymptotics.hpp"

#include <array>
#include <cmath>
#include <string>
#include <utility>

#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"

namespace lcp {

namespace {

constexpr std::array<std::pair<double, double>, 2> kCTable{{{3.81, 2.70}, {11.67, 6.33}}};

void require_low_T(const EvaluationPoint& pt) {
  pt.validate();
  if (!(pt.tau() <= 0.1)) throw DomainError("asymptotic law requires tau <= 0.1, got " + std::to_string(pt.tau()));
}

double x_of(const EvaluationPoint& pt) { return pt.T / pt.T_eff(); }

}  // namespace

bool AsymptoticCoefficients::has(double eps0) {
  for (const auto& [e, c] : kCTable)
    if (std::abs(eps0 - e) <= 1e-9 * e) return true;
  return false;
}

double AsymptoticCoefficients::C(double eps0) {
  for (const auto& [e, c] : kCTable)
    if (std::abs(eps0 - e) <= 1e-9 * e) return c;
  throw DomainError("no tabulated C(eps0) for eps0 = " + std::to_string(eps0) +
                    " (available: 3.81, 11.67)");
}

double AsymptoticCoefficients::r0(double eps0) {
  if (!(eps0 >= 1.0)) throw DomainError("r0: eps0 must be >= 1");
  if (std::isinf(eps0)) return 1.0;
  return (eps0 - 1.0) / (eps0 + 1.0);
}

double dielectric_free_energy_asym(double eps0, const AtomModel& atom, const EvaluationPoint& pt,
                                   double energy_T0) {
  const double C = AsymptoticCoefficients::C(eps0);
  require_low_T(pt);
  const double x = x_of(pt);
  const double a4 = std::pow(pt.a, 4);
  return energy_T0 -
         PhysicalConstants::hbar * PhysicalConstants::c * std::pow(pi, 3) / (240.0 * a4) * atom.alpha0 * C *
             std::pow(x, 4);
}

double dielectric_entropy_asym(double eps0, const AtomModel& atom, const EvaluationPoint& pt) {
  const double C = AsymptoticCoefficients::C(eps0);
  require_low_T(pt);
  const double x = x_of(pt);
  return std::pow(pi, 3) * PhysicalConstants::k_B / (30.0 * std::pow(pt.a, 3)) * atom.alpha0 * C * std::pow(x, 3);
}

double dc_free_energy_correction(double eps0, const AtomModel& atom, const EvaluationPoint& pt) {
  pt.validate();
  const double r0 = AsymptoticCoefficients::r0(eps0);
  return -PhysicalConstants::k_B * pt.T / (4.0 * std::pow(pt.a, 3)) * (1.0 - r0) * atom.alpha0;
}

double dc_entropy_limit(double eps0, const AtomModel& atom, double a) {
  if (!(a > 0.0)) throw DomainError("separation must be > 0");
  const double r0 = AsymptoticCoefficients::r0(eps0);
  return PhysicalConstants::k_B * (1.0 - r0) * atom.alpha0 / (4.0 * std::pow(a, 3));
}

MetalAsymptotics metal_asym(const AtomModel& atom, const EvaluationPoint& pt, double energy_T0,
                            double skin_ratio) {
  require_low_T(pt);
  if (!(skin_ratio >= 0.0 && skin_ratio <= 0.01))
    throw DomainError("metal law requires delta_0 / a <= 0.01, got " + std::to_string(skin_ratio));
  const double x = x_of(pt);
  const double a = pt.a;
  const double p3 = std::pow(pi, 3);
  return {energy_T0 - PhysicalConstants::hbar * PhysicalConstants::c * p3 / (360.0 * std::pow(a, 4)) *
                          atom.alpha0 * std::pow(x, 4),
          p3 * PhysicalConstants::k_B / (45.0 * std::pow(a, 3)) * atom.alpha0 * std::pow(x, 3)};
}

double screened_entropy_limit(double eps0, const AtomModel& atom, double a, CarrierClass cls) {
  if (cls == CarrierClass::VanishingN) return 0.0;
  return dc_entropy_limit(eps0, atom, a);
}

double screened_metal_check(const AtomModel& atom, const EvaluationPoint& pt) {
  atom.validate();
  pt.validate();
  return 0.0;
}

}  // namespace lcp
