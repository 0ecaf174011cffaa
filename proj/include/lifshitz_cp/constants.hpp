#pragma once

// Gaussian (CGS) physical constants, CODATA 2018 exact/recommended values.

#include <numbers>

namespace lcp {

struct PhysicalConstants {
  static constexpr double k_B = 1.380649e-16;           // erg/K
  static constexpr double hbar = 1.054571817e-27;       // erg s
  static constexpr double c = 2.99792458e10;            // cm/s
  static constexpr double e = 4.803204712570263e-10;    // statC
  static constexpr double eV = 1.602176634e-12;         // erg
  static constexpr double bohr_radius = 5.29177210903e-9;  // cm
};

inline constexpr double pi = std::numbers::pi;

/// Energy in eV to angular frequency in rad/s via E = hbar * omega.
constexpr double ev_to_rad_per_s(double energy_ev) {
  return energy_ev * PhysicalConstants::eV / PhysicalConstants::hbar;
}

constexpr double ev_to_erg(double energy_ev) { return energy_ev * PhysicalConstants::eV; }

/// Atomic units of polarizability (a_0^3) to cm^3.
constexpr double au_polarizability_to_cm3(double alpha_au) {
  constexpr double a0 = PhysicalConstants::bohr_radius;
  return alpha_au * a0 * a0 * a0;
}

}  // namespace lcp
