#pragma once

// Dielectric response of the wall and the atom along the imaginary frequency
// axis. All quantities are Gaussian: frequencies in rad/s, conductivities in
// 1/s, energies in erg, lengths in cm.

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lcp {

struct Oscillator {
  double g = 0.0;      // oscillator strength, rad^2/s^2
  double omega = 0.0;  // resonance frequency, rad/s
  double gamma = 0.0;  // relaxation, rad/s (only used when damping is enabled)
};

struct OscillatorModel {
  std::vector<Oscillator> oscillators;
  // Keep the gamma_j * xi term in the denominators. Off by default: the
  // undamped form is the one used for all shipped materials.
  bool include_damping = false;

  /// 1 + sum g_j / omega_j^2.
  double static_permittivity() const;
  void validate() const;

  /// Single oscillator reproducing a given static permittivity.
  static OscillatorModel single(double eps0, double omega);
};

/// Temperature dependence of a carrier density or mobility.
struct TemperatureLaw {
  enum class Kind { Constant, Activated, Tabulated };

  Kind kind = Kind::Constant;
  double prefactor = 0.0;
  double activation_energy = 0.0;  // erg, Activated only
  std::vector<std::pair<double, double>> table;  // (T in K, value), Tabulated only

  static TemperatureLaw constant(double value);
  static TemperatureLaw activated(double prefactor, double activation_energy);
  static TemperatureLaw tabulated(std::vector<std::pair<double, double>> points);

  double operator()(double T) const;
  /// Positivity of the law at T > 0 without relying on floating-point
  /// evaluation (exp(-E/kT) underflows long before it is mathematically zero).
  bool positive_at(double T) const;
  void validate(std::string_view what) const;
};

struct ConductivityLaw {
  // Activation: sigma_ref exp(-Delta / k_B T). Assembled: mu(T) |e| n(T).
  // Ballistic: collisionless carriers, addition omega_p^2 / xi^2 (sigma(0) unbounded).
  enum class Mode { Activation, Assembled, Ballistic };

  Mode mode = Mode::Activation;
  double sigma_ref = 0.0;          // 1/s
  double activation_energy = 0.0;  // erg
  double gamma_free = std::numeric_limits<double>::infinity();  // rad/s
  TemperatureLaw n_law;   // 1/cm^3, Assembled only
  TemperatureLaw mu_law;  // cm^2 statV^-1 s^-1, Assembled only
  double omega_p = 0.0;   // rad/s, Ballistic only

  static ConductivityLaw activation(double sigma_ref, double activation_energy,
                                    double gamma_free = std::numeric_limits<double>::infinity());
  static ConductivityLaw assembled(TemperatureLaw n_law, TemperatureLaw mu_law,
                                   double gamma_free = std::numeric_limits<double>::infinity());
  static ConductivityLaw ballistic(double omega_p);
  void validate() const;
};

struct PlasmaModel {
  double omega_p = 0.0;  // rad/s

  /// Skin-depth parameter delta_0 = c / omega_p in cm.
  double skin_depth() const;
  void validate() const;
};

enum class CarrierStatistics { MaxwellBoltzmann, FermiDirac };

struct ScreeningSpec {
  CarrierStatistics statistics = CarrierStatistics::MaxwellBoltzmann;
  TemperatureLaw n_law;
  double eps0_host = 1.0;
  // Fermi energy in erg. Material files set it to hbar * omega_p when only
  // the plasma frequency is known, which is the identification used for the
  // Thomas-Fermi length.
  std::optional<double> fermi_energy;

  void validate() const;
};

struct AtomModel {
  double alpha0 = 0.0;  // cm^3
  double beta = 0.0;    // dimensionless single-oscillator shape constant
  // Characteristic absorption frequency in rad/s. When set, beta follows the
  // separation as omega_c / omega0 (see at_separation).
  std::optional<double> omega0;

  AtomModel at_separation(double a) const;
  void validate() const;
};

struct OscillatorWall {
  OscillatorModel core;
};
struct OscillatorPlusDcWall {
  OscillatorModel core;
  ConductivityLaw conductivity;
};
struct PlasmaWall {
  PlasmaModel plasma;
};
struct DrudeWall {
  PlasmaModel plasma;
  double gamma = 0.0;  // rad/s
};
struct ScreenedWall {
  OscillatorModel core;
  ConductivityLaw conductivity;
  ScreeningSpec screening;
};

using WallResponse =
    std::variant<OscillatorWall, OscillatorPlusDcWall, PlasmaWall, DrudeWall, ScreenedWall>;

struct WallModel {
  std::string name;
  WallResponse response;

  std::string_view variant_name() const;
  void validate() const;
  /// Plasma, Drude, or a degenerate (Fermi-Dirac) screened conductor.
  bool is_metallic() const;
};

// Operations along the imaginary axis; xi in rad/s, T in K.

double eps_core(const OscillatorModel& model, double xi);
/// Infinite for ballistic carriers.
double sigma_dc(const ConductivityLaw& law, double T);
/// sigma(0, T) > 0 as a mathematical statement, see TemperatureLaw::positive_at.
bool conducts(const ConductivityLaw& law, double T);
/// Drude-like addition 4 pi sigma(0,T) / [xi (1 + xi/gamma)], or omega_p^2 / xi^2
/// for ballistic carriers; requires xi > 0.
double dc_addition(const ConductivityLaw& law, double xi, double T);
double eps_with_dc(const OscillatorModel& model, const ConductivityLaw& law, double xi, double T);
double eps_plasma(const PlasmaModel& model, double xi);
double eps_drude(const PlasmaModel& model, double gamma, double xi);
/// Inverse screening length in 1/cm (Debye-Hueckel or Thomas-Fermi).
double screening_kappa(const ScreeningSpec& spec, double T);
/// alpha(i omega_c zeta) in cm^3.
double alpha_dynamic(const AtomModel& atom, double zeta);

}  // namespace lcp
