#include "lifshitz_cp/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"

namespace lcp {

namespace {

void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

double OscillatorModel::static_permittivity() const {
  double eps0 = 1.0;
  for (const auto& osc : oscillators) eps0 += osc.g / (osc.omega * osc.omega);
  return eps0;
}

void OscillatorModel::validate() const {
  for (const auto& osc : oscillators) {
    require(std::isfinite(osc.omega) && osc.omega > 0.0, "oscillator frequency must be > 0");
    require(finite_nonneg(osc.g), "oscillator strength must be >= 0");
    require(finite_nonneg(osc.gamma), "oscillator relaxation must be >= 0");
  }
  require(std::isfinite(static_permittivity()), "static permittivity must be finite");
}

OscillatorModel OscillatorModel::single(double eps0, double omega) {
  require(eps0 >= 1.0 && std::isfinite(eps0), "static permittivity must be >= 1");
  OscillatorModel model;
  model.oscillators.push_back({(eps0 - 1.0) * omega * omega, omega, 0.0});
  model.validate();
  return model;
}

TemperatureLaw TemperatureLaw::constant(double value) {
  TemperatureLaw law;
  law.kind = Kind::Constant;
  law.prefactor = value;
  return law;
}

TemperatureLaw TemperatureLaw::activated(double prefactor, double activation_energy) {
  TemperatureLaw law;
  law.kind = Kind::Activated;
  law.prefactor = prefactor;
  law.activation_energy = activation_energy;
  return law;
}

TemperatureLaw TemperatureLaw::tabulated(std::vector<std::pair<double, double>> points) {
  TemperatureLaw law;
  law.kind = Kind::Tabulated;
  std::sort(points.begin(), points.end());
  law.table = std::move(points);
  return law;
}

double TemperatureLaw::operator()(double T) const {
  require(T >= 0.0, "temperature must be >= 0");
  switch (kind) {
    case Kind::Constant:
      return prefactor;
    case Kind::Activated:
      if (activation_energy == 0.0) return prefactor;
      if (T == 0.0) return 0.0;
      return prefactor * std::exp(-activation_energy / (PhysicalConstants::k_B * T));
    case Kind::Tabulated: {
      if (T <= table.front().first) return table.front().second;
      if (T >= table.back().first) return table.back().second;
      auto hi = std::upper_bound(table.begin(), table.end(), T,
                                 [](double t, const auto& p) { return t < p.first; });
      auto lo = hi - 1;
      const double w = (T - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return 0.0;
}

bool TemperatureLaw::positive_at(double T) const {
  switch (kind) {
    case Kind::Constant:
      return prefactor > 0.0;
    case Kind::Activated:
      return prefactor > 0.0 && (T > 0.0 || activation_energy == 0.0);
    case Kind::Tabulated:
      return (*this)(T) > 0.0;
  }
  return false;
}

void TemperatureLaw::validate(std::string_view what) const {
  const std::string name(what);
  switch (kind) {
    case Kind::Constant:
      require(finite_nonneg(prefactor), name + ": value must be >= 0");
      break;
    case Kind::Activated:
      require(finite_nonneg(prefactor), name + ": prefactor must be >= 0");
      require(finite_nonneg(activation_energy), name + ": activation energy must be >= 0");
      break;
    case Kind::Tabulated:
      require(table.size() >= 2, name + ": table needs at least two points");
      for (std::size_t i = 0; i < table.size(); ++i) {
        require(finite_nonneg(table[i].first), name + ": table temperatures must be >= 0");
        require(finite_nonneg(table[i].second), name + ": table values must be >= 0");
        if (i > 0)
          require(table[i].first > table[i - 1].first,
                  name + ": table temperatures must be strictly increasing");
      }
      break;
  }
}

ConductivityLaw ConductivityLaw::activation(double sigma_ref, double activation_energy,
                                            double gamma_free) {
  ConductivityLaw law;
  law.mode = Mode::Activation;
  law.sigma_ref = sigma_ref;
  law.activation_energy = activation_energy;
  law.gamma_free = gamma_free;
  return law;
}

ConductivityLaw ConductivityLaw::assembled(TemperatureLaw n_law, TemperatureLaw mu_law,
                                           double gamma_free) {
  ConductivityLaw law;
  law.mode = Mode::Assembled;
  law.n_law = std::move(n_law);
  law.mu_law = std::move(mu_law);
  law.gamma_free = gamma_free;
  return law;
}

ConductivityLaw ConductivityLaw::ballistic(double omega_p) {
  ConductivityLaw law;
  law.mode = Mode::Ballistic;
  law.omega_p = omega_p;
  return law;
}

void ConductivityLaw::validate() const {
  require(gamma_free > 0.0, "free-carrier relaxation frequency must be > 0");
  if (mode == Mode::Ballistic) {
    require(std::isfinite(omega_p) && omega_p > 0.0, "ballistic carriers need a plasma frequency > 0");
  } else if (mode == Mode::Activation) {
    require(finite_nonneg(sigma_ref), "sigma_ref must be >= 0");
    require(finite_nonneg(activation_energy), "activation energy must be >= 0");
  } else {
    n_law.validate("n_law");
    mu_law.validate("mu_law");
  }
}

double PlasmaModel::skin_depth() const { return PhysicalConstants::c / omega_p; }

void PlasmaModel::validate() const {
  // omega_p = inf is accepted as the ideal-conductor limit.
  require(omega_p > 0.0, "plasma frequency must be > 0");
}

void ScreeningSpec::validate() const {
  n_law.validate("screening n_law");
  require(std::isfinite(eps0_host) && eps0_host >= 1.0, "host permittivity must be >= 1");
  if (statistics == CarrierStatistics::FermiDirac) {
    require(fermi_energy.has_value(), "Fermi-Dirac screening requires a Fermi energy");
    require(std::isfinite(*fermi_energy) && *fermi_energy > 0.0, "Fermi energy must be > 0");
  }
}

AtomModel AtomModel::at_separation(double a) const {
  if (!omega0) return *this;
  AtomModel out = *this;
  out.beta = PhysicalConstants::c / (2.0 * a * *omega0);
  return out;
}

void AtomModel::validate() const {
  require(std::isfinite(alpha0) && alpha0 >= 0.0, "static polarizability must be >= 0");
  require(finite_nonneg(beta), "atomic beta must be >= 0");
  if (omega0) require(std::isfinite(*omega0) && *omega0 > 0.0, "atomic omega0 must be > 0");
}

std::string_view WallModel::variant_name() const {
  return std::visit(overloaded{
                        [](const OscillatorWall&) { return std::string_view("oscillator"); },
                        [](const OscillatorPlusDcWall&) { return std::string_view("oscillator_dc"); },
                        [](const PlasmaWall&) { return std::string_view("plasma"); },
                        [](const DrudeWall&) { return std::string_view("drude"); },
                        [](const ScreenedWall&) { return std::string_view("screened"); },
                    },
                    response);
}

void WallModel::validate() const {
  std::visit(overloaded{
                 [](const OscillatorWall& w) { w.core.validate(); },
                 [](const OscillatorPlusDcWall& w) {
                   w.core.validate();
                   w.conductivity.validate();
                 },
                 [](const PlasmaWall& w) { w.plasma.validate(); },
                 [](const DrudeWall& w) {
                   w.plasma.validate();
                   require(std::isfinite(w.plasma.omega_p), "Drude plasma frequency must be finite");
                   require(finite_nonneg(w.gamma), "Drude relaxation must be >= 0");
                 },
                 [](const ScreenedWall& w) {
                   w.core.validate();
                   w.conductivity.validate();
                   w.screening.validate();
                 },
             },
             response);
}

bool WallModel::is_metallic() const {
  if (std::holds_alternative<PlasmaWall>(response) || std::holds_alternative<DrudeWall>(response))
    return true;
  if (const auto* s = std::get_if<ScreenedWall>(&response))
    return s->screening.statistics == CarrierStatistics::FermiDirac;
  return false;
}

double eps_core(const OscillatorModel& model, double xi) {
  require(xi >= 0.0, "eps_core: frequency must be >= 0");
  double eps = 1.0;
  const double xi2 = xi * xi;
  for (const auto& osc : model.oscillators) {
    double denom = osc.omega * osc.omega + xi2;
    if (model.include_damping) denom += osc.gamma * xi;
    eps += osc.g / denom;
  }
  return eps;
}

double sigma_dc(const ConductivityLaw& law, double T) {
  require(T >= 0.0, "sigma_dc: temperature must be >= 0");
  if (law.mode == ConductivityLaw::Mode::Activation) {
    if (law.activation_energy == 0.0) return law.sigma_ref;
    if (T == 0.0) return 0.0;
    return law.sigma_ref * std::exp(-law.activation_energy / (PhysicalConstants::k_B * T));
  }
  if (law.mode == ConductivityLaw::Mode::Ballistic) return std::numeric_limits<double>::infinity();
  return law.mu_law(T) * PhysicalConstants::e * law.n_law(T);
}

bool conducts(const ConductivityLaw& law, double T) {
  if (law.mode == ConductivityLaw::Mode::Activation)
    return law.sigma_ref > 0.0 && (T > 0.0 || law.activation_energy == 0.0);
  if (law.mode == ConductivityLaw::Mode::Ballistic) return true;
  return law.mu_law.positive_at(T) && law.n_law.positive_at(T);
}

double dc_addition(const ConductivityLaw& law, double xi, double T) {
  require(xi > 0.0, "dc addition: frequency must be > 0");
  if (law.mode == ConductivityLaw::Mode::Ballistic) {
    const double r = law.omega_p / xi;
    return r * r;
  }
  const double sigma = sigma_dc(law, T);
  if (sigma == 0.0) return 0.0;
  return 4.0 * pi * sigma / (xi * (1.0 + xi / law.gamma_free));
}

double eps_with_dc(const OscillatorModel& model, const ConductivityLaw& law, double xi, double T) {
  require(xi > 0.0, "eps_with_dc: frequency must be > 0");
  return eps_core(model, xi) + dc_addition(law, xi, T);
}

double eps_plasma(const PlasmaModel& model, double xi) {
  require(xi > 0.0, "eps_plasma: frequency must be > 0");
  const double r = model.omega_p / xi;
  return 1.0 + r * r;
}

double eps_drude(const PlasmaModel& model, double gamma, double xi) {
  require(xi > 0.0, "eps_drude: frequency must be > 0");
  require(gamma >= 0.0, "eps_drude: relaxation must be >= 0");
  return 1.0 + model.omega_p * model.omega_p / (xi * (xi + gamma));
}

double screening_kappa(const ScreeningSpec& spec, double T) {
  const double n = spec.n_law(T);
  require(n >= 0.0, "screening: carrier density must be >= 0");
  const double e2 = PhysicalConstants::e * PhysicalConstants::e;
  if (spec.statistics == CarrierStatistics::MaxwellBoltzmann) {
    require(T > 0.0, "Debye-Hueckel screening requires T > 0");
    return std::sqrt(4.0 * pi * e2 * n / (spec.eps0_host * PhysicalConstants::k_B * T));
  }
  if (!spec.fermi_energy) throw DomainError("Thomas-Fermi screening requires a Fermi energy");
  return std::sqrt(6.0 * pi * e2 * n / (spec.eps0_host * *spec.fermi_energy));
}

double alpha_dynamic(const AtomModel& atom, double zeta) {
  require(zeta >= 0.0, "alpha_dynamic: frequency must be >= 0");
  const double bz = atom.beta * zeta;
  return atom.alpha0 / (1.0 + bz * bz);
}

}  // namespace lcp
