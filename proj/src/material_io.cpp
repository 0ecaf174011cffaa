#include "lifshitz_cp/material_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"

namespace lcp {

namespace {

using json = nlohmann::json;

class Reader {
 public:
  Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  void allow(std::initializer_list<const char*> keys) {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items())
      if (!ok.count(k)) fail("unknown key '" + k + "'");
  }

  bool has(const char* key) const { return j_.contains(key); }

  double number(const char* key) const {
    const json& v = at(key);
    if (!v.is_number()) fail("'" + std::string(key) + "' must be a number");
    return v.get<double>();
  }
  double number_or(const char* key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::string string(const char* key) const {
    const json& v = at(key);
    if (!v.is_string()) fail("'" + std::string(key) + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean_or(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) fail("'" + std::string(key) + "' must be true or false");
    return v.get<bool>();
  }

  const json& at(const char* key) const {
    if (!j_.contains(key)) fail("missing key '" + std::string(key) + "'");
    return j_.at(key);
  }

  std::string sub(const char* key) const { return where_ + "." + key; }
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(where_ + ": " + msg); }

 private:
  const json& j_;
  std::string where_;
};

OscillatorModel read_oscillators(const Reader& r, const std::string& where) {
  OscillatorModel m;
  const json& arr = r.at("oscillators");
  if (!arr.is_array()) r.fail("'oscillators' must be an array");
  for (const auto& o : arr) {
    Reader ro(o, where + ".oscillators[]");
    ro.allow({"omega_eV", "delta_eps", "gamma_eV"});
    const double omega = ev_to_rad_per_s(ro.number("omega_eV"));
    const double delta_eps = ro.number("delta_eps");
    m.oscillators.push_back({delta_eps * omega * omega, omega, ev_to_rad_per_s(ro.number_or("gamma_eV", 0.0))});
  }
  m.include_damping = r.boolean_or("include_damping", false);
  return m;
}

TemperatureLaw read_law(const json& j, const std::string& where) {
  Reader r(j, where);
  const std::string kind = r.string("kind");
  if (kind == "constant") {
    r.allow({"kind", "value"});
    return TemperatureLaw::constant(r.number("value"));
  }
  if (kind == "activated") {
    r.allow({"kind", "prefactor", "delta_eV"});
    return TemperatureLaw::activated(r.number("prefactor"), ev_to_erg(r.number("delta_eV")));
  }
  if (kind == "tabulated") {
    r.allow({"kind", "points"});
    const json& pts = r.at("points");
    if (!pts.is_array()) r.fail("'points' must be an array of [T_K, value] pairs");
    std::vector<std::pair<double, double>> table;
    for (const auto& p : pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        r.fail("'points' must be an array of [T_K, value] pairs");
      table.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return TemperatureLaw::tabulated(std::move(table));
  }
  r.fail("law kind must be constant, activated or tabulated");
}

double gamma_free_of(const Reader& r) {
  return r.has("gamma_eV") ? ev_to_rad_per_s(r.number("gamma_eV")) : std::numeric_limits<double>::infinity();
}

}  // namespace

WallModel wall_from_json(const json& j, const std::string& fallback_name) {
  Reader r(j, "material");
  const std::string variant = r.string("variant");
  WallModel wall;
  wall.name = r.has("name") ? r.string("name") : fallback_name;

  if (variant == "oscillator") {
    r.allow({"variant", "name", "notes", "oscillators", "include_damping"});
    wall.response = OscillatorWall{read_oscillators(r, "material")};
  } else if (variant == "oscillator_dc") {
    r.allow({"variant", "name", "notes", "oscillators", "include_damping", "sigma_ref", "delta_eV", "gamma_eV",
             "carriers"});
    OscillatorPlusDcWall w{read_oscillators(r, "material"), {}};
    if (r.has("carriers")) {
      if (r.has("sigma_ref") || r.has("delta_eV")) r.fail("give either sigma_ref/delta_eV or carriers, not both");
      Reader c(r.at("carriers"), r.sub("carriers"));
      c.allow({"n_law", "mu_law"});
      w.conductivity = ConductivityLaw::assembled(read_law(c.at("n_law"), c.sub("n_law")),
                                                  read_law(c.at("mu_law"), c.sub("mu_law")), gamma_free_of(r));
    } else {
      w.conductivity = ConductivityLaw::activation(r.number("sigma_ref"), ev_to_erg(r.number("delta_eV")),
                                                   gamma_free_of(r));
    }
    wall.response = std::move(w);
  } else if (variant == "plasma") {
    r.allow({"variant", "name", "notes", "omega_p_eV"});
    wall.response = PlasmaWall{{ev_to_rad_per_s(r.number("omega_p_eV"))}};
  } else if (variant == "drude") {
    r.allow({"variant", "name", "notes", "omega_p_eV", "gamma_eV"});
    wall.response = DrudeWall{{ev_to_rad_per_s(r.number("omega_p_eV"))}, ev_to_rad_per_s(r.number("gamma_eV"))};
  } else if (variant == "screened") {
    r.allow({"variant", "name", "notes", "oscillators", "include_damping", "gamma_eV", "omega_p_eV", "screening"});
    ScreenedWall w;
    w.core = read_oscillators(r, "material");
    Reader s(r.at("screening"), r.sub("screening"));
    s.allow({"statistics", "n_law", "mu_law", "E_F_eV"});
    const std::string stats = s.string("statistics");
    if (stats == "maxwell_boltzmann")
      w.screening.statistics = CarrierStatistics::MaxwellBoltzmann;
    else if (stats == "fermi_dirac")
      w.screening.statistics = CarrierStatistics::FermiDirac;
    else
      s.fail("statistics must be maxwell_boltzmann or fermi_dirac");
    w.screening.n_law = read_law(s.at("n_law"), s.sub("n_law"));
    w.screening.eps0_host = w.core.static_permittivity();
    if (r.has("omega_p_eV")) {
      // Collisionless carriers; the Fermi energy defaults to hbar omega_p.
      if (s.has("mu_law")) s.fail("mu_law does not apply to ballistic carriers (omega_p_eV given)");
      if (r.has("gamma_eV")) r.fail("gamma_eV does not apply to ballistic carriers (omega_p_eV given)");
      const double wp = ev_to_rad_per_s(r.number("omega_p_eV"));
      w.conductivity = ConductivityLaw::ballistic(wp);
      if (w.screening.statistics == CarrierStatistics::FermiDirac)
        w.screening.fermi_energy = s.has("E_F_eV") ? ev_to_erg(s.number("E_F_eV")) : PhysicalConstants::hbar * wp;
    } else {
      w.conductivity = ConductivityLaw::assembled(w.screening.n_law, read_law(s.at("mu_law"), s.sub("mu_law")),
                                                  gamma_free_of(r));
      if (s.has("E_F_eV")) w.screening.fermi_energy = ev_to_erg(s.number("E_F_eV"));
    }
    wall.response = std::move(w);
  } else {
    r.fail("variant must be oscillator, oscillator_dc, plasma, drude or screened");
  }

  try {
    wall.validate();
  } catch (const DomainError& e) {
    throw ConfigError("material '" + wall.name + "': " + e.what());
  }
  return wall;
}

AtomModel atom_from_json(const json& j) {
  Reader r(j, "atom");
  r.allow({"name", "notes", "alpha0_au", "alpha0_cm3", "omega0_eV", "beta"});
  AtomModel atom;
  if (r.has("alpha0_au") == r.has("alpha0_cm3")) r.fail("give exactly one of alpha0_au and alpha0_cm3");
  atom.alpha0 = r.has("alpha0_au") ? au_polarizability_to_cm3(r.number("alpha0_au")) : r.number("alpha0_cm3");
  if (r.has("omega0_eV") && r.has("beta")) r.fail("give at most one of omega0_eV and beta");
  if (r.has("omega0_eV")) atom.omega0 = ev_to_rad_per_s(r.number("omega0_eV"));
  atom.beta = r.number_or("beta", 0.0);
  try {
    atom.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("atom: ") + e.what());
  }
  return atom;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

WallModel load_wall(const std::filesystem::path& path) {
  return wall_from_json(read_json_file(path), path.stem().string());
}

AtomModel load_atom(const std::filesystem::path& path) { return atom_from_json(read_json_file(path)); }

}  // namespace lcp
