#include "lifshitz_cp/thermo_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"

namespace lcp {

namespace {

double static_permittivity_of(const WallModel& wall) {
  if (const auto* w = std::get_if<OscillatorWall>(&wall.response)) return w->core.static_permittivity();
  if (const auto* w = std::get_if<OscillatorPlusDcWall>(&wall.response)) return w->core.static_permittivity();
  if (const auto* w = std::get_if<ScreenedWall>(&wall.response)) return w->screening.eps0_host;
  return std::numeric_limits<double>::infinity();
}

struct Fit {
  double s0, s3, var0, var3, cov_fit0, cov_fit3;
};

// Weighted least squares for S = s0 + s3 x^3 with weights 1/S^2 (relative
// residuals); uncertainties combine the fit scatter and the propagated
// per-point numerical uncertainty.
Fit fit_cubic(const std::vector<AuditPoint>& pts) {
  const std::size_t n = pts.size();
  std::vector<double> w(n, 1.0);
  bool relative = true;
  for (const auto& p : pts) relative = relative && p.entropy != 0.0;
  if (relative)
    for (std::size_t i = 0; i < n; ++i) w[i] = 1.0 / (pts[i].entropy * pts[i].entropy);

  double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::pow(pts[i].x, 3);
    a00 += w[i];
    a01 += w[i] * u;
    a11 += w[i] * u * u;
    b0 += w[i] * pts[i].entropy;
    b1 += w[i] * u * pts[i].entropy;
  }
  const double det = a00 * a11 - a01 * a01;
  if (!(det > 0.0)) throw ConvergenceError("audit fit is singular (need at least two distinct temperatures)");
  const double i00 = a11 / det, i01 = -a01 / det, i11 = a00 / det;
  Fit f{};
  f.s0 = i00 * b0 + i01 * b1;
  f.s3 = i01 * b0 + i11 * b1;

  double chi2 = 0.0, num0 = 0.0, num3 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = std::pow(pts[i].x, 3);
    const double r = pts[i].entropy - (f.s0 + f.s3 * u);
    chi2 += w[i] * r * r;
    const double c0 = (i00 + i01 * u) * w[i];
    const double c3 = (i01 + i11 * u) * w[i];
    num0 += c0 * c0 * pts[i].entropy_uncertainty * pts[i].entropy_uncertainty;
    num3 += c3 * c3 * pts[i].entropy_uncertainty * pts[i].entropy_uncertainty;
  }
  const double s2 = n > 2 ? chi2 / static_cast<double>(n - 2) : 0.0;
  f.cov_fit0 = s2 * i00;
  f.cov_fit3 = s2 * i11;
  f.var0 = f.cov_fit0 + num0;
  f.var3 = f.cov_fit3 + num3;
  return f;
}

const TemperatureLaw* carrier_law(const WallModel& wall) {
  if (const auto* w = std::get_if<ScreenedWall>(&wall.response)) return &w->screening.n_law;
  if (const auto* w = std::get_if<OscillatorPlusDcWall>(&wall.response))
    if (w->conductivity.mode == ConductivityLaw::Mode::Assembled) return &w->conductivity.n_law;
  return nullptr;
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Satisfied ? "Satisfied" : "Violated"; }

std::string_view to_string(MaterialClass c) {
  switch (c) {
    case MaterialClass::DielectricVanishingN:
      return "DielectricVanishingN";
    case MaterialClass::DielectricPersistentN:
      return "DielectricPersistentN";
    case MaterialClass::Metal:
      return "Metal";
  }
  return "";
}

void AuditConfig::validate() const {
  wall.validate();
  atom.validate();
  quadrature.validate();
  if (!(a > 0.0)) throw DomainError("audit: separation must be > 0");
  if (tau_grid.size() < 2) throw DomainError("audit: tau grid needs at least two points");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > 0.0 && tau_grid[i] <= 0.1)) throw DomainError("audit: tau grid values must lie in (0, 0.1]");
    if (i > 0 && !(tau_grid[i] < tau_grid[i - 1])) throw DomainError("audit: tau grid must be strictly descending");
  }
  if (!(theta > 0.0 && theta < 0.1)) throw DomainError("audit: theta must lie in (0, 0.1)");
}

NernstReport run_audit(const AuditConfig& cfg) {
  cfg.validate();
  const double T_eff = EvaluationPoint{cfg.a, 1.0}.T_eff();
  const AtomModel& atom = cfg.atom;

  NernstReport rep;
  rep.wall = cfg.wall.name;
  rep.variant = std::string(cfg.wall.variant_name());
  rep.a = cfg.a;
  rep.alpha0 = atom.alpha0;
  rep.theta = cfg.theta;

  for (const double tau : cfg.tau_grid) {
    AuditPoint p;
    p.tau = tau;
    p.T = tau * T_eff / (2.0 * pi);
    p.x = p.T / T_eff;
    try {
      const ComputationResult r = entropy(cfg.wall, atom, {cfg.a, p.T}, cfg.quadrature);
      p.entropy = *r.entropy;
      p.entropy_uncertainty = r.diagnostics.entropy->inconsistency;
      p.free_energy = r.free_energy;
    } catch (const std::exception& e) {
      throw ConvergenceError("audit of '" + cfg.wall.name + "' failed at tau = " + std::to_string(tau) +
                             " (T = " + std::to_string(p.T) + " K): " + e.what());
    }
    rep.points.push_back(p);
  }

  const Fit f = fit_cubic(rep.points);
  rep.s0 = f.s0;
  rep.s3 = f.s3;
  rep.s0_uncertainty = std::sqrt(f.var0);
  rep.s3_uncertainty = std::sqrt(f.var3);

  const double a3 = cfg.a * cfg.a * cfg.a;
  rep.residual_scale = PhysicalConstants::k_B * atom.alpha0 / (4.0 * a3);
  if (cfg.wall.is_metallic()) {
    const double x_min = rep.points.back().x;
    rep.s_ref_kind = "metal";
    rep.s_ref = std::pow(pi, 3) * PhysicalConstants::k_B / (45.0 * a3) * atom.alpha0 * std::pow(x_min, 3);
  } else {
    const double eps0 = static_permittivity_of(cfg.wall);
    rep.s_ref_kind = "dielectric";
    rep.s_ref = PhysicalConstants::k_B * (1.0 - (eps0 - 1.0) / (eps0 + 1.0)) * atom.alpha0 / (4.0 * a3);
  }
  rep.verdict = std::abs(rep.s0) > cfg.theta * rep.s_ref ? Verdict::Violated : Verdict::Satisfied;

  double sq = 0.0;
  for (auto& p : rep.points) {
    p.residual = p.entropy - (rep.s0 + rep.s3 * std::pow(p.x, 3));
    const double rel = p.entropy != 0.0 ? p.residual / std::abs(p.entropy) : 0.0;
    sq += rel * rel;
    rep.residual_max = std::max(rep.residual_max, std::abs(rel));
  }
  rep.residual_rms = std::sqrt(sq / static_cast<double>(rep.points.size()));
  return rep;
}

MaterialClass classify_material(const WallModel& wall, double T_low, double T_high) {
  wall.validate();
  if (!(T_low > 0.0 && T_high > T_low)) throw DomainError("classify_material: need 0 < T_low < T_high");
  if (wall.is_metallic()) return MaterialClass::Metal;
  const TemperatureLaw* law = carrier_law(wall);
  if (!law) throw DomainError("classify_material: wall '" + wall.name + "' carries no carrier-density law");
  const double hi = (*law)(T_high);
  if (!(hi > 0.0)) return MaterialClass::DielectricVanishingN;
  const double ratio = (*law)(T_low) / hi;
  if (ratio >= 0.9) return MaterialClass::DielectricPersistentN;
  if (ratio <= 0.5) return MaterialClass::DielectricVanishingN;
  throw IndeterminateError("carrier density ratio n(T_low)/n(T_high) = " + std::to_string(ratio) +
                           " lies between 0.5 and 0.9; limit behaviour is indeterminate");
}

nlohmann::ordered_json to_json(const NernstReport& r) {
  nlohmann::ordered_json pts = nlohmann::ordered_json::array();
  for (const auto& p : r.points)
    pts.push_back({{"tau", p.tau},
                   {"T_K", p.T},
                   {"x", p.x},
                   {"S_erg_per_K", p.entropy},
                   {"S_uncertainty", p.entropy_uncertainty},
                   {"F_erg", p.free_energy},
                   {"residual", p.residual}});
  return {{"wall", r.wall},
          {"variant", r.variant},
          {"a_cm", r.a},
          {"alpha0_cm3", r.alpha0},
          {"theta", r.theta},
          {"s0", r.s0},
          {"s0_uncertainty", r.s0_uncertainty},
          {"s3", r.s3},
          {"s3_uncertainty", r.s3_uncertainty},
          {"S_ref", r.s_ref},
          {"S_ref_kind", r.s_ref_kind},
          {"residual_scale", r.residual_scale},
          {"verdict", std::string(to_string(r.verdict))},
          {"residual_rms", r.residual_rms},
          {"residual_max", r.residual_max},
          {"points", pts}};
}

namespace {

void require_keys(const nlohmann::ordered_json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + ": expected an object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ConfigError(what + ": unknown key '" + k + "'");
  for (const auto& k : allowed)
    if (!j.contains(k)) throw ConfigError(what + ": missing key '" + k + "'");
}

template <class T>
T get(const nlohmann::ordered_json& j, const char* key, const std::string& what) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(what + ": bad value for '" + key + "': " + e.what());
  }
}

}  // namespace

NernstReport report_from_json(const nlohmann::ordered_json& j) {
  const std::string what = "report";
  require_keys(j,
               {"wall", "variant", "a_cm", "alpha0_cm3", "theta", "s0", "s0_uncertainty", "s3", "s3_uncertainty",
                "S_ref", "S_ref_kind", "residual_scale", "verdict", "residual_rms", "residual_max", "points"},
               what);
  NernstReport r;
  r.wall = get<std::string>(j, "wall", what);
  r.variant = get<std::string>(j, "variant", what);
  r.a = get<double>(j, "a_cm", what);
  r.alpha0 = get<double>(j, "alpha0_cm3", what);
  r.theta = get<double>(j, "theta", what);
  r.s0 = get<double>(j, "s0", what);
  r.s0_uncertainty = get<double>(j, "s0_uncertainty", what);
  r.s3 = get<double>(j, "s3", what);
  r.s3_uncertainty = get<double>(j, "s3_uncertainty", what);
  r.s_ref = get<double>(j, "S_ref", what);
  r.s_ref_kind = get<std::string>(j, "S_ref_kind", what);
  r.residual_scale = get<double>(j, "residual_scale", what);
  const auto verdict = get<std::string>(j, "verdict", what);
  if (verdict == "Satisfied")
    r.verdict = Verdict::Satisfied;
  else if (verdict == "Violated")
    r.verdict = Verdict::Violated;
  else
    throw ConfigError(what + ": verdict must be Satisfied or Violated");
  r.residual_rms = get<double>(j, "residual_rms", what);
  r.residual_max = get<double>(j, "residual_max", what);
  if (!j.at("points").is_array()) throw ConfigError(what + ": points must be an array");
  for (const auto& pj : j.at("points")) {
    const std::string pw = what + ".points[]";
    require_keys(pj, {"tau", "T_K", "x", "S_erg_per_K", "S_uncertainty", "F_erg", "residual"}, pw);
    AuditPoint p;
    p.tau = get<double>(pj, "tau", pw);
    p.T = get<double>(pj, "T_K", pw);
    p.x = get<double>(pj, "x", pw);
    p.entropy = get<double>(pj, "S_erg_per_K", pw);
    p.entropy_uncertainty = get<double>(pj, "S_uncertainty", pw);
    p.free_energy = get<double>(pj, "F_erg", pw);
    p.residual = get<double>(pj, "residual", pw);
    r.points.push_back(p);
  }
  return r;
}

}  // namespace lcp
