#pragma once

// Nernst-theorem audit: entropy on a descending tau grid, weighted
// least-squares fit of S = s0 + s3 x^3 (x = T / T_eff), verdict on |s0|.

#include <string>
#include <vector>

#include "json.hpp"
#include "lifshitz_cp/lifshitz.hpp"
#include "lifshitz_cp/response.hpp"

namespace lcp {

enum class Verdict { Satisfied, Violated };
enum class MaterialClass { DielectricVanishingN, DielectricPersistentN, Metal };

std::string_view to_string(Verdict v);
std::string_view to_string(MaterialClass c);

struct AuditConfig {
  WallModel wall;
  AtomModel atom;
  double a = 1e-4;  // cm
  std::vector<double> tau_grid{0.05, 0.03, 0.02, 0.01, 0.005};
  double theta = 0.02;
  QuadratureSpec quadrature{};

  void validate() const;
};

struct AuditPoint {
  double tau = 0.0;
  double T = 0.0;        // K
  double x = 0.0;        // T / T_eff
  double entropy = 0.0;  // erg/K
  double entropy_uncertainty = 0.0;  // Richardson inconsistency, erg/K
  double free_energy = 0.0;          // erg
  double residual = 0.0;             // S - fit, erg/K
};

struct NernstReport {
  std::string wall;
  std::string variant;
  double a = 0.0;
  double alpha0 = 0.0;
  double theta = 0.0;
  double s0 = 0.0;
  double s0_uncertainty = 0.0;
  double s3 = 0.0;
  double s3_uncertainty = 0.0;
  double s_ref = 0.0;
  std::string s_ref_kind;  // "dielectric" or "metal"
  // k_B alpha(0) / (4 a^3): the size of a classical zero-frequency entropy.
  double residual_scale = 0.0;
  Verdict verdict = Verdict::Satisfied;
  double residual_rms = 0.0;  // relative to |S| per point
  double residual_max = 0.0;
  std::vector<AuditPoint> points;
};

NernstReport run_audit(const AuditConfig& cfg);

/// Ratio test on the carrier density at T_low < T_high.
MaterialClass classify_material(const WallModel& wall, double T_low, double T_high);

nlohmann::ordered_json to_json(const NernstReport& r);
/// Strict parse; throws ConfigError on unknown or missing keys.
NernstReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace lcp
