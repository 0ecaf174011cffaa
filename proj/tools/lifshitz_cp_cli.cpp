// lifshitz_cp: command-line front end for the Casimir-Polder library.
//
//   lifshitz_cp energy  --wall sio2 --a-um 1 --T-K 300
//   lifshitz_cp entropy --wall sio2_dc --a-um 1 --T-K 10
//   lifshitz_cp sweep   --axis T --from 10 --to 300 --points 30 --models sio2,sio2_dc
//   lifshitz_cp audit   --wall sio2_dc --format json --out report.json
//   lifshitz_cp coeff   --wall gold_drude --l 0,1,2 --y-from 0 --y-to 10 --points 21
//
// Every setting can also come from --config <file.json>; flags given on the
// command line win. Exit codes: 0 ok, 2 configuration, 3 convergence, 4 io.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "lifshitz_cp/errors.hpp"
#include "lifshitz_cp/lifshitz.hpp"
#include "lifshitz_cp/material_io.hpp"
#include "lifshitz_cp/reflection.hpp"
#include "lifshitz_cp/thermo_audit.hpp"
#include "lifshitz_cp/version.hpp"

#ifndef LIFSHITZ_CP_FIXTURE_DIR
#define LIFSHITZ_CP_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

const std::set<std::string> kCommonKeys{"tol", "lmax", "max_subdivisions", "entropy_step", "format"};
const std::map<std::string, std::set<std::string>> kCommandKeys{
    {"energy", {"wall", "atom", "a_um", "T_K"}},
    {"entropy", {"wall", "atom", "a_um", "T_K"}},
    {"sweep", {"models", "atom", "axis", "from", "to", "points", "spacing", "a_um", "T_K"}},
    {"audit", {"wall", "atom", "a_um", "tau_grid", "theta"}},
    {"coeff", {"wall", "a_um", "T_K", "l", "y_from", "y_to", "points"}},
};

// Raw values collected from the command line; empty/unset means "not given".
struct Flags {
  std::string config, out, format, fixtures;
  double tol = 0, a_um = 0, T_K = 0, from = 0, to = 0, theta = 0, y_from = 0, y_to = 0;
  std::size_t lmax = 0, points = 0;
  std::string wall, atom, axis, spacing, models, l, tau_grid;
};

struct Settings {
  std::string command;
  ojson values = ojson::object();            // effective settings, echoed in the header
  std::map<std::string, fs::path> base_dir;  // where relative material paths resolve
};

// ---------------------------------------------------------------- settings

double get_number(const Settings& s, const std::string& key) {
  const auto& v = s.values.at(key);
  if (!v.is_number()) throw lcp::ConfigError("'" + key + "' must be a number");
  return v.get<double>();
}

std::size_t get_count(const Settings& s, const std::string& key) {
  const auto& v = s.values.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw lcp::ConfigError("'" + key + "' must be a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_string(const Settings& s, const std::string& key) {
  const auto& v = s.values.at(key);
  if (!v.is_string()) throw lcp::ConfigError("'" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ojson number_list(const std::string& text, bool integral) {
  ojson arr = ojson::array();
  for (const auto& item : split(text)) {
    try {
      std::size_t pos = 0;
      if (integral) {
        const long long v = std::stoll(item, &pos);
        arr.push_back(v);
      } else {
        arr.push_back(std::stod(item, &pos));
      }
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw lcp::ConfigError("cannot parse '" + item + "' as a number");
    }
  }
  return arr;
}

ojson defaults_for(const std::string& cmd) {
  ojson d = {{"atom", "rb"}, {"a_um", 1.0}};
  if (cmd == "energy" || cmd == "entropy") {
    d["T_K"] = 300.0;
  } else if (cmd == "sweep") {
    d["models"] = ojson::array({"sio2", "sio2_dc"});
    d["axis"] = "T";
    d["from"] = 10.0;
    d["to"] = 300.0;
    d["points"] = 30;
    d["spacing"] = "linear";
    d["T_K"] = 300.0;
  } else if (cmd == "audit") {
    d["tau_grid"] = ojson::array({0.05, 0.03, 0.02, 0.01, 0.005});
    d["theta"] = 0.02;
  } else if (cmd == "coeff") {
    d.erase("atom");
    d["T_K"] = 300.0;
    d["l"] = ojson::array({0, 1, 2, 5, 10});
    d["y_from"] = 0.0;
    d["y_to"] = 10.0;
    d["points"] = 11;
  }
  const lcp::QuadratureSpec q;
  d["tol"] = q.tolerance;
  d["lmax"] = q.max_terms;
  d["max_subdivisions"] = q.max_subdivisions;
  d["entropy_step"] = q.entropy_step;
  d["format"] = "csv";
  return d;
}

void merge_config_file(Settings& s, const fs::path& path) {
  const nlohmann::json file = lcp::read_json_file(path);
  if (!file.is_object()) throw lcp::ConfigError("config '" + path.string() + "' must be a JSON object");
  const auto& allowed = kCommandKeys.at(s.command);
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  for (const auto& [k, v] : file.items()) {
    if (!kCommonKeys.count(k) && !allowed.count(k))
      throw lcp::ConfigError("config key '" + k + "' is not valid for '" + s.command + "'");
    s.values[k] = ojson::parse(v.dump());
    s.base_dir[k] = dir;
  }
}

void merge_flags(Settings& s, const CLI::App& sub, const Flags& f) {
  auto given = [&](const char* name) {
    const CLI::Option* o = sub.get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };
  auto set = [&](const char* name, const std::string& key, ojson v) {
    if (!given(name)) return;
    s.values[key] = std::move(v);
    s.base_dir[key] = fs::current_path();
  };
  set("--tol", "tol", f.tol);
  set("--lmax", "lmax", f.lmax);
  set("--format", "format", f.format);
  set("--wall", "wall", f.wall);
  set("--atom", "atom", f.atom);
  set("--a-um", "a_um", f.a_um);
  set("--T-K", "T_K", f.T_K);
  set("--axis", "axis", f.axis);
  set("--from", "from", f.from);
  set("--to", "to", f.to);
  set("--points", "points", f.points);
  set("--spacing", "spacing", f.spacing);
  set("--theta", "theta", f.theta);
  set("--y-from", "y_from", f.y_from);
  set("--y-to", "y_to", f.y_to);
  if (given("--models")) {
    ojson arr = ojson::array();
    for (const auto& m : split(f.models)) arr.push_back(m);
    set("--models", "models", arr);
  }
  if (given("--l")) set("--l", "l", number_list(f.l, true));
  if (given("--tau-grid")) set("--tau-grid", "tau_grid", number_list(f.tau_grid, false));
}

lcp::QuadratureSpec quadrature_of(const Settings& s) {
  lcp::QuadratureSpec q;
  q.tolerance = get_number(s, "tol");
  q.max_terms = get_count(s, "lmax");
  q.max_subdivisions = get_count(s, "max_subdivisions");
  q.entropy_step = get_number(s, "entropy_step");
  try {
    q.validate();
  } catch (const lcp::DomainError& e) {
    throw lcp::ConfigError(e.what());
  }
  return q;
}

ojson quadrature_json(const lcp::QuadratureSpec& q) {
  return {{"tolerance", q.tolerance},
          {"max_terms", q.max_terms},
          {"max_subdivisions", q.max_subdivisions},
          {"entropy_step", q.entropy_step},
          {"entropy_step_cap", q.entropy_step_cap}};
}

// ------------------------------------------------------------- materials

struct Loaded {
  std::string name;
  nlohmann::json source;
};

fs::path resolve(const std::string& ref, const fs::path& base, const fs::path& fixtures) {
  const bool is_path = ref.find('/') != std::string::npos || fs::path(ref).extension() == ".json";
  if (!is_path) return fixtures / (ref + ".json");
  fs::path p(ref);
  return p.is_absolute() ? p : base / p;
}

class Materials {
 public:
  Materials(const Settings& s, fs::path fixtures) : s_(s), fixtures_(std::move(fixtures)) {}

  lcp::WallModel wall(const std::string& key, const std::string& ref) {
    const fs::path p = resolve(ref, base(key), fixtures_);
    nlohmann::json j = lcp::read_json_file(p);
    lcp::WallModel w = lcp::wall_from_json(j, p.stem().string());
    record(ref, std::move(j));
    return w;
  }

  lcp::AtomModel atom(const std::string& ref) {
    const fs::path p = resolve(ref, base("atom"), fixtures_);
    nlohmann::json j = lcp::read_json_file(p);
    lcp::AtomModel a = lcp::atom_from_json(j);
    record(ref, std::move(j));
    return a;
  }

  ojson json() const {
    ojson out = ojson::object();
    for (const auto& l : loaded_) out[l.name] = ojson::parse(l.source.dump());
    return out;
  }

 private:
  fs::path base(const std::string& key) const {
    auto it = s_.base_dir.find(key);
    return it == s_.base_dir.end() ? fs::current_path() : it->second;
  }
  void record(const std::string& name, nlohmann::json j) {
    for (const auto& l : loaded_)
      if (l.name == name) return;
    loaded_.push_back({name, std::move(j)});
  }

  const Settings& s_;
  fs::path fixtures_;
  std::vector<Loaded> loaded_;
};

// --------------------------------------------------------------- output

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Output {
  ojson header;
  Table table;
  std::optional<ojson> report;       // audit only
  std::vector<std::string> summary;  // human-readable lines (audit)
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

std::string render_csv(const Output& o) {
  std::ostringstream out;
  out << "# " << o.header.at("tool").get<std::string>() << " " << o.header.at("version").get<std::string>() << "\n";
  for (const auto& [k, v] : o.header.items()) {
    if (k == "tool" || k == "version") continue;
    out << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  if (o.report) {
    ojson brief = *o.report;
    brief.erase("points");
    out << "# report: " << brief.dump() << "\n";
  }
  for (std::size_t i = 0; i < o.table.columns.size(); ++i) out << (i ? "," : "") << o.table.columns[i];
  out << "\n";
  for (const auto& row : o.table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ",";
      std::visit(
          [&](const auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, double>)
              out << format_double(c);
            else
              out << c;
          },
          row[i]);
    }
    out << "\n";
  }
  return out.str();
}

std::string render_json(const Output& o) {
  ojson j;
  j["header"] = o.header;
  if (o.report) {
    j["report"] = *o.report;
  } else {
    j["columns"] = o.table.columns;
    ojson rows = ojson::array();
    for (const auto& row : o.table.rows) {
      ojson r = ojson::array();
      for (const auto& c : row) std::visit([&](const auto& v) { r.push_back(v); }, c);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  }
  return j.dump(2) + "\n";
}

// Write to a temporary sibling and rename over the target.
void write_atomically(const fs::path& target, const std::string& content) {
  const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
  const fs::path tmp = dir / ("." + target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw lcp::IoError("cannot create '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw lcp::IoError("cannot write '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw lcp::IoError("cannot rename onto '" + target.string() + "': " + ec.message());
  }
}

// ------------------------------------------------------------- commands

lcp::EvaluationPoint point_of(const Settings& s) {
  const lcp::EvaluationPoint pt{get_number(s, "a_um") * 1e-4, get_number(s, "T_K")};
  if (!(pt.a > 0.0) || !std::isfinite(pt.a)) throw lcp::ConfigError("a_um must be > 0");
  if (!(pt.T >= 0.0) || !std::isfinite(pt.T)) throw lcp::ConfigError("T_K must be >= 0");
  return pt;
}

void diagnostics_cells(const lcp::Diagnostics& d, std::vector<Cell>& row) {
  row.insert(row.end(), {static_cast<long long>(d.l_max), d.zeta_cut, d.truncation_bound, d.quadrature_error,
                         static_cast<long long>(d.evaluations), static_cast<long long>(d.subdivisions)});
}
const std::vector<std::string> kDiagnosticColumns{"l_max",           "zeta_cut",    "truncation_bound",
                                                  "quadrature_error", "evaluations", "subdivisions"};

Table cmd_energy(const Settings& s, Materials& m, const lcp::QuadratureSpec& q) {
  const auto wall = m.wall("wall", get_string(s, "wall"));
  const auto atom = m.atom(get_string(s, "atom"));
  const auto pt = point_of(s);
  const lcp::ComputationResult r =
      pt.T > 0.0 ? lcp::free_energy(wall, atom, pt, q) : lcp::energy_T0(wall, atom, pt.a, q);
  Table t;
  t.columns = {"a_cm", "T_K", "tau", "free_energy_erg", "reduced_cm3"};
  t.columns.insert(t.columns.end(), kDiagnosticColumns.begin(), kDiagnosticColumns.end());
  std::vector<Cell> row{pt.a, pt.T, pt.tau(), r.free_energy, r.reduced};
  diagnostics_cells(r.diagnostics, row);
  t.rows.push_back(std::move(row));
  return t;
}

Table cmd_entropy(const Settings& s, Materials& m, const lcp::QuadratureSpec& q) {
  const auto wall = m.wall("wall", get_string(s, "wall"));
  const auto atom = m.atom(get_string(s, "atom"));
  const auto pt = point_of(s);
  if (!(pt.T > 0.0)) throw lcp::ConfigError("entropy needs T_K > 0");
  const auto r = lcp::entropy(wall, atom, pt, q);
  const auto& e = *r.diagnostics.entropy;
  Table t;
  t.columns = {"a_cm",   "T_K",          "tau",           "entropy_erg_per_K", "free_energy_erg",
               "step_K", "richardson_h", "richardson_h2", "inconsistency"};
  t.columns.insert(t.columns.end(), kDiagnosticColumns.begin(), kDiagnosticColumns.end());
  std::vector<Cell> row{pt.a, pt.T, pt.tau(), *r.entropy, r.free_energy, e.step, e.richardson_h, e.richardson_h2,
                        e.inconsistency};
  diagnostics_cells(r.diagnostics, row);
  t.rows.push_back(std::move(row));
  return t;
}

Table cmd_sweep(const Settings& s, Materials& m, const lcp::QuadratureSpec& q) {
  const std::string axis = get_string(s, "axis");
  if (axis != "a" && axis != "T") throw lcp::ConfigError("axis must be 'a' or 'T'");
  const std::string spacing = get_string(s, "spacing");
  if (spacing != "linear" && spacing != "log") throw lcp::ConfigError("spacing must be 'linear' or 'log'");
  const double from = get_number(s, "from");
  const double to = get_number(s, "to");
  const std::size_t n = get_count(s, "points");
  if (!(from > 0.0 && to > from && std::isfinite(to))) throw lcp::ConfigError("sweep range must satisfy 0 < from < to");
  if (n < 2) throw lcp::ConfigError("sweep needs at least 2 points");
  const auto& models_json = s.values.at("models");
  if (!models_json.is_array() || models_json.empty()) throw lcp::ConfigError("'models' must be a non-empty list");

  const auto atom = m.atom(get_string(s, "atom"));
  std::vector<std::pair<std::string, lcp::WallModel>> walls;
  for (const auto& name : models_json) {
    if (!name.is_string()) throw lcp::ConfigError("'models' entries must be strings");
    walls.emplace_back(name.get<std::string>(), m.wall("models", name.get<std::string>()));
  }
  const auto fixed = point_of(s);

  Table t;
  t.columns = {axis == "a" ? "a_cm" : "T_K", "tau"};
  for (const auto& [name, w] : walls) {
    t.columns.push_back(name + "_free_energy_erg");
    t.columns.push_back(name + "_entropy_erg_per_K");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    const double v = spacing == "linear" ? from + (to - from) * f : from * std::pow(to / from, f);
    const lcp::EvaluationPoint pt = axis == "a" ? lcp::EvaluationPoint{v * 1e-4, fixed.T}
                                                : lcp::EvaluationPoint{fixed.a, v};
    if (!(pt.T > 0.0)) throw lcp::ConfigError("sweep needs T_K > 0");
    std::vector<Cell> row{axis == "a" ? pt.a : pt.T, pt.tau()};
    for (const auto& [name, w] : walls) {
      const auto r = lcp::entropy(w, atom, pt, q);
      row.push_back(r.free_energy);
      row.push_back(*r.entropy);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cmd_coeff(const Settings& s, Materials& m) {
  const auto wall = m.wall("wall", get_string(s, "wall"));
  const auto pt = point_of(s);
  if (!(pt.T > 0.0)) throw lcp::ConfigError("coeff needs T_K > 0");
  const double y0 = get_number(s, "y_from");
  const double y1 = get_number(s, "y_to");
  const std::size_t n = get_count(s, "points");
  if (!(y0 >= 0.0 && y1 > y0 && std::isfinite(y1))) throw lcp::ConfigError("y range must satisfy 0 <= y_from < y_to");
  if (n < 2) throw lcp::ConfigError("coeff needs at least 2 points");
  const auto& ls = s.values.at("l");
  if (!ls.is_array() || ls.empty()) throw lcp::ConfigError("'l' must be a non-empty list of indices");

  Table t;
  t.columns = {"l", "zeta", "y", "r_tm", "r_te"};
  for (const auto& lj : ls) {
    if (!lj.is_number_integer() || lj.get<long long>() < 0) throw lcp::ConfigError("'l' entries must be >= 0");
    const auto l = lj.get<std::size_t>();
    const double zeta = pt.zeta(l);
    for (std::size_t i = 0; i < n; ++i) {
      const double y = y0 + (y1 - y0) * static_cast<double>(i) / static_cast<double>(n - 1);
      if (y < zeta) continue;  // outside the integration domain y >= zeta_l
      const auto r = lcp::wall_coefficients(wall, pt, l, y);
      t.rows.push_back({static_cast<long long>(l), zeta, y, r.r_tm, r.r_te});
    }
  }
  return t;
}

Output cmd_audit(const Settings& s, Materials& m, const lcp::QuadratureSpec& q) {
  lcp::AuditConfig cfg{m.wall("wall", get_string(s, "wall")), m.atom(get_string(s, "atom"))};
  cfg.a = get_number(s, "a_um") * 1e-4;
  if (!(cfg.a > 0.0) || !std::isfinite(cfg.a)) throw lcp::ConfigError("a_um must be > 0");
  cfg.theta = get_number(s, "theta");
  cfg.quadrature = q;
  cfg.tau_grid.clear();
  const auto& grid = s.values.at("tau_grid");
  if (!grid.is_array()) throw lcp::ConfigError("'tau_grid' must be a list of numbers");
  for (const auto& g : grid) {
    if (!g.is_number()) throw lcp::ConfigError("'tau_grid' must be a list of numbers");
    cfg.tau_grid.push_back(g.get<double>());
  }
  try {
    cfg.validate();
  } catch (const lcp::DomainError& e) {
    throw lcp::ConfigError(e.what());
  }
  const lcp::NernstReport r = lcp::run_audit(cfg);

  Output o;
  o.report = lcp::to_json(r);
  o.table.columns = {"tau", "T_K", "x", "entropy_erg_per_K", "entropy_uncertainty", "free_energy_erg", "residual"};
  for (const auto& p : r.points)
    o.table.rows.push_back({p.tau, p.T, p.x, p.entropy, p.entropy_uncertainty, p.free_energy, p.residual});

  char line[256];
  std::snprintf(line, sizeof line, "wall %s (%s), a = %.4g um, alpha0 = %.6g cm^3", r.wall.c_str(),
                r.variant.c_str(), r.a * 1e4, r.alpha0);
  o.summary.push_back(line);
  std::snprintf(line, sizeof line, "%8s %10s %24s %12s", "tau", "T [K]", "S [erg/K]", "residual");
  o.summary.push_back(line);
  for (const auto& p : r.points) {
    std::snprintf(line, sizeof line, "%8.4g %10.4g %24.16e %12.3e", p.tau, p.T, p.entropy, p.residual);
    o.summary.push_back(line);
  }
  std::snprintf(line, sizeof line, "s0 = %.6e +- %.2e erg/K   s3 = %.6e +- %.2e erg/K", r.s0, r.s0_uncertainty, r.s3,
                r.s3_uncertainty);
  o.summary.push_back(line);
  std::snprintf(line, sizeof line, "S_ref (%s) = %.6e erg/K   |s0|/S_ref = %.3e   theta = %.3g", r.s_ref_kind.c_str(),
                r.s_ref, std::abs(r.s0) / r.s_ref, r.theta);
  o.summary.push_back(line);
  o.summary.push_back("verdict: " + std::string(lcp::to_string(r.verdict)));
  return o;
}

// ----------------------------------------------------------------- main

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON run configuration (strict; flags override it)");
  sub->add_option("--out", f.out, "Output file, written atomically (default: stdout)");
  sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", f.tol, "Relative tolerance of the free energy");
  sub->add_option("--lmax", f.lmax, "Budget of Matsubara terms");
  sub->add_option("--fixtures", f.fixtures, "Directory searched for bare material names");
}

void add_wall_atom(CLI::App* sub, Flags& f, bool with_atom = true) {
  sub->add_option("--wall", f.wall, "Wall material: fixture name or path to a JSON file");
  if (with_atom) sub->add_option("--atom", f.atom, "Atom: fixture name or path (default rb)");
  sub->add_option("--a-um", f.a_um, "Atom-wall separation in micrometres");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder free energy, entropy and Nernst-theorem audit"};
  app.set_version_flag("--version", std::string(lcp::version));
  app.require_subcommand(1);
  Flags f;

  auto* energy = app.add_subcommand("energy", "Free energy at (a, T); T = 0 gives the zero-temperature energy");
  auto* entropy = app.add_subcommand("entropy", "Entropy -dF/dT at (a, T)");
  auto* sweep = app.add_subcommand("sweep", "Free energy and entropy of several walls along a or T");
  auto* audit = app.add_subcommand("audit", "Nernst-theorem audit of one wall");
  auto* coeff = app.add_subcommand("coeff", "Reflection coefficients on a y grid");
  for (auto* sub : {energy, entropy, sweep, audit, coeff}) add_common(sub, f);
  for (auto* sub : {energy, entropy}) {
    add_wall_atom(sub, f);
    sub->add_option("--T-K", f.T_K, "Temperature in K");
  }
  sweep->add_option("--models", f.models, "Comma-separated wall list");
  sweep->add_option("--atom", f.atom, "Atom: fixture name or path (default rb)");
  sweep->add_option("--axis", f.axis, "Sweep variable")->check(CLI::IsMember({"a", "T"}));
  sweep->add_option("--from", f.from, "Start of the range (um or K)");
  sweep->add_option("--to", f.to, "End of the range (um or K)");
  sweep->add_option("--points", f.points, "Number of points (>= 2)");
  sweep->add_option("--spacing", f.spacing, "Point spacing")->check(CLI::IsMember({"linear", "log"}));
  sweep->add_option("--a-um", f.a_um, "Fixed separation for a T sweep");
  sweep->add_option("--T-K", f.T_K, "Fixed temperature for an a sweep");
  add_wall_atom(audit, f);
  audit->add_option("--tau-grid", f.tau_grid, "Comma-separated descending tau values");
  audit->add_option("--theta", f.theta, "Verdict threshold relative to S_ref");
  add_wall_atom(coeff, f, false);
  coeff->add_option("--T-K", f.T_K, "Temperature in K");
  coeff->add_option("--l", f.l, "Comma-separated Matsubara indices");
  coeff->add_option("--y-from", f.y_from, "Start of the y grid");
  coeff->add_option("--y-to", f.y_to, "End of the y grid");
  coeff->add_option("--points", f.points, "Number of y points (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  Settings s;
  s.command = sub->get_name();
  try {
    s.values = defaults_for(s.command);
    if (!f.config.empty()) merge_config_file(s, f.config);
    merge_flags(s, *sub, f);
    if (s.command != "sweep" && !s.values.contains("wall")) throw lcp::ConfigError("no wall given (--wall)");

    const lcp::QuadratureSpec q = quadrature_of(s);
    const std::string format = get_string(s, "format");
    if (format != "csv" && format != "json") throw lcp::ConfigError("format must be csv or json");

    fs::path fixtures = LIFSHITZ_CP_FIXTURE_DIR;
    if (const char* env = std::getenv("LIFSHITZ_CP_FIXTURES"); env && *env) fixtures = env;
    if (!f.fixtures.empty()) fixtures = f.fixtures;
    Materials materials(s, fixtures);

    Output out;
    if (s.command == "energy")
      out.table = cmd_energy(s, materials, q);
    else if (s.command == "entropy")
      out.table = cmd_entropy(s, materials, q);
    else if (s.command == "sweep")
      out.table = cmd_sweep(s, materials, q);
    else if (s.command == "coeff")
      out.table = cmd_coeff(s, materials);
    else
      out = cmd_audit(s, materials, q);

    ojson config = s.values;
    config.erase("format");
    out.header = {{"tool", "lifshitz_cp"},
                  {"version", std::string(lcp::version)},
                  {"command", s.command},
                  {"config", config},
                  {"materials", materials.json()},
                  {"quadrature", quadrature_json(q)}};

    const std::string text = format == "csv" ? render_csv(out) : render_json(out);
    if (f.out.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw lcp::IoError("cannot write to stdout");
    } else {
      write_atomically(f.out, text);
      for (const auto& line : out.summary) std::cout << line << "\n";
    }
    return 0;
  } catch (const lcp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lcp::DomainError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lcp::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const lcp::IndeterminateError& e) {
    std::cerr << "indeterminate: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const lcp::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
