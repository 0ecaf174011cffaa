#include "lifshitz_cp/lifshitz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"
#include "lifshitz_cp/kernels.hpp"
#include "lifshitz_cp/quadrature.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace lcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double r0_of(double eps0) { return (eps0 - 1.0) / (eps0 + 1.0); }

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

// Wall quantities that depend on T but not on the Matsubara index.
struct WallState {
  const WallModel* wall = nullptr;
  double T = 0.0;
  double a = 0.0;
  double omega_c = 0.0;
  bool conducts = false;  // sigma(0, T) > 0 (dc and screened walls)
  double kappa_a = 0.0;   // screened walls
};

WallState make_state(const WallModel& wall, double a, double T) {
  WallState st;
  st.wall = &wall;
  st.T = T;
  st.a = a;
  st.omega_c = PhysicalConstants::c / (2.0 * a);
  if (const auto* w = std::get_if<OscillatorPlusDcWall>(&wall.response)) {
    st.conducts = conducts(w->conductivity, T);
  } else if (const auto* w = std::get_if<ScreenedWall>(&wall.response)) {
    st.conducts = conducts(w->conductivity, T);
    const ScreeningSpec& sc = w->screening;
    if (T == 0.0 && sc.statistics == CarrierStatistics::MaxwellBoltzmann) {
      // Debye-Hueckel length at T -> 0: vanishes unless the carriers do.
      st.kappa_a = sc.n_law.positive_at(0.0) ? kInf : 0.0;
    } else {
      st.kappa_a = 2.0 * a * screening_kappa(sc, T);
    }
  }
  return st;
}

enum class PlanKind { Closed, Standard, Screened, StaticScreened };

// How to obtain J = e^{zeta} I for one frequency.
struct TermPlan {
  PlanKind kind = PlanKind::Closed;
  double closed = 0.0;
  kernels::StandardArgs standard{};
  kernels::ScreenedArgs screened{};
  kernels::StaticScreenedArgs stat{};
  double feature_scale = 1.0;
};

TermPlan closed_plan(double j) {
  TermPlan p;
  p.closed = j;
  return p;
}

TermPlan standard_plan(double zeta, double eps) {
  if (eps == 1.0) return closed_plan(0.0);
  if (std::isinf(eps)) return closed_plan(2.0 * (zeta * zeta + 2.0 * zeta + 2.0));
  TermPlan p;
  p.kind = PlanKind::Standard;
  p.standard = {zeta, eps};
  p.feature_scale = std::min(zeta, 1.0);
  return p;
}

// Zero frequency: the integrand is 2y^2 r_tm(0, y) with an analytic coefficient.
TermPlan static_plan(const WallState& st) {
  return std::visit(
      overloaded{
          [](const OscillatorWall& w) { return closed_plan(4.0 * r0_of(w.core.static_permittivity())); },
          [&](const OscillatorPlusDcWall& w) {
            return closed_plan(st.conducts ? 4.0 : 4.0 * r0_of(w.core.static_permittivity()));
          },
          [](const PlasmaWall&) { return closed_plan(4.0); },
          [](const DrudeWall&) { return closed_plan(4.0); },
          [&](const ScreenedWall& w) {
            const double eps0 = w.screening.eps0_host;
            if (std::isinf(st.kappa_a)) return closed_plan(4.0);
            if (st.kappa_a == 0.0) return closed_plan(4.0 * r0_of(eps0));
            TermPlan p;
            p.kind = PlanKind::StaticScreened;
            p.stat = {eps0, st.kappa_a};
            p.feature_scale = std::min(st.kappa_a, 1.0);
            return p;
          },
      },
      st.wall->response);
}

TermPlan dynamic_plan(const WallState& st, double zeta) {
  const double xi = st.omega_c * zeta;
  return std::visit(
      overloaded{
          [&](const OscillatorWall& w) { return standard_plan(zeta, eps_core(w.core, xi)); },
          [&](const OscillatorPlusDcWall& w) {
            return standard_plan(zeta, eps_with_dc(w.core, w.conductivity, xi, st.T));
          },
          [&](const PlasmaWall& w) { return standard_plan(zeta, eps_plasma(w.plasma, xi)); },
          [&](const DrudeWall& w) { return standard_plan(zeta, eps_drude(w.plasma, w.gamma, xi)); },
          [&](const ScreenedWall& w) {
            const double eps = eps_core(w.core, xi);
            const double delta = st.conducts ? dc_addition(w.conductivity, xi, st.T) : 0.0;
            if (delta == 0.0) return standard_plan(zeta, eps);
            const double eps_t = eps + delta;
            if (std::isinf(st.kappa_a)) return standard_plan(zeta, eps_t);
            const double m = st.kappa_a * st.kappa_a * w.screening.eps0_host * eps_t / (eps * delta);
            if (!std::isfinite(m)) return standard_plan(zeta, eps_t);
            TermPlan p;
            p.kind = PlanKind::Screened;
            p.screened = {zeta, eps, eps_t, delta, m, st.kappa_a == 0.0};
            double s = std::min(zeta, 1.0);
            // Branch point of eta_tilde at t = sqrt(zeta^2 - m) - zeta when m < zeta^2.
            if (m < zeta * zeta) s = std::min(s, m / (zeta + std::sqrt(zeta * zeta - m)));
            p.feature_scale = s;
            return p;
          },
      },
      st.wall->response);
}

TermPlan plan_for(const WallState& st, double zeta, bool zero_frequency) {
  return zero_frequency ? static_plan(st) : dynamic_plan(st, zeta);
}

struct Inner {
  double j = 0.0;  // e^{zeta} I
  double error = 0.0;
  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
};

Inner integrate_plan(const TermPlan& plan, double zeta, const QuadratureSpec& q) {
  if (plan.kind == PlanKind::Closed) return {plan.closed, 0.0, 0, 0};
  const kernels::KernelSet& ks = kernels::active_kernels();
  BatchIntegrand f;
  switch (plan.kind) {
    case PlanKind::Standard:
      f = [&](std::span<const double> t, std::span<double> out) { ks.standard(plan.standard, t, out); };
      break;
    case PlanKind::Screened:
      f = [&](std::span<const double> t, std::span<double> out) { ks.screened(plan.screened, t, out); };
      break;
    case PlanKind::StaticScreened:
      f = [&](std::span<const double> t, std::span<double> out) { ks.static_screened(plan.stat, t, out); };
      break;
    case PlanKind::Closed:
      break;
  }
  ExpQuadratureOptions opt;
  opt.rel_tol = 0.05 * q.tolerance;
  opt.feature_scale = plan.feature_scale;
  opt.t_max = exp_tail_cutoff(zeta, std::min(1e-3 * q.tolerance, 1e-19));
  opt.max_subdivisions = q.max_subdivisions;
  const auto r = integrate_exp_weighted(f, opt);
  if (!r.converged)
    throw ConvergenceError("inner integral at zeta = " + std::to_string(zeta) +
                           " did not reach tolerance within " + std::to_string(q.max_subdivisions) +
                           " subdivisions (estimate " + std::to_string(r.abs_error) + ")");
  return {r.value, r.abs_error, r.evaluations, r.subdivisions};
}

// Bound on sum_{zeta_l > z} tau g(zeta_l) for g = 2 e^{-zeta}(zeta^2 + 2 zeta + 2):
// the integral from z plus one extra term.
double tail_bound(double z, double tau) {
  const double e = 2.0 * std::exp(-z);
  return e * (z * z + 4.0 * z + 6.0) + tau * e * (z * z + 2.0 * z + 2.0);
}

double summation_cutoff(double tau, double tol) {
  const double rel = std::min(1e-3 * tol, 1e-19);
  double z = 40.0;
  while (tail_bound(z, tau) > rel * 12.0) z += 1.0;
  return z;
}

void validate_inputs(const WallModel& wall, const AtomModel& atom, const QuadratureSpec& q) {
  wall.validate();
  atom.validate();
  q.validate();
}

struct SumResult {
  double phi = 0.0;
  Diagnostics diag;
};

std::size_t term_count(const EvaluationPoint& pt, const QuadratureSpec& q) {
  const double l_cut = std::ceil(summation_cutoff(pt.tau(), q.tolerance) / pt.tau());
  if (!(l_cut <= static_cast<double>(q.max_terms)))
    throw ConvergenceError("Matsubara sum needs " + std::to_string(static_cast<unsigned long long>(l_cut)) +
                           " terms, budget is " + std::to_string(q.max_terms));
  return static_cast<std::size_t>(l_cut);
}

// fixed_L pins the number of terms; entropy uses it so that all points of a
// difference stencil are truncated at the same index.
SumResult matsubara_sum(const WallModel& wall, const AtomModel& atom_in, const EvaluationPoint& pt,
                        const QuadratureSpec& q, std::size_t fixed_L = 0) {
  const AtomModel atom = atom_in.at_separation(pt.a);
  const double tau = pt.tau();
  const double zeta_cut = summation_cutoff(tau, q.tolerance);
  const double l_cut = fixed_L > 0 ? static_cast<double>(fixed_L) : std::ceil(zeta_cut / tau);
  if (!(l_cut <= static_cast<double>(q.max_terms)))
    throw ConvergenceError("Matsubara sum needs " + std::to_string(static_cast<unsigned long long>(l_cut)) +
                           " terms, budget is " + std::to_string(q.max_terms));
  const auto L = static_cast<std::size_t>(l_cut);
  const WallState st = make_state(wall, pt.a, pt.T);

  std::vector<double> terms(L + 1);
  std::vector<double> errors(L + 1);
  std::vector<std::size_t> evals(L + 1);
  std::vector<std::size_t> subdivs(L + 1);
  detail::parallel_for(L + 1, detail::resolve_threads(q.threads), 64, [&](std::size_t l) {
    const double zeta = pt.zeta(l);
    const double alpha = alpha_dynamic(atom, zeta);
    if (alpha == 0.0) return;
    const Inner in = integrate_plan(plan_for(st, zeta, l == 0), zeta, q);
    const double w = (l == 0 ? 0.5 : 1.0) * alpha * std::exp(-zeta);
    terms[l] = w * in.j;
    errors[l] = w * in.error;
    evals[l] = in.evaluations;
    subdivs[l] = in.subdivisions;
  });

  SumResult out;
  detail::NeumaierSum sum;
  double err = 0.0;
  for (std::size_t l = 0; l <= L; ++l) {
    sum.add(terms[l]);
    err += errors[l];
    out.diag.evaluations += evals[l];
    out.diag.subdivisions += subdivs[l];
  }
  out.phi = sum.value();
  out.diag.l_max = L;
  out.diag.zeta_cut = zeta_cut;
  const double scale = std::abs(out.phi);
  out.diag.truncation_bound = scale > 0.0 ? atom.alpha0 * tail_bound(L * tau, tau) / tau / scale : 0.0;
  out.diag.quadrature_error = scale > 0.0 ? err / scale : 0.0;
  out.diag.term_errors = std::move(errors);
  out.diag.kernel = std::string(kernels::active_kernels().name);
  return out;
}

}  // namespace

double EvaluationPoint::omega_c() const { return PhysicalConstants::c / (2.0 * a); }

double EvaluationPoint::T_eff() const { return PhysicalConstants::hbar * omega_c() / PhysicalConstants::k_B; }

double EvaluationPoint::tau() const { return 2.0 * pi * T / T_eff(); }

void EvaluationPoint::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("separation must be > 0");
  if (!(T >= 0.0) || !std::isfinite(T)) throw DomainError("temperature must be >= 0");
}

void QuadratureSpec::validate() const {
  if (!(tolerance > 0.0 && tolerance <= 1e-4)) throw DomainError("tolerance must lie in (0, 1e-4]");
  if (max_terms < 1) throw DomainError("term budget must be >= 1");
  if (!(entropy_step > 0.0 && entropy_step < 0.5))
    throw DomainError("entropy step must lie in (0, 0.5) of T");
  if (!(entropy_step_cap > 0.0)) throw DomainError("entropy step cap must be positive");
}

double thermal_prefactor(const EvaluationPoint& pt) {
  return PhysicalConstants::k_B * pt.T / (8.0 * pt.a * pt.a * pt.a);
}

std::vector<double> matsubara_grid(const EvaluationPoint& pt, std::size_t l_max) {
  pt.validate();
  std::vector<double> z(l_max + 1);
  for (std::size_t l = 0; l <= l_max; ++l) z[l] = pt.zeta(l);
  return z;
}

ComputationResult free_energy(const WallModel& wall, const AtomModel& atom, const EvaluationPoint& pt,
                              const QuadratureSpec& q) {
  validate_inputs(wall, atom, q);
  pt.validate();
  if (!(pt.T > 0.0)) throw DomainError("free_energy requires T > 0; use energy_T0");
  SumResult s = matsubara_sum(wall, atom, pt, q);
  ComputationResult res;
  res.reduced = s.phi;
  res.free_energy = -thermal_prefactor(pt) * s.phi;
  res.diagnostics = std::move(s.diag);
  return res;
}

ComputationResult entropy(const WallModel& wall, const AtomModel& atom, const EvaluationPoint& pt,
                          const QuadratureSpec& q) {
  ComputationResult centre = free_energy(wall, atom, pt, q);
  const double allowed = 100.0 * q.tolerance * std::abs(centre.free_energy) / pt.T;
  double h = std::min(q.entropy_step * pt.T, q.entropy_step_cap * pt.T_eff());
  // Stiff carrier laws can need a shorter step; halve until the two
  // extrapolations agree.
  constexpr int kMaxHalvings = 8;
  EntropyAudit audit;
  double dFdT = 0.0;
  for (int attempt = 0;; ++attempt) {
    const std::size_t L = term_count({pt.a, pt.T - h}, q);
    auto F = [&](double T) {
      const EvaluationPoint p{pt.a, T};
      return -thermal_prefactor(p) * matsubara_sum(wall, atom, p, q, L).phi;
    };
    auto D = [&](double step) { return (F(pt.T + step) - F(pt.T - step)) / (2.0 * step); };
    const double d1 = D(h);
    const double d2 = D(0.5 * h);
    const double d4 = D(0.25 * h);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d4 - d2) / 3.0;
    dFdT = (16.0 * r2 - r1) / 15.0;
    audit.step = h;
    audit.richardson_h = r1;
    audit.richardson_h2 = r2;
    audit.inconsistency = std::abs(r1 - r2);
    audit.allowed = allowed;
    if (audit.inconsistency <= allowed) break;
    if (attempt == kMaxHalvings)
      throw ConvergenceError("entropy step audit failed at T = " + std::to_string(pt.T) +
                             " K: Richardson estimates differ by " + fmt_g(audit.inconsistency) +
                             " erg/K, allowed " + fmt_g(allowed) + " (step " + fmt_g(h) + " K)");
    h *= 0.5;
  }
  centre.entropy = -dFdT;
  centre.diagnostics.entropy = audit;
  return centre;
}

namespace {

// Outer feature scale for the continuum integral: the smallest frequency
// (in units of omega_c) at which any response function changes shape.
double continuum_feature_scale(const WallModel& wall, const AtomModel& atom, double omega_c) {
  double s = 1.0;
  if (atom.beta > 0.0) s = std::min(s, 1.0 / atom.beta);
  auto core = [&](const OscillatorModel& m) {
    for (const auto& o : m.oscillators) s = std::min(s, o.omega / omega_c);
  };
  std::visit(overloaded{
                 [&](const OscillatorWall& w) { core(w.core); },
                 [&](const OscillatorPlusDcWall& w) { core(w.core); },
                 [&](const PlasmaWall& w) {
                   if (std::isfinite(w.plasma.omega_p)) s = std::min(s, w.plasma.omega_p / omega_c);
                 },
                 [&](const DrudeWall& w) {
                   s = std::min(s, w.plasma.omega_p / omega_c);
                   if (w.gamma > 0.0) s = std::min(s, w.gamma / omega_c);
                 },
                 [&](const ScreenedWall& w) {
                   core(w.core);
                   if (std::isfinite(w.conductivity.gamma_free))
                     s = std::min(s, w.conductivity.gamma_free / omega_c);
                   if (w.conductivity.mode == ConductivityLaw::Mode::Ballistic)
                     s = std::min(s, w.conductivity.omega_p / omega_c);
                 },
             },
             wall.response);
  return s;
}

}  // namespace

ComputationResult energy_T0(const WallModel& wall, const AtomModel& atom_in, double a, const QuadratureSpec& q) {
  validate_inputs(wall, atom_in, q);
  const AtomModel atom = atom_in.at_separation(a);
  const EvaluationPoint pt{a, 0.0};
  pt.validate();
  const WallState st = make_state(wall, a, 0.0);
  const unsigned threads = detail::resolve_threads(q.threads);

  std::size_t evaluations = 0;
  std::size_t subdivisions = 0;
  // g(zeta) = alpha(zeta) I(zeta) = e^{-zeta} [alpha(zeta) J(zeta)].
  BatchIntegrand outer = [&](std::span<const double> zeta, std::span<double> out) {
    std::vector<std::size_t> ev(zeta.size());
    std::vector<std::size_t> sd(zeta.size());
    detail::parallel_for(zeta.size(), threads, 4, [&](std::size_t i) {
      const double alpha = alpha_dynamic(atom, zeta[i]);
      if (alpha == 0.0) {
        out[i] = 0.0;
        return;
      }
      const Inner in = integrate_plan(plan_for(st, zeta[i], false), zeta[i], q);
      out[i] = alpha * in.j;
      ev[i] = in.evaluations;
      sd[i] = in.subdivisions;
    });
    for (std::size_t i = 0; i < zeta.size(); ++i) {
      evaluations += ev[i];
      subdivisions += sd[i];
    }
  };
  ExpQuadratureOptions opt;
  opt.rel_tol = 0.1 * q.tolerance;
  opt.feature_scale = continuum_feature_scale(wall, atom, pt.omega_c());
  opt.t_max = summation_cutoff(0.0, q.tolerance);
  opt.max_subdivisions = q.max_subdivisions;
  const auto r = integrate_exp_weighted(outer, opt);
  if (!r.converged)
    throw ConvergenceError("continuum frequency integral did not reach tolerance (estimate " +
                           std::to_string(r.abs_error) + ")");

  ComputationResult res;
  res.reduced = r.value;
  res.energy_T0 = -PhysicalConstants::hbar * PhysicalConstants::c / (32.0 * pi * std::pow(a, 4)) * r.value;
  res.free_energy = *res.energy_T0;
  res.diagnostics.zeta_cut = opt.t_max;
  res.diagnostics.quadrature_error = r.value != 0.0 ? r.abs_error / std::abs(r.value) : 0.0;
  res.diagnostics.evaluations = evaluations + r.evaluations;
  res.diagnostics.subdivisions = subdivisions + r.subdivisions;
  res.diagnostics.kernel = std::string(kernels::active_kernels().name);
  return res;
}

TermValue matsubara_term(const WallModel& wall, const AtomModel& atom_in, const EvaluationPoint& pt,
                         std::size_t l, const QuadratureSpec& q) {
  validate_inputs(wall, atom_in, q);
  const AtomModel atom = atom_in.at_separation(pt.a);
  pt.validate();
  if (!(pt.T > 0.0)) throw DomainError("matsubara_term requires T > 0");
  const WallState st = make_state(wall, pt.a, pt.T);
  const double zeta = pt.zeta(l);
  const Inner in = integrate_plan(plan_for(st, zeta, l == 0), zeta, q);
  const double e = std::exp(-zeta);
  return {alpha_dynamic(atom, zeta), e * in.j, e * in.error};
}

ReflectionPair wall_coefficients(const WallModel& wall, const EvaluationPoint& pt, std::size_t l, double y) {
  wall.validate();
  pt.validate();
  const WallState st = make_state(wall, pt.a, pt.T);
  const double zeta = pt.zeta(l);
  const FrequencyPoint fp{zeta, y, l};
  fp.validate();
  if (l == 0) {
    return std::visit(
        overloaded{
            [&](const OscillatorWall& w) { return standard_pair(w.core.static_permittivity(), fp); },
            [&](const OscillatorPlusDcWall& w) {
              return st.conducts ? ReflectionPair{1.0, 0.0}
                                 : standard_pair(w.core.static_permittivity(), fp);
            },
            [](const PlasmaWall&) { return ReflectionPair{1.0, 0.0}; },
            [](const DrudeWall&) { return ReflectionPair{1.0, 0.0}; },
            [&](const ScreenedWall& w) {
              const ScreeningContext ctx{w.screening.eps0_host, 0.0, st.kappa_a, w.screening.eps0_host};
              return ReflectionPair{modified_tm(ctx, fp), 0.0};
            },
        },
        wall.response);
  }
  const double xi = st.omega_c * zeta;
  return std::visit(
      overloaded{
          [&](const OscillatorWall& w) { return standard_pair(eps_core(w.core, xi), fp); },
          [&](const OscillatorPlusDcWall& w) {
            return standard_pair(eps_with_dc(w.core, w.conductivity, xi, pt.T), fp);
          },
          [&](const PlasmaWall& w) { return standard_pair(eps_plasma(w.plasma, xi), fp); },
          [&](const DrudeWall& w) { return standard_pair(eps_drude(w.plasma, w.gamma, xi), fp); },
          [&](const ScreenedWall& w) {
            const double eps = eps_core(w.core, xi);
            const double delta = st.conducts ? dc_addition(w.conductivity, xi, pt.T) : 0.0;
            const ScreeningContext ctx{eps, delta, st.kappa_a, w.screening.eps0_host};
            return ReflectionPair{modified_tm(ctx, fp), modified_te(ctx.eps_tilde(), fp)};
          },
      },
      wall.response);
}

}  // namespace lcp
