#pragma once

// Integrals of the form  int_0^tmax f(t) e^{-t} dt  with a composite 15-point
// Gauss-Kronrod rule on a graded panel layout, plus adaptive bisection of the
// worst panel when the composite estimate misses the tolerance.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lcp {

/// Evaluates f at every node of `t` into `out` (same length).
using BatchIntegrand = std::function<void(std::span<const double> t, std::span<double> out)>;

struct ExpQuadratureOptions {
  double rel_tol = 1e-12;
  double abs_tol = 0.0;
  // Length scale of the finest feature near t = 0; panels are graded
  // geometrically from this scale up to 1.
  double feature_scale = 1.0;
  double t_max = 40.0;
  std::size_t max_subdivisions = 200;
};

struct ExpQuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  std::size_t panels = 0;
  std::size_t subdivisions = 0;
  bool converged = false;
};

ExpQuadratureResult integrate_exp_weighted(const BatchIntegrand& f, const ExpQuadratureOptions& opt);

/// Smallest even T >= 40 with int_T^inf 2(zeta+t)^2 e^{-t} dt below
/// `rel` times the same integral from 0.
double exp_tail_cutoff(double zeta, double rel);

/// Panel edges used for the initial composite rule.
std::vector<double> graded_panels(double feature_scale, double t_max);

}  // namespace lcp
