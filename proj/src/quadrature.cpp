#include "lifshitz_cp/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lifshitz_cp/errors.hpp"

namespace lcp {

namespace {

// Kronrod abscissae (descending, centre last) and weights; Gauss 7-point
// weights belong to the odd-indexed abscissae.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kNodes = 15;
constexpr double kMinFeature = 1e-14;

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

void panel_nodes(double a, double b, double* out) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  for (std::size_t j = 0; j < 7; ++j) {
    out[j] = c - h * kXgk[j];
    out[14 - j] = c + h * kXgk[j];
  }
  out[7] = c;
}

// fv holds f(t) at the 15 nodes of panel_nodes; the e^{-t} weight is applied here.
Panel apply_rule(double a, double b, const double* nodes, const double* fv) {
  std::array<double, kNodes> g;
  for (std::size_t i = 0; i < kNodes; ++i) g[i] = fv[i] * std::exp(-nodes[i]);
  const double h = 0.5 * (b - a);
  const double fc = g[7];
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  double resabs = kWgk[7] * std::abs(fc);
  for (std::size_t j = 0; j < 7; ++j) {
    const double pair = g[j] + g[14 - j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(g[j]) + std::abs(g[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(g[j] - mean) + std::abs(g[14 - j] - mean));

  const double value = resk * h;
  resabs *= std::abs(h);
  resasc *= std::abs(h);
  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, value, err};
}

void evaluate_panels(const BatchIntegrand& f, std::span<const std::pair<double, double>> ranges,
                     std::vector<Panel>& out, std::vector<double>& nodes, std::vector<double>& values) {
  nodes.resize(ranges.size() * kNodes);
  values.resize(nodes.size());
  for (std::size_t p = 0; p < ranges.size(); ++p)
    panel_nodes(ranges[p].first, ranges[p].second, nodes.data() + p * kNodes);
  f(nodes, values);
  for (std::size_t p = 0; p < ranges.size(); ++p)
    out.push_back(apply_rule(ranges[p].first, ranges[p].second, nodes.data() + p * kNodes,
                             values.data() + p * kNodes));
}

struct Totals {
  double value = 0.0;
  double error = 0.0;
};

Totals totals(const std::vector<Panel>& panels) {
  Totals t;
  for (const auto& p : panels) {
    t.value += p.value;
    t.error += p.error;
  }
  return t;
}

}  // namespace

std::vector<double> graded_panels(double feature_scale, double t_max) {
  if (!(t_max > 2.0)) throw DomainError("graded_panels: t_max must exceed 2");
  const double s = std::clamp(feature_scale, kMinFeature, 1.0);
  std::vector<double> edges{0.0};
  for (double x = s; x < 1.0; x *= 2.0) edges.push_back(x);
  edges.push_back(1.0);
  for (double x = 2.0; x < t_max; x += 2.0) edges.push_back(x);
  edges.push_back(t_max);
  return edges;
}

double exp_tail_cutoff(double zeta, double rel) {
  const double full = 2.0 * (zeta * zeta + 2.0 * zeta + 2.0);
  double T = 40.0;
  for (;;) {
    const double x = zeta + T;
    const double tail = 2.0 * std::exp(-T) * (x * x + 2.0 * x + 2.0);
    if (tail <= rel * full || T >= 1000.0) return T;
    T += 2.0;
  }
}

ExpQuadratureResult integrate_exp_weighted(const BatchIntegrand& f, const ExpQuadratureOptions& opt) {
  const auto edges = graded_panels(opt.feature_scale, opt.t_max);
  std::vector<std::pair<double, double>> ranges;
  ranges.reserve(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) ranges.emplace_back(edges[i], edges[i + 1]);

  std::vector<Panel> panels;
  panels.reserve(ranges.size() + 2 * opt.max_subdivisions);
  std::vector<double> nodes;
  std::vector<double> values;
  evaluate_panels(f, ranges, panels, nodes, values);

  ExpQuadratureResult res;
  res.evaluations = ranges.size() * kNodes;
  Totals tot = totals(panels);
  auto target = [&](double v) { return std::max(opt.abs_tol, opt.rel_tol * std::abs(v)); };
  while (tot.error > target(tot.value) && res.subdivisions < opt.max_subdivisions) {
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double a = worst->a;
    const double b = worst->b;
    const double mid = 0.5 * (a + b);
    if (!(mid > a && mid < b)) break;
    panels.erase(worst);
    const std::array<std::pair<double, double>, 2> halves{{{a, mid}, {mid, b}}};
    std::vector<Panel> fresh;
    evaluate_panels(f, halves, fresh, nodes, values);
    // Keep panels ordered by position so the final sum is layout-deterministic.
    for (const auto& p : fresh) {
      auto pos = std::lower_bound(panels.begin(), panels.end(), p.a,
                                  [](const Panel& q, double x) { return q.a < x; });
      panels.insert(pos, p);
    }
    res.evaluations += 2 * kNodes;
    ++res.subdivisions;
    tot = totals(panels);
  }
  res.value = tot.value;
  res.abs_error = tot.error;
  res.panels = panels.size();
  res.converged = tot.error <= target(tot.value);
  return res;
}

}  // namespace lcp
