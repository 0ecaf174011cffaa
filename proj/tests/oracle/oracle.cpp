#include "oracle.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "json.hpp"

namespace oracle {

namespace {

// CODATA 2018, Gaussian units.
constexpr real kB = 1.380649e-16L;
constexpr real hbar = 1.054571817e-27L;
constexpr real c_light = 2.99792458e10L;
constexpr real q_e = 4.803204712570263e-10L;
constexpr real eV = 1.602176634e-12L;
constexpr real bohr = 0.529177210903e-8L;
constexpr real PI = 3.141592653589793238462643383279502884L;

real ev_to_omega(real x) { return x * eV / hbar; }

Law read_law(const nlohmann::json& j) {
  Law l;
  l.kind = j.at("kind").get<std::string>();
  if (l.kind == "constant") {
    l.value = j.at("value").get<double>();
  } else if (l.kind == "activated") {
    l.value = j.at("prefactor").get<double>();
    l.delta_erg = j.at("delta_eV").get<double>() * eV;
  } else {
    throw std::runtime_error("oracle: unsupported law " + l.kind);
  }
  return l;
}

nlohmann::json read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("oracle: cannot open " + path);
  return nlohmann::json::parse(in);
}

struct State {
  const Material& m;
  real omega_c, T, kappa_a, eps0;
};

real eps_core(const Material& m, real xi) {
  real e = 1;
  for (size_t j = 0; j < m.g.size(); ++j)
    e += m.g[j] / (m.omega[j] * m.omega[j] + xi * xi + (m.damping ? m.gamma[j] * xi : 0));
  return e;
}

real sigma_of(const Material& m, real T) {
  if (m.variant == "oscillator_dc" && m.n.kind.empty()) return m.sigma_ref * std::exp(-m.delta_erg / (kB * T));
  return m.mu(T) * q_e * m.n(T);
}

// Permittivity with the carrier term, eps_tilde.
real eps_tilde(const Material& m, real xi, real T) {
  const real e = eps_core(m, xi);
  if (m.ballistic) return e + m.omega_p * m.omega_p / (xi * xi);
  real add = 4 * PI * sigma_of(m, T) / xi;
  if (m.gamma_free > 0) add /= 1 + xi / m.gamma_free;
  return e + add;
}

real bracket(real zeta, real y, real rtm, real rte) { return (2 * y * y - zeta * zeta) * rtm - zeta * zeta * rte; }

real fresnel_tm(real e, real zeta, real y) {
  const real s = std::sqrt(y * y + zeta * zeta * (e - 1));
  return (e * y - s) / (e * y + s);
}
real fresnel_te(real e, real zeta, real y) {
  const real s = std::sqrt(y * y + zeta * zeta * (e - 1));
  return (y - s) / (y + s);
}

// Integrand f(y) without the e^{-y} weight.
real integrand(const State& st, real zeta, real y) {
  const Material& m = st.m;
  const real xi = st.omega_c * zeta;
  if (zeta == 0) {
    if (m.variant == "oscillator") {
      const real e0 = eps_core(m, 0);
      return 2 * y * y * (e0 - 1) / (e0 + 1);
    }
    if (m.variant == "screened") {
      const real q = st.eps0 * std::sqrt(y * y + st.kappa_a * st.kappa_a);
      return 2 * y * y * (q - y) / (q + y);
    }
    return 2 * y * y;  // eps(0) infinite: r_tm = 1
  }
  if (m.variant == "oscillator") {
    const real e = eps_core(m, xi);
    return bracket(zeta, y, fresnel_tm(e, zeta, y), fresnel_te(e, zeta, y));
  }
  if (m.variant == "oscillator_dc") {
    const real e = eps_tilde(m, xi, st.T);
    return bracket(zeta, y, fresnel_tm(e, zeta, y), fresnel_te(e, zeta, y));
  }
  if (m.variant == "plasma") {
    const real e = 1 + m.omega_p * m.omega_p / (xi * xi);
    return bracket(zeta, y, fresnel_tm(e, zeta, y), fresnel_te(e, zeta, y));
  }
  if (m.variant == "drude") {
    const real e = 1 + m.omega_p * m.omega_p / (xi * (xi + m.gamma_drude));
    return bracket(zeta, y, fresnel_tm(e, zeta, y), fresnel_te(e, zeta, y));
  }
  // screened, nonzero frequency
  const real e = eps_core(m, xi);
  const real et = eps_tilde(m, xi, st.T);
  const real rte = fresnel_te(et, zeta, y);
  if (et == e) return bracket(zeta, y, fresnel_tm(e, zeta, y), rte);
  const real eta = std::sqrt(y * y - zeta * zeta + st.kappa_a * st.kappa_a * st.eps0 * et / (e * (et - e)));
  const real s = std::sqrt(y * y + (et - 1) * zeta * zeta);
  const real extra = (y * y - zeta * zeta) * (et - e) / (eta * e);
  const real rtm = (et * y - s - extra) / (et * y + s + extra);
  return bracket(zeta, y, rtm, rte);
}

// Adaptive Simpson with the Richardson correction.
real simpson(const std::function<real(real)>& f, real a, real b, real fa, real fm, real fb, real whole, real eps,
             int depth) {
  const real m = (a + b) / 2;
  const real lm = (a + m) / 2, rm = (m + b) / 2;
  const real flm = f(lm), frm = f(rm);
  const real left = (m - a) / 6 * (fa + 4 * flm + fm);
  const real right = (b - m) / 6 * (fm + 4 * frm + fb);
  const real diff = left + right - whole;
  if (depth <= 0 || std::fabs(diff) <= 15 * eps) return left + right + diff / 15;
  return simpson(f, a, m, fa, flm, fm, left, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, right, eps / 2, depth - 1);
}

real integrate(const std::function<real(real)>& f, real a, real b, real eps) {
  const real fa = f(a), fb = f(b), fm = f((a + b) / 2);
  return simpson(f, a, b, fa, fm, fb, (b - a) / 6 * (fa + 4 * fm + fb), eps, 60);
}

State make_state(const Material& m, real a, real T) {
  State st{m, c_light / (2 * a), T, 0, eps_core(m, 0)};
  if (m.variant == "screened") {
    const real n = m.n(T);
    const real k2 = m.mb ? 4 * PI * q_e * q_e * n / (st.eps0 * kB * T) : 6 * PI * q_e * q_e * n / (st.eps0 * m.e_fermi);
    st.kappa_a = 2 * a * std::sqrt(k2);
  }
  return st;
}

real alpha_of(const Atom& atom, real a, real zeta) {
  const real beta = atom.omega0 > 0 ? c_light / (2 * a) / atom.omega0 : atom.beta;
  return atom.alpha0 / (1 + beta * beta * zeta * zeta);
}

real term_at(const State& st, const Atom& atom, real a, real zeta, const Options& opt) {
  // y = zeta + t; integrate e^{-t} f(zeta + t) on geometric pieces of t.
  auto g = [&](real t) { return std::exp(-t) * integrand(st, zeta, zeta + t); };
  const real scale = 2 * (zeta * zeta + 2 * zeta + 2);
  const real eps = opt.rel_tol * scale * 1e-2L;
  real edges[64];
  int n = 0;
  edges[n++] = 0;
  for (real e = std::min<real>(zeta, 1) * 1e-3L + 1e-12L; e < 80; e *= 4) edges[n++] = e;
  edges[n++] = 80;
  real acc = 0;
  for (int i = 0; i + 1 < n; ++i) acc += integrate(g, edges[i], edges[i + 1], eps / n);
  return alpha_of(atom, a, zeta) * std::exp(-zeta) * acc;
}

}  // namespace

real Law::operator()(real T) const {
  if (kind == "constant") return value;
  return value * std::exp(-delta_erg / (kB * T));
}

Material load_material(const std::string& path) {
  const auto j = read(path);
  Material m;
  m.variant = j.at("variant").get<std::string>();
  if (j.contains("oscillators")) {
    for (const auto& o : j.at("oscillators")) {
      const real w = ev_to_omega(o.at("omega_eV").get<double>());
      m.omega.push_back(w);
      m.g.push_back(static_cast<real>(o.at("delta_eps").get<double>()) * w * w);
      m.gamma.push_back(o.contains("gamma_eV") ? ev_to_omega(o.at("gamma_eV").get<double>()) : 0);
    }
  }
  m.damping = j.value("include_damping", false);
  if (j.contains("sigma_ref")) m.sigma_ref = j.at("sigma_ref").get<double>();
  if (j.contains("delta_eV")) m.delta_erg = j.at("delta_eV").get<double>() * eV;
  if (j.contains("carriers")) {
    m.n = read_law(j.at("carriers").at("n_law"));
    m.mu = read_law(j.at("carriers").at("mu_law"));
  }
  if (m.variant == "drude") {
    m.omega_p = ev_to_omega(j.at("omega_p_eV").get<double>());
    m.gamma_drude = ev_to_omega(j.at("gamma_eV").get<double>());
  } else {
    if (j.contains("gamma_eV")) m.gamma_free = ev_to_omega(j.at("gamma_eV").get<double>());
    if (j.contains("omega_p_eV")) m.omega_p = ev_to_omega(j.at("omega_p_eV").get<double>());
  }
  if (m.variant == "screened") {
    const auto& s = j.at("screening");
    m.mb = s.at("statistics").get<std::string>() == "maxwell_boltzmann";
    m.n = read_law(s.at("n_law"));
    m.ballistic = j.contains("omega_p_eV");
    if (!m.ballistic) m.mu = read_law(s.at("mu_law"));
    m.e_fermi = s.contains("E_F_eV") ? s.at("E_F_eV").get<double>() * eV : hbar * m.omega_p;
  }
  return m;
}

Atom load_atom(const std::string& path) {
  const auto j = read(path);
  Atom a;
  a.alpha0 = j.contains("alpha0_au") ? j.at("alpha0_au").get<double>() * bohr * bohr * bohr
                                     : static_cast<real>(j.at("alpha0_cm3").get<double>());
  if (j.contains("omega0_eV")) a.omega0 = ev_to_omega(j.at("omega0_eV").get<double>());
  a.beta = j.value("beta", 0.0);
  return a;
}

real term(const Material& m, const Atom& atom, real a, real T, unsigned long l, const Options& opt) {
  const State st = make_state(m, a, T);
  const real tau = 4 * PI * kB * T * a / (hbar * c_light);
  return term_at(st, atom, a, l * tau, opt);
}

real free_energy(const Material& m, const Atom& atom, real a, real T, const Options& opt) {
  const State st = make_state(m, a, T);
  const real tau = 4 * PI * kB * T * a / (hbar * c_light);
  // Kahan-Babuska summation; stop once ten successive terms are negligible.
  real sum = 0, comp = 0;
  int quiet = 0;
  for (unsigned long l = 0; l <= opt.l_cap; ++l) {
    real t = term_at(st, atom, a, l * tau, opt);
    if (l == 0) t /= 2;
    const real s = sum + t;
    comp += std::fabs(sum) >= std::fabs(t) ? (sum - s) + t : (t - s) + sum;
    sum = s;
    quiet = std::fabs(t) < 1e-22L * std::fabs(sum) ? quiet + 1 : 0;
    if (quiet >= 10) break;
  }
  return -kB * T / (8 * a * a * a) * (sum + comp);
}

}  // namespace oracle
