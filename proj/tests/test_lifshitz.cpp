#include <cmath>
#include <limits>

#include "doctest.h"
#include "lifshitz_cp/errors.hpp"
#include "lifshitz_cp/lifshitz.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace lcp;

namespace {

const double kB = 1.380649e-16;
const double hbar = 1.054571817e-27;
const double c_light = 2.99792458e10;
const double PI = 3.141592653589793;

WallModel ideal_metal() { return {"ideal", PlasmaWall{{std::numeric_limits<double>::infinity()}}}; }
WallModel vacuum() { return {"vacuum", OscillatorWall{}}; }

AtomModel static_atom(double alpha0) {
  AtomModel a;
  a.alpha0 = alpha0;
  return a;
}

// Ideal metal, constant alpha: I(zeta) = 2 e^{-zeta} (zeta^2 + 2 zeta + 2).
long double ideal_phi(double a, double T) {
  const long double tau = 4.0L * PI * kB * T * a / (hbar * c_light);
  long double sum = 2.0L;  // half of I(0) = 4
  for (int l = 1; l < 100000; ++l) {
    const long double z = l * tau;
    const long double t = 2.0L * std::exp(-z) * (z * z + 2.0L * z + 2.0L);
    sum += t;
    if (t < 1e-30L * sum) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("trivial inputs give zero") {
  const EvaluationPoint pt{1e-4, 300.0};
  CHECK(free_energy(vacuum(), testing::rb(), pt).free_energy == 0.0);
  CHECK(free_energy(testing::wall("sio2"), static_atom(0.0), pt).free_energy == 0.0);
  CHECK(energy_T0(vacuum(), testing::rb(), 1e-4).energy_T0.value() == 0.0);
}

TEST_CASE("ideal metal with a static atom") {
  const double alpha0 = 5e-23;
  const double a = 2e-4;
  SUBCASE("T = 0 gives -3 hbar c alpha0 / (8 pi a^4)") {
    const auto r = energy_T0(ideal_metal(), static_atom(alpha0), a);
    CHECK(r.reduced == doctest::Approx(12.0 * alpha0).epsilon(1e-11));
    CHECK(*r.energy_T0 == doctest::Approx(-3.0 * hbar * c_light * alpha0 / (8.0 * PI * a * a * a * a)).epsilon(1e-11));
  }
  SUBCASE("finite T matches the closed-form terms") {
    for (double T : {5.0, 77.0, 300.0, 3000.0}) {
      const auto r = free_energy(ideal_metal(), static_atom(alpha0), {a, T});
      CHECK(r.reduced == doctest::Approx(static_cast<double>(alpha0 * ideal_phi(a, T))).epsilon(1e-11));
      CHECK(r.free_energy == doctest::Approx(-kB * T / (8 * a * a * a) * r.reduced).epsilon(1e-15));
    }
  }
}

TEST_CASE("free energy is linear in alpha0") {
  const EvaluationPoint pt{1e-4, 300.0};
  const auto w = testing::wall("sio2");
  const double f1 = free_energy(w, static_atom(1e-23), pt).free_energy;
  const double f3 = free_energy(w, static_atom(3e-23), pt).free_energy;
  CHECK(f3 / f1 == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("|F| decreases with separation") {
  for (const char* name : {"sio2", "si", "sio2_dc", "gold_plasma", "gold_drude", "sio2_screened_persistent"}) {
    CAPTURE(name);
    const auto w = testing::wall(name);
    double prev = std::numeric_limits<double>::infinity();
    for (double a_um = 0.2; a_um < 12.0; a_um *= 1.6) {
      const double f = std::abs(free_energy(w, testing::rb(), {a_um * 1e-4, 300.0}).free_energy);
      CHECK(f < prev);
      prev = f;
    }
  }
}

TEST_CASE("free energy approaches the T = 0 energy") {
  for (const char* name : {"sio2", "gold_plasma"}) {
    CAPTURE(name);
    const auto w = testing::wall(name);
    const double a = 1e-4;
    const double e0 = *energy_T0(w, testing::rb(), a).energy_T0;
    double prev = std::numeric_limits<double>::infinity();
    for (double T : {100.0, 30.0, 10.0, 3.0}) {
      const double gap = std::abs(free_energy(w, testing::rb(), {a, T}).free_energy - e0) / std::abs(e0);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev < 1e-5);
  }
}

TEST_CASE("agrees with the reference evaluator") {
  for (const char* name : {"sio2", "gold_drude", "sio2_screened_persistent"}) {
    CAPTURE(name);
    const auto m = oracle::load_material(testing::fixture(name));
    const auto at = oracle::load_atom(testing::fixture("rb"));
    const double want = static_cast<double>(oracle::free_energy(m, at, 1e-4L, 300.0L));
    const double got = free_energy(testing::wall(name), testing::rb(), {1e-4, 300.0}).free_energy;
    CHECK(testing::rel(got, want) < 1e-8);
  }
}

TEST_CASE("results do not depend on the thread count") {
  QuadratureSpec one, many;
  one.threads = 1;
  many.threads = 4;
  const auto w = testing::wall("sio2_screened_persistent");
  const EvaluationPoint pt{5e-5, 77.0};
  const auto a = free_energy(w, testing::rb(), pt, one);
  const auto b = free_energy(w, testing::rb(), pt, many);
  CHECK(a.free_energy == b.free_energy);
  CHECK(a.diagnostics.l_max == b.diagnostics.l_max);
  const auto c = free_energy(w, testing::rb(), pt, many);
  CHECK(b.free_energy == c.free_energy);
}

TEST_CASE("zero-frequency term of the dc wall is independent of sigma") {
  const EvaluationPoint pt{1e-4, 300.0};
  auto with_sigma = [](double s) {
    WallModel w = testing::wall("sio2_dc");
    std::get<OscillatorPlusDcWall>(w.response).conductivity.sigma_ref = s;
    return w;
  };
  const auto ref = matsubara_term(with_sigma(1e-9), testing::rb(), pt, 0);
  for (double s : {1e-3, 1e2, 1e12}) {
    const auto t = matsubara_term(with_sigma(s), testing::rb(), pt, 0);
    CHECK(t.integral == ref.integral);
    CHECK(t.alpha == ref.alpha);
  }
  CHECK(ref.integral == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("entropy is minus the temperature derivative") {
  const auto w = testing::wall("sio2");
  const EvaluationPoint pt{1e-4, 300.0};
  const auto r = entropy(w, testing::rb(), pt);
  REQUIRE(r.entropy.has_value());
  const double h = 1.0;
  const double fp = free_energy(w, testing::rb(), {pt.a, pt.T + h}).free_energy;
  const double fm = free_energy(w, testing::rb(), {pt.a, pt.T - h}).free_energy;
  CHECK(*r.entropy == doctest::Approx(-(fp - fm) / (2 * h)).epsilon(1e-5));
  CHECK(r.free_energy == free_energy(w, testing::rb(), pt).free_energy);
  REQUIRE(r.diagnostics.entropy.has_value());
  CHECK(r.diagnostics.entropy->inconsistency <= r.diagnostics.entropy->allowed);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(free_energy(testing::wall("sio2"), testing::rb(), {-1e-4, 300.0}), DomainError);
  CHECK_THROWS_AS(free_energy(testing::wall("sio2"), testing::rb(), {1e-4, 0.0}), DomainError);
  QuadratureSpec loose;
  loose.tolerance = 1e-2;
  CHECK_THROWS_AS(free_energy(testing::wall("sio2"), testing::rb(), {1e-4, 300.0}, loose), DomainError);
  QuadratureSpec tiny;
  tiny.max_terms = 5;
  CHECK_THROWS_AS(free_energy(testing::wall("sio2"), testing::rb(), {1e-4, 300.0}, tiny), ConvergenceError);
}

TEST_CASE("low-temperature entropy against the closed-form laws") {
  const auto atom = testing::rb();
  auto at_tau = [](double a, double tau) {
    const double T_eff = hbar * c_light / (2.0 * a * kB);
    return EvaluationPoint{a, tau * T_eff / (2.0 * PI)};
  };
  auto x3 = [](double tau) { return std::pow(tau / (2.0 * PI), 3); };

  SUBCASE("oscillator SiO2: agreement within 5% that improves as tau falls") {
    const double a = 1e-4;
    double prev = 1.0;
    for (double tau : {0.05, 0.02, 0.01}) {
      const double law = PI * PI * PI * kB / (30 * a * a * a) * atom.alpha0 * 2.70 * x3(tau);
      const double S = *entropy(testing::wall("sio2"), atom, at_tau(a, tau)).entropy;
      const double dev = std::abs(S / law - 1.0);
      CHECK(dev < prev);
      prev = dev;
    }
    CHECK(prev < 0.05);
  }
  SUBCASE("plasma metal: |S| follows the T^3 law and S is negative") {
    const double a = 5e-4;
    const double law = PI * PI * PI * kB / (45 * a * a * a) * atom.alpha0 * x3(0.01);
    const double S = *entropy(testing::wall("gold_plasma"), atom, at_tau(a, 0.01)).entropy;
    CHECK(S < 0.0);
    CHECK(std::abs(S) == doctest::Approx(law).epsilon(0.1));
  }
  SUBCASE("dc conductivity: S tends to k_B (1 - r0) alpha0 / 4a^3") {
    const double a = 1e-4, r0 = 2.81 / 4.81;
    const double limit = kB * (1 - r0) * atom.alpha0 / (4 * a * a * a);
    const double S = *entropy(testing::wall("sio2_dc"), atom, at_tau(a, 0.005)).entropy;
    CHECK(S == doctest::Approx(limit).epsilon(0.01));
  }
}

TEST_CASE("matsubara grid is linear in l") {
  const EvaluationPoint pt{1e-4, 300.0};
  const auto g = matsubara_grid(pt, 4);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.0);
  CHECK(g[2] == 2.0 * g[1]);
  CHECK(g[1] == doctest::Approx(4 * PI * kB * 300.0 * 1e-4 / (hbar * c_light)).epsilon(1e-14));
}
