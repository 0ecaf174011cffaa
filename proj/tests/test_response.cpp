#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "lifshitz_cp/constants.hpp"
#include "lifshitz_cp/errors.hpp"
#include "lifshitz_cp/response.hpp"
#include "support.hpp"

using namespace lcp;

namespace {

const double kB = 1.380649e-16;
const double hbar = 1.054571817e-27;
const double q_e = 4.803204712570263e-10;

OscillatorModel one(double g, double omega) {
  OscillatorModel m;
  m.oscillators.push_back({g, omega, 0.0});
  return m;
}

}  // namespace

TEST_CASE("eps_core static limit, vacuum and half point") {
  const double w = 1.5e16;
  const auto m = OscillatorModel::single(3.81, w);
  CHECK(eps_core(m, 0.0) == doctest::Approx(3.81).epsilon(1e-15));
  CHECK(m.static_permittivity() == doctest::Approx(3.81).epsilon(1e-15));
  CHECK(eps_core(OscillatorModel{}, 0.0) == 1.0);
  CHECK(eps_core(OscillatorModel{}, 1e17) == 1.0);
  CHECK(eps_core(one(w * w, w), w) == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("eps_core rejects bad input") {
  CHECK_THROWS_AS(eps_core(one(1.0, 1.0), -1.0), DomainError);
  CHECK_THROWS_AS(one(1.0, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(one(-1.0, 1.0).validate(), DomainError);
}

TEST_CASE("damping flag keeps the gamma xi term") {
  OscillatorModel m = one(4.0, 2.0);
  m.oscillators[0].gamma = 1.0;
  CHECK(eps_core(m, 1.0) == doctest::Approx(1.0 + 4.0 / 5.0));
  m.include_damping = true;
  CHECK(eps_core(m, 1.0) == doctest::Approx(1.0 + 4.0 / 6.0));
}

TEST_CASE("sigma_dc activation and assembled modes") {
  const double delta = 0.5 * 1.602176634e-12;
  const auto act = ConductivityLaw::activation(1e10, delta);
  CHECK(sigma_dc(act, 0.0) == 0.0);
  CHECK(sigma_dc(act, 1.0) < 1e-200);
  CHECK(sigma_dc(ConductivityLaw::activation(1e10, 0.0), 7.0) == 1e10);
  CHECK_THROWS_AS(sigma_dc(act, -1.0), DomainError);

  const double n = 3e17, mu0 = 450.0;
  const auto asm_law =
      ConductivityLaw::assembled(TemperatureLaw::constant(n), TemperatureLaw::activated(mu0, delta));
  const double T = delta / kB;
  CHECK(sigma_dc(asm_law, T) == doctest::Approx(mu0 * std::exp(-1.0) * q_e * n).epsilon(1e-14));
}

TEST_CASE("conducts is a mathematical statement even when sigma underflows") {
  const auto act = ConductivityLaw::activation(1.0, 1.602176634e-12);
  CHECK(sigma_dc(act, 0.5) == 0.0);
  CHECK(conducts(act, 0.5));
  CHECK_FALSE(conducts(act, 0.0));
  CHECK_FALSE(conducts(ConductivityLaw::activation(0.0, 0.0), 300.0));
  CHECK(conducts(ConductivityLaw::ballistic(1e16), 0.0));
}

TEST_CASE("eps_with_dc") {
  const double w = testing::ev_to_omega(10.4);
  const auto core = OscillatorModel::single(3.81, w);
  const double xi = 1e14;
  SUBCASE("no carriers") {
    CHECK(eps_with_dc(core, ConductivityLaw::activation(0.0, 0.0), xi, 300.0) == eps_core(core, xi));
  }
  SUBCASE("addition of 1e-3") {
    const double sigma = 1e-3 * xi / (4.0 * pi);
    const auto law = ConductivityLaw::activation(sigma, 0.0);
    CHECK(eps_with_dc(core, law, xi, 300.0) - eps_core(core, xi) == doctest::Approx(1e-3).epsilon(1e-12));
  }
  SUBCASE("relaxation suppresses the addition") {
    const double sigma = 1e12, gamma = 1e12;
    const auto law = ConductivityLaw::activation(sigma, 0.0, gamma);
    const double add = eps_with_dc(core, law, 1e18, 300.0) - eps_core(core, 1e18);
    CHECK(add == doctest::Approx(4.0 * pi * sigma / (1e18 * (1.0 + 1e18 / gamma))).epsilon(1e-6));
    CHECK(add / eps_core(core, 1e18) < 1e-6);
  }
  SUBCASE("addition vanishes exponentially as T -> 0") {
    const auto law = ConductivityLaw::activation(1e10, 0.1 * 1.602176634e-12);
    double prev = std::numeric_limits<double>::infinity();
    for (double T : {300.0, 100.0, 30.0, 10.0}) {
      if (T == 10.0) {
        CHECK(eps_with_dc(core, law, xi, T) - eps_core(core, xi) <= prev);
        continue;
      }
      const double add = eps_with_dc(core, law, xi, T) - eps_core(core, xi);
      CHECK(add < prev);
      prev = add;
    }
    CHECK(prev < 1e-10);
  }
  CHECK_THROWS_AS(eps_with_dc(core, ConductivityLaw::activation(1.0, 0.0), 0.0, 300.0), DomainError);
}

TEST_CASE("plasma and Drude permittivities") {
  const PlasmaModel p{testing::ev_to_omega(9.0)};
  CHECK(eps_plasma(p, p.omega_p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(eps_plasma(p, 1e6 * p.omega_p) == doctest::Approx(1.0).epsilon(1e-11));
  const double xi1 = 2.0 * 3.141592653589793 * kB * 300.0 / hbar;
  const double ratio = p.omega_p / xi1;
  CHECK(eps_plasma(p, xi1) == doctest::Approx(1.0 + ratio * ratio).epsilon(1e-14));
  CHECK_THROWS_AS(eps_plasma(p, 0.0), DomainError);

  CHECK(eps_drude(p, 0.0, 3e14) == eps_plasma(p, 3e14));
  CHECK(eps_drude(p, p.omega_p, p.omega_p) == doctest::Approx(1.5).epsilon(1e-15));
  // 9 eV, 0.035 eV, 0.1 eV: 1 + 81 / (0.1 * 0.135).
  CHECK(eps_drude(p, testing::ev_to_omega(0.035), testing::ev_to_omega(0.1)) ==
        doctest::Approx(6001.0).epsilon(1e-12));
  CHECK(p.skin_depth() == doctest::Approx(2.99792458e10 / p.omega_p));
}

TEST_CASE("screening lengths") {
  ScreeningSpec mb;
  mb.n_law = TemperatureLaw::constant(1e18);
  mb.eps0_host = 3.81;
  ScreeningSpec mb2 = mb;
  mb2.n_law = TemperatureLaw::constant(2e18);
  CHECK(screening_kappa(mb2, 77.0) / screening_kappa(mb, 77.0) == doctest::Approx(std::sqrt(2.0)));
  CHECK(screening_kappa(mb, 300.0) ==
        doctest::Approx(std::sqrt(4.0 * pi * q_e * q_e * 1e18 / (3.81 * kB * 300.0))).epsilon(1e-14));
  CHECK(screening_kappa(mb, 1e-3) == doctest::Approx(std::sqrt(3e5) * screening_kappa(mb, 300.0)).epsilon(1e-12));
  CHECK_THROWS_AS(screening_kappa(mb, 0.0), DomainError);

  ScreeningSpec vanishing = mb;
  vanishing.n_law = TemperatureLaw::activated(1e19, 0.3 * 1.602176634e-12);
  CHECK(screening_kappa(vanishing, 5.0) < 1e-100);
  CHECK(screening_kappa(vanishing, 5.0) < screening_kappa(vanishing, 6.0));

  ScreeningSpec fd = mb;
  fd.statistics = CarrierStatistics::FermiDirac;
  CHECK_THROWS_AS(screening_kappa(fd, 10.0), DomainError);
  fd.fermi_energy = hbar * testing::ev_to_omega(9.0);
  CHECK(screening_kappa(fd, 1.0) == screening_kappa(fd, 1000.0));
  CHECK(screening_kappa(fd, 1.0) ==
        doctest::Approx(std::sqrt(6.0 * pi * q_e * q_e * 1e18 / (3.81 * *fd.fermi_energy))).epsilon(1e-14));
}

TEST_CASE("alpha_dynamic") {
  AtomModel atom;
  atom.alpha0 = 4.7e-23;
  atom.beta = 0.25;
  CHECK(alpha_dynamic(atom, 0.0) == atom.alpha0);
  CHECK(alpha_dynamic(atom, 4.0) == doctest::Approx(atom.alpha0 / 2.0).epsilon(1e-15));
  for (double z : {0.0, 0.3, 7.0, 123.0, 1e5})
    CHECK(alpha_dynamic(atom, z) * (1.0 + atom.beta * atom.beta * z * z) == doctest::Approx(atom.alpha0).epsilon(1e-15));
  atom.beta = 0.0;
  CHECK(alpha_dynamic(atom, 1e6) == atom.alpha0);
  CHECK_THROWS_AS(alpha_dynamic(atom, -1.0), DomainError);

  AtomModel tied = testing::rb();
  const double a = 1e-4;
  const double omega_c = 2.99792458e10 / (2.0 * a);
  CHECK(tied.at_separation(a).beta == doctest::Approx(omega_c / *tied.omega0));
}

TEST_CASE("permittivities decay monotonically along the imaginary axis") {
  const std::vector<WallModel> walls{testing::wall("sio2"), testing::wall("si"), testing::wall("gold_drude")};
  const OscillatorModel core = OscillatorModel::single(11.67, testing::ev_to_omega(4.8));
  const PlasmaModel p{testing::ev_to_omega(9.0)};
  double prev_core = eps_core(core, 0.0), prev_p = 1e300, prev_d = 1e300;
  for (double xi = 1e12; xi < 1e18; xi *= 1.7) {
    const double c = eps_core(core, xi), ep = eps_plasma(p, xi), ed = eps_drude(p, 1e13, xi);
    CHECK(c <= prev_core);
    CHECK(ep <= prev_p);
    CHECK(ed <= prev_d);
    CHECK(c >= 1.0);
    CHECK(ed >= 1.0);
    prev_core = c;
    prev_p = ep;
    prev_d = ed;
  }
}

TEST_CASE("wall variants validate and classify") {
  CHECK(testing::wall("gold_plasma").is_metallic());
  CHECK(testing::wall("gold_drude").is_metallic());
  CHECK(testing::wall("gold_screened").is_metallic());
  CHECK_FALSE(testing::wall("sio2_dc").is_metallic());
  CHECK_FALSE(testing::wall("sio2_screened_persistent").is_metallic());
  CHECK(testing::wall("sio2_dc").variant_name() == "oscillator_dc");

  WallModel ideal{"ideal", PlasmaWall{{std::numeric_limits<double>::infinity()}}};
  CHECK_NOTHROW(ideal.validate());
  WallModel bad{"bad", DrudeWall{{std::numeric_limits<double>::infinity()}, 1.0}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
