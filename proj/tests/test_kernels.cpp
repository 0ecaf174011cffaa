#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "lifshitz_cp/kernels.hpp"
#include "lifshitz_cp/reflection.hpp"

using namespace lcp;

namespace {

std::vector<double> nodes(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-12.0, 2.0);
  std::vector<double> t(n);
  for (auto& v : t) v = std::pow(10.0, u(rng));
  t[0] = 0.0;
  return t;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double bracket(double zeta, double y, ReflectionPair r) { return (2 * y * y - zeta * zeta) * r.r_tm - zeta * zeta * r.r_te; }

}  // namespace

TEST_CASE("scalar standard kernel matches the reflection module") {
  const auto& k = kernels::scalar_kernels();
  const auto t = nodes(101, 1);
  std::vector<double> out(t.size());
  for (double eps : {1.0, 2.2, 11.67, 1e6}) {
    const double zeta = 0.37;
    k.standard({zeta, eps}, t, out);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto pt = FrequencyPoint::at_offset(1, zeta, t[i]);
      CHECK(out[i] == doctest::Approx(bracket(zeta, pt.y, standard_pair(eps, pt))).epsilon(1e-13));
    }
  }
}

TEST_CASE("AVX2 kernels reproduce the scalar ones bit for bit") {
  const auto* v = kernels::avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 unavailable; skipped");
    return;
  }
  const auto& s = kernels::scalar_kernels();
  // Odd lengths exercise the remainder loop.
  for (std::size_t n : {1u, 3u, 4u, 15u, 17u, 255u}) {
    const auto t = nodes(n, static_cast<unsigned>(n));
    std::vector<double> a(n), b(n);
    for (double zeta : {1e-6, 0.4, 3.0, 90.0}) {
      for (double eps : {1.0, 3.81, 1e4, static_cast<double>(INFINITY)}) {
        s.standard({zeta, eps}, t, a);
        v->standard({zeta, eps}, t, b);
        CHECK(same_bits(a, b));
      }
      for (double delta : {1e-9, 0.3, 1e5}) {
        for (double kap : {0.0, 0.5, 1e4}) {
          const double eps = 3.2, et = eps + delta;
          const kernels::ScreenedArgs args{zeta, eps, et, delta, kap * kap * 3.81 * et / (eps * delta), kap == 0.0};
          s.screened(args, t, a);
          v->screened(args, t, b);
          CHECK(same_bits(a, b));
        }
      }
    }
    for (double kap : {0.0, 1e-3, 2.0, 1e7}) {
      s.static_screened({3.81, kap}, t, a);
      v->static_screened({3.81, kap}, t, b);
      CHECK(same_bits(a, b));
    }
  }
}

TEST_CASE("active kernel set is one of the known ones") {
  const auto& k = kernels::active_kernels();
  CHECK((k.name == "scalar" || k.name == "avx2"));
}
