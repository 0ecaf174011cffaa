#pragma once

// Batch evaluation of the Lifshitz bracket (2y^2 - zeta^2) r_tm - zeta^2 r_te
// over quadrature nodes t = y - zeta. One scalar reference table and, on x86-64,
// an AVX2 table that reproduces it bit for bit; active_kernels() picks one at
// runtime (override with LIFSHITZ_CP_KERNEL=scalar|avx2).

#include <cstddef>
#include <span>
#include <string_view>

namespace lcp::kernels {

struct StandardArgs {
  double zeta;
  double eps;
};

struct ScreenedArgs {
  double zeta;
  double eps;        // core permittivity
  double eps_tilde;  // eps + delta
  double delta;
  double m;          // kappa_a^2 eps0 eps_tilde / (eps delta)
  bool kappa_zero;
};

// Zero frequency: y = t, bracket 2 y^2 r_tm^mod(0, y).
struct StaticScreenedArgs {
  double eps0;
  double kappa_a;
};

using StandardFn = void (*)(const StandardArgs&, std::span<const double>, std::span<double>);
using ScreenedFn = void (*)(const ScreenedArgs&, std::span<const double>, std::span<double>);
using StaticScreenedFn = void (*)(const StaticScreenedArgs&, std::span<const double>,
                                  std::span<double>);

struct KernelSet {
  std::string_view name;
  StandardFn standard;
  ScreenedFn screened;
  StaticScreenedFn static_screened;
};

const KernelSet& scalar_kernels();
/// nullptr when the build has no AVX2 path or the CPU lacks AVX2.
const KernelSet* avx2_kernels();
const KernelSet& active_kernels();

namespace detail {
// Implemented in per-ISA translation units.
void standard_scalar(const StandardArgs&, std::span<const double>, std::span<double>);
void screened_scalar(const ScreenedArgs&, std::span<const double>, std::span<double>);
void static_screened_scalar(const StaticScreenedArgs&, std::span<const double>, std::span<double>);
#if defined(LIFSHITZ_CP_HAVE_AVX2)
void standard_avx2(const StandardArgs&, std::span<const double>, std::span<double>);
void screened_avx2(const ScreenedArgs&, std::span<const double>, std::span<double>);
void static_screened_avx2(const StaticScreenedArgs&, std::span<const double>, std::span<double>);
#endif
}  // namespace detail

}  // namespace lcp::kernels
