#include "lifshitz_cp/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "lifshitz_cp/errors.hpp"

namespace lcp::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(LIFSHITZ_CP_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelSet* select() {
  const char* env = std::getenv("LIFSHITZ_CP_KERNEL");
  const std::string_view want = env ? env : "";
  if (want == "scalar") return &scalar_kernels();
  if (want == "avx2") {
    const KernelSet* k = avx2_kernels();
    if (!k) throw ConfigError("LIFSHITZ_CP_KERNEL=avx2 requested but AVX2 is unavailable");
    return k;
  }
  if (!want.empty() && want != "auto")
    throw ConfigError("LIFSHITZ_CP_KERNEL must be scalar, avx2 or auto");
  if (const KernelSet* k = avx2_kernels()) return k;
  return &scalar_kernels();
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", &detail::standard_scalar, &detail::screened_scalar,
                             &detail::static_screened_scalar};
  return set;
}

const KernelSet* avx2_kernels() {
#if defined(LIFSHITZ_CP_HAVE_AVX2)
  static const KernelSet set{"avx2", &detail::standard_avx2, &detail::screened_avx2,
                             &detail::static_screened_avx2};
  return cpu_has_avx2() ? &set : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet* chosen = select();
  return *chosen;
}

}  // namespace lcp::kernels
