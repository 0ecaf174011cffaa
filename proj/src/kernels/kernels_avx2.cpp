// AVX2 mirror of reflection_math.hpp. Every vector operation corresponds to
// one scalar operation in the reference, in the same order; this file is
// compiled without FMA contraction so results match the scalar path exactly.

#include <immintrin.h>

#include "lifshitz_cp/kernels.hpp"

namespace lcp::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

struct Coeffs {
  __m256d tm;
  __m256d te;
};

inline __m256d neg(__m256d x) { return _mm256_xor_pd(x, _mm256_set1_pd(-0.0)); }

inline Coeffs standard4(__m256d zeta, __m256d t, __m256d eps) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d y = _mm256_add_pd(zeta, t);
  const __m256d y2 = _mm256_mul_pd(y, y);
  const __m256d z2 = _mm256_mul_pd(zeta, zeta);
  const __m256d q = _mm256_mul_pd(z2, _mm256_sub_pd(eps, one));
  const __m256d s = _mm256_sqrt_pd(_mm256_add_pd(y2, q));
  const __m256d p_tm = _mm256_add_pd(_mm256_mul_pd(eps, y), s);
  const __m256d p_te = _mm256_add_pd(y, s);
  const __m256d inner = _mm256_sub_pd(_mm256_mul_pd(_mm256_add_pd(eps, one), y2), z2);
  const __m256d n_tm = _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(eps, one), inner), p_tm);
  const __m256d n_te = _mm256_div_pd(neg(q), p_te);
  return {_mm256_div_pd(n_tm, p_tm), _mm256_div_pd(n_te, p_te)};
}

inline __m256d bracket4(__m256d zeta, __m256d t, __m256d r_tm, __m256d r_te) {
  const __m256d y = _mm256_add_pd(zeta, t);
  const __m256d z2 = _mm256_mul_pd(zeta, zeta);
  const __m256d lead = _mm256_sub_pd(_mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_mul_pd(y, y)), z2);
  return _mm256_sub_pd(_mm256_mul_pd(lead, r_tm), _mm256_mul_pd(z2, r_te));
}

}  // namespace

void standard_avx2(const StandardArgs& args, std::span<const double> t, std::span<double> out) {
  const std::size_t n = t.size();
  const std::size_t body = n - n % kLanes;
  const __m256d zeta = _mm256_set1_pd(args.zeta);
  const __m256d eps = _mm256_set1_pd(args.eps);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d tv = _mm256_loadu_pd(t.data() + i);
    const Coeffs r = standard4(zeta, tv, eps);
    _mm256_storeu_pd(out.data() + i, bracket4(zeta, tv, r.tm, r.te));
  }
  if (body < n) standard_scalar(args, t.subspan(body), out.subspan(body));
}

void screened_avx2(const ScreenedArgs& args, std::span<const double> t, std::span<double> out) {
  const std::size_t n = t.size();
  const std::size_t body = n - n % kLanes;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d zeta = _mm256_set1_pd(args.zeta);
  const __m256d eps = _mm256_set1_pd(args.eps);
  const __m256d eps_t = _mm256_set1_pd(args.eps_tilde);
  const __m256d delta = _mm256_set1_pd(args.delta);
  const __m256d m = _mm256_set1_pd(args.m);
  const __m256d delta_over_eps = _mm256_div_pd(delta, eps);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d tv = _mm256_loadu_pd(t.data() + i);
    const __m256d y = _mm256_add_pd(zeta, tv);
    const __m256d y2 = _mm256_mul_pd(y, y);
    const __m256d z2 = _mm256_mul_pd(zeta, zeta);
    const __m256d u = _mm256_mul_pd(tv, _mm256_add_pd(tv, _mm256_mul_pd(two, zeta)));
    const __m256d s =
        _mm256_sqrt_pd(_mm256_add_pd(y2, _mm256_mul_pd(z2, _mm256_sub_pd(eps_t, one))));
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(eps_t, y), s);
    const __m256d inner = _mm256_sub_pd(_mm256_mul_pd(_mm256_add_pd(eps_t, one), y2), z2);
    const __m256d num = _mm256_div_pd(_mm256_mul_pd(_mm256_sub_pd(eps_t, one), inner), p);
    __m256d d;
    if (args.kappa_zero) {
      d = _mm256_mul_pd(_mm256_sqrt_pd(u), delta_over_eps);
    } else {
      const __m256d eta = _mm256_sqrt_pd(_mm256_add_pd(u, m));
      d = _mm256_div_pd(_mm256_mul_pd(u, delta), _mm256_mul_pd(eta, eps));
    }
    const __m256d r_tm = _mm256_div_pd(_mm256_sub_pd(num, d), _mm256_add_pd(p, d));
    const __m256d r_te = standard4(zeta, tv, eps_t).te;
    _mm256_storeu_pd(out.data() + i, bracket4(zeta, tv, r_tm, r_te));
  }
  if (body < n) screened_scalar(args, t.subspan(body), out.subspan(body));
}

void static_screened_avx2(const StaticScreenedArgs& args, std::span<const double> t,
                          std::span<double> out) {
  const std::size_t n = t.size();
  const std::size_t body = n - n % kLanes;
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d eps0 = _mm256_set1_pd(args.eps0);
  const __m256d k = _mm256_set1_pd(args.kappa_a);
  const __m256d k2 = _mm256_mul_pd(k, k);
  const __m256d e2 = _mm256_mul_pd(eps0, eps0);
  const __m256d e2m1 = _mm256_sub_pd(e2, one);
  for (std::size_t i = 0; i < body; i += kLanes) {
    const __m256d y = _mm256_loadu_pd(t.data() + i);
    const __m256d yy = _mm256_mul_pd(y, y);
    const __m256d w = _mm256_sqrt_pd(_mm256_add_pd(yy, k2));
    const __m256d p = _mm256_add_pd(_mm256_mul_pd(eps0, w), y);
    const __m256d num =
        _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(e2m1, yy), _mm256_mul_pd(e2, k2)), p);
    const __m256d r = _mm256_div_pd(num, p);
    _mm256_storeu_pd(out.data() + i, bracket4(zero, y, r, zero));
  }
  if (body < n) static_screened_scalar(args, t.subspan(body), out.subspan(body));
}

}  // namespace lcp::kernels::detail
