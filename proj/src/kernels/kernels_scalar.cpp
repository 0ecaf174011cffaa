#include "lifshitz_cp/kernels.hpp"
#include "lifshitz_cp/reflection_math.hpp"

namespace lcp::kernels::detail {

void standard_scalar(const StandardArgs& args, std::span<const double> t, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const auto r = lcp::detail::standard_coefficients(args.zeta, t[i], args.eps);
    out[i] = lcp::detail::bracket(args.zeta, t[i], r.tm, r.te);
  }
}

void screened_scalar(const ScreenedArgs& args, std::span<const double> t, std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r_tm = lcp::detail::modified_tm_coefficient(
        args.zeta, t[i], args.eps, args.eps_tilde, args.delta, args.m, args.kappa_zero);
    const double r_te = lcp::detail::standard_coefficients(args.zeta, t[i], args.eps_tilde).te;
    out[i] = lcp::detail::bracket(args.zeta, t[i], r_tm, r_te);
  }
}

void static_screened_scalar(const StaticScreenedArgs& args, std::span<const double> t,
                            std::span<double> out) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double r = lcp::detail::static_screened_tm(t[i], args.eps0, args.kappa_a);
    out[i] = lcp::detail::bracket(0.0, t[i], r, 0.0);
  }
}

}  // namespace lcp::kernels::detail
