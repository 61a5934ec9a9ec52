// Backend entry points behind the public kernels API.
#pragma once

#include <cstddef>

namespace resfluor::kernels::detail {

void fourier_sums_scalar(const double* a, std::size_t n, double tau0, double dtau,
                         const double* deltas, double* cos_out, double* sin_out,
                         std::size_t m);
void lorentz_triplet_scalar(double gamma, double c, double a0, double nb, double nk,
                            const double* deltas, double* out, std::size_t m);

#if defined(__x86_64__)
bool avx2_supported();
void fourier_sums_avx2(const double* a, std::size_t n, double tau0, double dtau,
                       const double* deltas, double* cos_out, double* sin_out,
                       std::size_t m);
void lorentz_triplet_avx2(double gamma, double c, double a0, double nb, double nk,
                          const double* deltas, double* out, std::size_t m);
#endif

}  // namespace resfluor::kernels::detail
