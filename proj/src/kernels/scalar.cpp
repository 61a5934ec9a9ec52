// Reference implementations: straight per-point libm evaluation.
#include "kernels_impl.hpp"

#include <cmath>

namespace resfluor::kernels::detail {

void fourier_sums_scalar(const double* a, std::size_t n, double tau0, double dtau,
                         const double* deltas, double* cos_out, double* sin_out,
                         std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) {
        const double d = deltas[j];
        double cs = 0.0;
        double sn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double phase = d * (tau0 + static_cast<double>(i) * dtau);
            cs += a[i] * std::cos(phase);
            sn += a[i] * std::sin(phase);
        }
        if (cos_out) cos_out[j] = cs;
        if (sin_out) sin_out[j] = sn;
    }
}

void lorentz_triplet_scalar(double gamma, double c, double a0, double nb, double nk,
                            const double* deltas, double* out, std::size_t m) {
    const double g2 = gamma * gamma;
    const double num_re = 3.0 * gamma * nb - gamma * nk;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = deltas[j];
        const double den_re = 9.0 * g2 - 16.0 * d * d + c;
        const double den_im = 24.0 * gamma * d;
        const double num_im_times_den_im = 4.0 * nb * d * den_im;
        const double central = a0 * gamma / (g2 + 4.0 * d * d);
        out[j] = central + 2.0 * (num_re * den_re + num_im_times_den_im) /
                               (den_re * den_re + den_im * den_im);
    }
}

}  // namespace resfluor::kernels::detail
