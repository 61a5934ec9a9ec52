// AVX2 variants. The Fourier kernel keeps four lane phasors advanced by a
// constant rotor per block and resynchronizes them from libm every 512 blocks
// to bound rotor drift. Compiled with -mavx2 -mfma; callers dispatch only
// after a CPU feature check.
#include "kernels_impl.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

namespace resfluor::kernels::detail {

bool avx2_supported() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

constexpr std::size_t kResyncBlocks = 512;

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void fourier_sums_avx2(const double* a, std::size_t n, double tau0, double dtau,
                       const double* deltas, double* cos_out, double* sin_out,
                       std::size_t m) {
    for (std::size_t j = 0; j < m; ++j) {
        const double d = deltas[j];
        const double step = 4.0 * d * dtau;
        const __m256d rot_c = _mm256_set1_pd(std::cos(step));
        const __m256d rot_s = _mm256_set1_pd(std::sin(step));

        __m256d acc_c = _mm256_setzero_pd();
        __m256d acc_s = _mm256_setzero_pd();
        __m256d ph_c = _mm256_setzero_pd();
        __m256d ph_s = _mm256_setzero_pd();

        const std::size_t blocks = n / 4;
        std::size_t since_sync = kResyncBlocks;  // forces initial load
        for (std::size_t b = 0; b < blocks; ++b) {
            if (since_sync >= kResyncBlocks) {
                alignas(32) double cbuf[4];
                alignas(32) double sbuf[4];
                for (int l = 0; l < 4; ++l) {
                    const double phase = d * (tau0 + static_cast<double>(4 * b + l) * dtau);
                    cbuf[l] = std::cos(phase);
                    sbuf[l] = std::sin(phase);
                }
                ph_c = _mm256_load_pd(cbuf);
                ph_s = _mm256_load_pd(sbuf);
                since_sync = 0;
            }
            const __m256d av = _mm256_loadu_pd(a + 4 * b);
            acc_c = _mm256_fmadd_pd(av, ph_c, acc_c);
            acc_s = _mm256_fmadd_pd(av, ph_s, acc_s);
            const __m256d next_c = _mm256_fmsub_pd(ph_c, rot_c, _mm256_mul_pd(ph_s, rot_s));
            const __m256d next_s = _mm256_fmadd_pd(ph_s, rot_c, _mm256_mul_pd(ph_c, rot_s));
            ph_c = next_c;
            ph_s = next_s;
            ++since_sync;
        }

        double cs = hsum(acc_c);
        double sn = hsum(acc_s);
        for (std::size_t i = 4 * blocks; i < n; ++i) {
            const double phase = d * (tau0 + static_cast<double>(i) * dtau);
            cs += a[i] * std::cos(phase);
            sn += a[i] * std::sin(phase);
        }
        if (cos_out) cos_out[j] = cs;
        if (sin_out) sin_out[j] = sn;
    }
}

void lorentz_triplet_avx2(double gamma, double c, double a0, double nb, double nk,
                          const double* deltas, double* out, std::size_t m) {
    const double g2 = gamma * gamma;
    const __m256d v_g2 = _mm256_set1_pd(g2);
    const __m256d v_9g2c = _mm256_set1_pd(9.0 * g2 + c);
    const __m256d v_numre = _mm256_set1_pd(3.0 * gamma * nb - gamma * nk);
    const __m256d v_96gnb = _mm256_set1_pd(96.0 * gamma * nb);
    const __m256d v_24g = _mm256_set1_pd(24.0 * gamma);
    const __m256d v_a0g = _mm256_set1_pd(a0 * gamma);
    const __m256d v_two = _mm256_set1_pd(2.0);
    const __m256d v_four = _mm256_set1_pd(4.0);
    const __m256d v_16 = _mm256_set1_pd(16.0);

    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        const __m256d d = _mm256_loadu_pd(deltas + j);
        const __m256d d2 = _mm256_mul_pd(d, d);
        const __m256d den_re = _mm256_fnmadd_pd(v_16, d2, v_9g2c);  // 9g^2 + c - 16 d^2
        const __m256d den_im = _mm256_mul_pd(v_24g, d);
        const __m256d num = _mm256_fmadd_pd(v_96gnb, d2, _mm256_mul_pd(v_numre, den_re));
        const __m256d den = _mm256_fmadd_pd(den_im, den_im, _mm256_mul_pd(den_re, den_re));
        const __m256d central =
            _mm256_div_pd(v_a0g, _mm256_fmadd_pd(v_four, d2, v_g2));
        const __m256d val =
            _mm256_add_pd(central, _mm256_div_pd(_mm256_mul_pd(v_two, num), den));
        _mm256_storeu_pd(out + j, val);
    }
    if (j < m) {
        lorentz_triplet_scalar(gamma, c, a0, nb, nk, deltas + j, out + j, m - j);
    }
}

}  // namespace resfluor::kernels::detail

#endif  // __x86_64__
