// Data-parallel inner loops behind the spectra: a demodulated Fourier
// summation kernel and the three-Lorentzian closed-form evaluator. Scalar
// reference implementations plus an AVX2 variant selected at runtime; the
// variants are equivalence-tested against each other.
#pragma once

#include <cstddef>

namespace resfluor::kernels {

enum class Backend { Scalar, Avx2 };

// Backend picked at first use from CPU features (AVX2 when available).
Backend active_backend();
const char* backend_name(Backend b);

// Test hooks. force_backend(Backend::Avx2) throws std::invalid_argument when
// the CPU lacks AVX2; reset_backend() returns to auto-detection.
void force_backend(Backend b);
void reset_backend();

// For j in [0, m):
//   cos_out[j] = sum_i a[i] * cos(delta[j] * (tau0 + i*dtau))
//   sin_out[j] = sum_i a[i] * sin(delta[j] * (tau0 + i*dtau))
// The grid is uniform; either output pointer may be null to skip it.
void fourier_sums(const double* a, std::size_t n, double tau0, double dtau,
                  const double* deltas, double* cos_out, double* sin_out,
                  std::size_t m);

// Closed-form triplet shared by both spectra, evaluated in a form that is
// regular through 4 Omega = Gamma (c = 16 Omega^2 - Gamma^2 of either sign):
//   out[j] = a0*gamma/(gamma^2 + 4 d^2) + 2 Re[(nb z - gamma nk)/(z^2 + c)],
// with z = 3 gamma + 4 i d and d = deltas[j].
void lorentz_triplet(double gamma, double c, double a0, double nb, double nk,
                     const double* deltas, double* out, std::size_t m);

}  // namespace resfluor::kernels
