#include "resfluor/kernels.hpp"

#include <atomic>
#include <stdexcept>

#include "kernels_impl.hpp"

namespace resfluor::kernels {

namespace {

Backend detect() {
#if defined(__x86_64__)
    if (detail::avx2_supported()) {
        return Backend::Avx2;
    }
#endif
    return Backend::Scalar;
}

std::atomic<int> g_forced{-1};

}  // namespace

Backend active_backend() {
    const int forced = g_forced.load(std::memory_order_relaxed);
    if (forced >= 0) {
        return static_cast<Backend>(forced);
    }
    static const Backend detected = detect();
    return detected;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Avx2:
            return "avx2";
        case Backend::Scalar:
        default:
            return "scalar";
    }
}

void force_backend(Backend b) {
#if defined(__x86_64__)
    if (b == Backend::Avx2 && !detail::avx2_supported()) {
        throw std::invalid_argument("AVX2 backend not supported on this CPU");
    }
#else
    if (b == Backend::Avx2) {
        throw std::invalid_argument("AVX2 backend not supported on this CPU");
    }
#endif
    g_forced.store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_backend() { g_forced.store(-1, std::memory_order_relaxed); }

void fourier_sums(const double* a, std::size_t n, double tau0, double dtau,
                  const double* deltas, double* cos_out, double* sin_out,
                  std::size_t m) {
#if defined(__x86_64__)
    if (active_backend() == Backend::Avx2) {
        detail::fourier_sums_avx2(a, n, tau0, dtau, deltas, cos_out, sin_out, m);
        return;
    }
#endif
    detail::fourier_sums_scalar(a, n, tau0, dtau, deltas, cos_out, sin_out, m);
}

void lorentz_triplet(double gamma, double c, double a0, double nb, double nk,
                     const double* deltas, double* out, std::size_t m) {
#if defined(__x86_64__)
    if (active_backend() == Backend::Avx2) {
        detail::lorentz_triplet_avx2(gamma, c, a0, nb, nk, deltas, out, m);
        return;
    }
#endif
    detail::lorentz_triplet_scalar(gamma, c, a0, nb, nk, deltas, out, m);
}

}  // namespace resfluor::kernels
