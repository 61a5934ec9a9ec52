// Interaction-picture time evolution of the driven, decaying two-level
// system: the closed-form propagator, its affine action on Bloch states, the
// linear extension to arbitrary 2x2 matrices used by the correlation
// pipelines, and an independent adaptive-integrator oracle.
#pragma once

#include <array>
#include <complex>

#include "resfluor/core.hpp"

namespace resfluor {

// Complex 2x2 matrix in row-major order, m[row][col]; basis |0> = ground.
struct Mat2c {
    std::array<std::array<complexd, 2>, 2> m{{{complexd{}, complexd{}}, {complexd{}, complexd{}}}};

    static Mat2c identity();
    static Mat2c from_bloch(const BlochState& s);
};

Mat2c operator*(const Mat2c& a, const Mat2c& b);
Mat2c operator+(const Mat2c& a, const Mat2c& b);
Mat2c operator-(const Mat2c& a, const Mat2c& b);
Mat2c operator*(complexd c, const Mat2c& a);
Mat2c dagger(const Mat2c& a);
complexd trace(const Mat2c& a);

// Decay factor for Re rho01 tagged with the 2x2 map acting on the
// (rho00, Im rho01) pair relative to the stationary state:
//   A(tau) = [I cos(mu tau) - (1/4mu) [[G, 4 O], [-4 O, -G]] sin(mu tau)] e^{-3 G tau/4}
// evaluated through the mu^2 limit-safe forms, so the entries are real in the
// overdamped regime as well.
struct Propagator {
    double tau = 0.0;
    double coherence_factor = 1.0;               // e^{-Gamma tau / 2}
    std::array<std::array<double, 2>, 2> amatrix{{{1.0, 0.0}, {0.0, 1.0}}};
};

// Rejects tau < 0.
Propagator propagator(const SystemParams& p, double tau);

// Applies a precomputed propagator: re01 scales with the coherence factor,
// (p00, im01) follow the affine map around the stationary state.
BlochState apply_propagator(const Propagator& prop, const BlochState& ss, const BlochState& s);

// Convenience wrapper building the propagator for one step. Rejects states
// violating positivity by more than 1e-10.
BlochState evolve(const SystemParams& p, const BlochState& s, double tau);

// Linear extension of the evolution map to an arbitrary complex 2x2 matrix:
// split into Hermitian parts, evolve each with the trace-affine map (the
// affine offset enters per unit trace, traceless parts evolve homogeneously),
// recombine. This is what quantum-regression correlation functions need.
Mat2c apply_propagator(const Propagator& prop, const BlochState& ss, const Mat2c& m);

// Generator of the master equation in real coordinates v = (p00, re01, im01):
// d/dtau v = L v + b. The re01 row is decoupled with eigenvalue -Gamma/2.
struct LiouvillianMatrix {
    std::array<std::array<double, 3>, 3> l{};
    std::array<double, 3> b{};
};

LiouvillianMatrix liouvillian(const SystemParams& p);

// Master-equation right-hand side on an arbitrary complex 2x2 matrix,
//   -i (O/2) [sx, m] + G sminus m splus - (G/2) {splus sminus, m}.
Mat2c master_rhs(const SystemParams& p, const Mat2c& m);

// Adaptive high-order integration of d/dtau v = L v + b (local tolerance
// 1e-12). Independent of the closed forms above; used as their oracle.
BlochState evolve_numeric(const SystemParams& p, const BlochState& s, double tau);

// Same integrator acting on a full complex 2x2 matrix through master_rhs;
// pins the linear extension of apply_propagator.
Mat2c evolve_numeric(const SystemParams& p, const Mat2c& m, double tau);

}  // namespace resfluor
