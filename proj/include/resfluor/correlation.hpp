// Stationary two-time correlation functions of the driven emitter: the
// conditional-measurement correlation (projective sigma_x measurements at t
// and t+tau, subensembles propagated in between), its closed form, the
// quantum-regression (Mollow) correlation and the unconditional sigma_x
// variant. All series store slowly varying envelopes; the optical carrier is
// factored out analytically and reattached in the spectrum module.
#pragma once

#include <vector>

#include "resfluor/core.hpp"
#include "resfluor/dynamics.hpp"

namespace resfluor {

// Projective measurement basis of sigma_x(t): |l+-> = (|0> +- e^{i theta}|1>)/sqrt(2)
// with theta = omega0 t mod 2 pi and eigenvalues exactly +-1.
struct MeasurementBasis {
    double phase = 0.0;
    std::array<double, 2> eigenvalues{+1.0, -1.0};
    Mat2c projector_plus;    // |l+><l+|
    Mat2c projector_minus;   // |l-><l-|
    BlochState bloch_plus;   // same projectors as density-matrix coordinates
    BlochState bloch_minus;  // (p00 = 1/2, re01 = +-cos(theta)/2, im01 = -+sin(theta)/2)
};

MeasurementBasis projectors(double phase);

enum class Carrier {
    Cosine,   // correlation = envelope(tau) * cos(omega0 tau), envelope real
    ExpOmega  // correlation = envelope(tau) * carrier at omega0, envelope complex
};

// tau grid plus demodulated correlation envelope. `persistent_offset` is the
// tau -> infinity constant of the envelope; `offset_subtracted` records
// whether values still contain it. For the unconditional sigma_x correlation
// `sin_values` carries the quadrature multiplying sin(omega0 tau) (empty for
// the other pipelines, which are pure-cosine by construction).
struct EnvelopeSeries {
    std::vector<double> tau;
    std::vector<complexd> values;
    std::vector<complexd> sin_values;
    Carrier carrier = Carrier::Cosine;
    complexd persistent_offset{0.0, 0.0};
    bool offset_subtracted = false;
};

// Uniform grid 0..tau_max with `steps` intervals (steps+1 points).
std::vector<double> tau_grid(double tau_max, std::size_t steps);

// Conditional-measurement correlation: for each tau evaluates
//   sum_{i,j} l_i l_j Tr[P_j(t+tau) T_tau(P_i(t) rho_ss P_i(t))]
// with the projector sandwich taken literally as a matrix product, and the
// long-time average over t carried out exactly as a uniform average over
// theta = omega0 t (the integrand is a trigonometric polynomial in theta).
// The cos(omega0 tau) carrier is factored out analytically; the sine and
// constant quadratures are checked to vanish.
EnvelopeSeries conditional_correlation(const SystemParams& p, const std::vector<double>& tau);

// Closed form of the same envelope,
//   g(tau) = (1/2)[e^{-G tau/2}
//                  + (beta+ e^{i mu tau} + beta- e^{-i mu tau}) e^{-3 G tau/4}
//                  + 4 G^2 O^2/(G^2 + 2 O^2)^2],
// evaluated verbatim in complex arithmetic away from 4 Omega = Gamma (the
// imaginary residue is asserted < 1e-13 and dropped) and through the
// cos/sinc limit representation near the degeneracy.
EnvelopeSeries correlation_closed(const SystemParams& p, const std::vector<double>& tau);

// Quantum-regression correlation Tr[s+ T_tau(s- rho_ss)] in the interaction
// picture. The persistent coherent offset |rho01_ss|^2 is retained in the
// values and flagged in persistent_offset.
EnvelopeSeries mollow_correlation(const SystemParams& p, const std::vector<double>& tau);

// Regression evaluated with the adaptive integrator instead of the closed
// form propagator; oracle for mollow_correlation.
EnvelopeSeries mollow_correlation_numeric(const SystemParams& p, const std::vector<double>& tau);

// Unconditional variant: theta-averaged Tr[sx(t+tau) T_tau(sx(t) rho_ss)]
// with no projector sandwich. values = cosine quadrature (the component also
// produced by the conditional pipeline), sin_values = the extra quadrature
// that the conditional correlation does not have.
EnvelopeSeries sigmax_correlation(const SystemParams& p, const std::vector<double>& tau);

// theta-average of either integrand at an explicit carrier phase phi, by an
// n-point uniform rule. Test surface for the exactness of the built-in
// average.
complexd theta_average_integrand(const SystemParams& p, double tau, double phi,
                                 bool sandwich, std::size_t n_theta);

}  // namespace resfluor
