#include "resfluor/core.hpp"

#include <cmath>
#include <limits>

namespace resfluor {

SystemParams validate_params(double gamma, double rabi, double omega0) {
    if (!std::isfinite(gamma) || !std::isfinite(rabi) || !std::isfinite(omega0)) {
        throw std::invalid_argument("system parameters must be finite");
    }
    if (gamma <= 0.0) {
        throw std::invalid_argument("nonpositive decay rate");
    }
    if (rabi < 0.0) {
        throw std::invalid_argument("negative Rabi frequency");
    }
    if (omega0 <= 0.0) {
        throw std::invalid_argument("nonpositive transition frequency");
    }
    SystemParams p;
    p.gamma = gamma;
    p.rabi = rabi;
    p.omega0 = omega0;
    p.demodulation_warning = (omega0 / gamma) < 100.0;
    return p;
}

SystemParams params_gamma_relative(double gamma, double rabi_over_gamma, double omega0) {
    if (!std::isfinite(gamma) || gamma <= 0.0) {
        throw std::invalid_argument("nonpositive decay rate");
    }
    return validate_params(gamma, rabi_over_gamma * gamma, omega0);
}

bool is_physical(const BlochState& s, double slack) {
    if (!std::isfinite(s.p00) || !std::isfinite(s.re01) || !std::isfinite(s.im01)) {
        return false;
    }
    if (s.p00 < -slack || s.p00 > 1.0 + slack) {
        return false;
    }
    const double coh2 = s.re01 * s.re01 + s.im01 * s.im01;
    return coh2 <= s.p00 * (1.0 - s.p00) + slack;
}

double mu_squared(const SystemParams& p) {
    return (16.0 * p.rabi * p.rabi - p.gamma * p.gamma) / 16.0;
}

SidebandRate sideband_rate(const SystemParams& p) {
    // Principal square root: real mu >= 0 or purely imaginary with Im mu > 0.
    // All closed forms are analytic in mu, so only consistency of the branch
    // matters.
    const complexd radicand(16.0 * p.rabi * p.rabi - p.gamma * p.gamma, 0.0);
    return SidebandRate{0.25 * std::sqrt(radicand)};
}

double cos_mu_tau(double mu_sq, double tau) {
    const double y = mu_sq * tau * tau;
    if (std::abs(y) < 1e-8) {
        return 1.0 - y / 2.0 + y * y / 24.0;
    }
    if (mu_sq > 0.0) {
        return std::cos(std::sqrt(mu_sq) * tau);
    }
    return std::cosh(std::sqrt(-mu_sq) * tau);
}

double sinc_mu_tau(double mu_sq, double tau) {
    const double y = mu_sq * tau * tau;
    if (std::abs(y) < 1e-8) {
        return tau * (1.0 - y / 6.0 + y * y / 120.0);
    }
    if (mu_sq > 0.0) {
        const double mu = std::sqrt(mu_sq);
        return std::sin(mu * tau) / mu;
    }
    const double m = std::sqrt(-mu_sq);
    return std::sinh(m * tau) / m;
}

BlochState stationary_state(const SystemParams& p) {
    const double g2 = p.gamma * p.gamma;
    const double o2 = p.rabi * p.rabi;
    const double den = g2 + 2.0 * o2;
    BlochState s;
    s.p00 = (g2 + o2) / den;
    s.re01 = 0.0;
    s.im01 = p.gamma * p.rabi / den;
    return s;
}

namespace {

bool is_degenerate(const SystemParams& p) {
    const double scale = 16.0 * p.rabi * p.rabi + p.gamma * p.gamma;
    return std::abs(16.0 * p.rabi * p.rabi - p.gamma * p.gamma) <= 1e-12 * scale;
}

BetaPair make_pair(const SystemParams& p, double sym_half, double odd_scale, double asym) {
    BetaPair b;
    if (is_degenerate(p)) {
        b.degenerate = true;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        b.plus = b.minus = complexd(nan, nan);
        return b;
    }
    const complexd mu = sideband_rate(p).mu;
    const complexd odd = complexd(0.0, p.gamma) / (odd_scale * mu) * asym;
    b.plus = sym_half - odd;
    b.minus = sym_half + odd;
    return b;
}

}  // namespace

EnvelopeCoeffs field_envelope_coeffs(const SystemParams& p) {
    const double g2 = p.gamma * p.gamma;
    const double o2 = p.rabi * p.rabi;
    const double den = g2 + 2.0 * o2;
    EnvelopeCoeffs c;
    c.sym = (g2 * g2 + 4.0 * o2 * o2) / (den * den);
    c.asym = 1.0 - 12.0 * g2 * o2 / (den * den);
    c.offset = 4.0 * g2 * o2 / (den * den);
    return c;
}

EnvelopeCoeffs mollow_envelope_coeffs(const SystemParams& p) {
    const double g2 = p.gamma * p.gamma;
    const double o2 = p.rabi * p.rabi;
    const double den = g2 + 2.0 * o2;
    EnvelopeCoeffs c;
    c.sym = (2.0 * o2 - g2) / den;        // = 4 * (-(G^2 - 2 O^2)/(4 den))
    c.asym = 1.0 - 12.0 * o2 / den;
    const double i0 = p.gamma * p.rabi / den;
    c.offset = i0 * i0;                   // coherent part |<s+>|^2
    return c;
}

BetaPair beta_field(const SystemParams& p) {
    const EnvelopeCoeffs c = field_envelope_coeffs(p);
    // beta+- = sym/2 -+ (i G / 8 mu) asym
    return make_pair(p, c.sym / 2.0, 8.0, c.asym);
}

BetaPair beta_mollow(const SystemParams& p) {
    const EnvelopeCoeffs c = mollow_envelope_coeffs(p);
    // beta_mol+- = sym/4 -+ (i G / 16 mu) asym
    return make_pair(p, c.sym / 4.0, 16.0, c.asym);
}

}  // namespace resfluor
