#include "resfluor/correlation.hpp"

#include <cmath>
#include <numbers>

namespace resfluor {

namespace {

constexpr double kPi = std::numbers::pi;

complexd trace_product(const Mat2c& a, const Mat2c& b) {
    complexd t{0.0, 0.0};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) t += a.m[i][k] * b.m[k][i];
    return t;
}

void check_tau_grid(const std::vector<double>& tau) {
    if (tau.empty() || tau.front() != 0.0) {
        throw std::invalid_argument("tau grid must start at 0");
    }
    for (std::size_t i = 1; i < tau.size(); ++i) {
        if (!(tau[i] > tau[i - 1])) {
            throw std::invalid_argument("tau grid must be strictly ascending");
        }
    }
}

// Quadratures of the theta-averaged integrand against the carrier phase phi:
// value(phi) = e0 + ec cos(phi) + es sin(phi).
struct CarrierQuadratures {
    complexd e0, ec, es;
};

// The integrand is a trigonometric polynomial of degree two in theta, so a
// uniform average over n >= 5 points is exact.
constexpr std::size_t kThetaPoints = 8;

complexd averaged_integrand(const Propagator& prop, const BlochState& ss,
                            const Mat2c& rho, double phi, bool sandwich,
                            std::size_t n_theta) {
    complexd sum{0.0, 0.0};
    for (std::size_t k = 0; k < n_theta; ++k) {
        const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n_theta);
        const MeasurementBasis at_t = projectors(theta);
        const MeasurementBasis at_t_tau = projectors(theta + phi);
        const Mat2c* pi[2] = {&at_t.projector_plus, &at_t.projector_minus};
        const Mat2c* pj[2] = {&at_t_tau.projector_plus, &at_t_tau.projector_minus};
        for (int i = 0; i < 2; ++i) {
            const Mat2c arg = sandwich ? (*pi[i]) * rho * (*pi[i]) : (*pi[i]) * rho;
            const Mat2c evolved = apply_propagator(prop, ss, arg);
            for (int j = 0; j < 2; ++j) {
                const double sign = (i == j) ? 1.0 : -1.0;
                sum += sign * trace_product(*pj[j], evolved);
            }
        }
    }
    return sum / static_cast<double>(n_theta);
}

CarrierQuadratures carrier_quadratures(const Propagator& prop, const BlochState& ss,
                                       const Mat2c& rho, bool sandwich) {
    const complexd at0 = averaged_integrand(prop, ss, rho, 0.0, sandwich, kThetaPoints);
    const complexd at_half = averaged_integrand(prop, ss, rho, 0.5 * kPi, sandwich, kThetaPoints);
    const complexd at_pi = averaged_integrand(prop, ss, rho, kPi, sandwich, kThetaPoints);
    CarrierQuadratures q;
    q.e0 = 0.5 * (at0 + at_pi);
    q.ec = 0.5 * (at0 - at_pi);
    q.es = at_half - q.e0;
    return q;
}

}  // namespace

MeasurementBasis projectors(double phase) {
    MeasurementBasis b;
    b.phase = std::fmod(phase, 2.0 * kPi);
    if (b.phase < 0.0) b.phase += 2.0 * kPi;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    // |l+-><l+-| = [[1/2, +-e^{-i theta}/2], [+-e^{i theta}/2, 1/2]], fixed so
    // that Tr[P+ rho] = 1/2 + Re(e^{i theta} rho01).
    b.projector_plus.m[0][0] = 0.5;
    b.projector_plus.m[0][1] = complexd(0.5 * c, -0.5 * s);
    b.projector_plus.m[1][0] = complexd(0.5 * c, 0.5 * s);
    b.projector_plus.m[1][1] = 0.5;
    b.projector_minus.m[0][0] = 0.5;
    b.projector_minus.m[0][1] = complexd(-0.5 * c, 0.5 * s);
    b.projector_minus.m[1][0] = complexd(-0.5 * c, -0.5 * s);
    b.projector_minus.m[1][1] = 0.5;
    b.bloch_plus = BlochState{0.5, 0.5 * c, -0.5 * s};
    b.bloch_minus = BlochState{0.5, -0.5 * c, 0.5 * s};
    return b;
}

std::vector<double> tau_grid(double tau_max, std::size_t steps) {
    if (!(tau_max > 0.0) || steps < 1) {
        throw std::invalid_argument("tau grid needs tau_max > 0 and steps >= 1");
    }
    std::vector<double> g(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) {
        g[i] = tau_max * static_cast<double>(i) / static_cast<double>(steps);
    }
    g[0] = 0.0;
    return g;
}

EnvelopeSeries conditional_correlation(const SystemParams& p, const std::vector<double>& tau) {
    check_tau_grid(tau);
    const BlochState ss = stationary_state(p);
    const Mat2c rho = Mat2c::from_bloch(ss);
    const EnvelopeCoeffs coeffs = field_envelope_coeffs(p);

    EnvelopeSeries out;
    out.tau = tau;
    out.values.resize(tau.size());
    out.carrier = Carrier::Cosine;
    out.persistent_offset = 0.5 * coeffs.offset;
    out.offset_subtracted = false;

    for (std::size_t i = 0; i < tau.size(); ++i) {
        const Propagator prop = propagator(p, tau[i]);
        const CarrierQuadratures q = carrier_quadratures(prop, ss, rho, /*sandwich=*/true);
        const double scale = std::max(1.0, std::abs(q.ec));
        if (std::abs(q.e0) > 1e-10 * scale || std::abs(q.es) > 1e-10 * scale ||
            std::abs(q.ec.imag()) > 1e-10 * scale) {
            throw NumericalError("conditional correlation: carrier quadratures leaked");
        }
        out.values[i] = q.ec.real();
    }
    return out;
}

EnvelopeSeries correlation_closed(const SystemParams& p, const std::vector<double>& tau) {
    check_tau_grid(tau);
    const EnvelopeCoeffs c = field_envelope_coeffs(p);
    const BetaPair beta = beta_field(p);
    const double msq = mu_squared(p);

    EnvelopeSeries out;
    out.tau = tau;
    out.values.resize(tau.size());
    out.carrier = Carrier::Cosine;
    out.persistent_offset = 0.5 * c.offset;
    out.offset_subtracted = false;

    const complexd i_unit(0.0, 1.0);
    const complexd mu = sideband_rate(p).mu;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        const double t = tau[i];
        double oscillating;
        if (beta.degenerate) {
            oscillating = c.sym * cos_mu_tau(msq, t) + 0.25 * p.gamma * c.asym * sinc_mu_tau(msq, t);
        } else {
            const complexd bracket =
                beta.plus * std::exp(i_unit * mu * t) + beta.minus * std::exp(-i_unit * mu * t);
            if (std::abs(bracket.imag()) > 1e-13 * std::max(1.0, std::abs(bracket.real()))) {
                throw NumericalError("correlation_closed: imaginary residue in envelope");
            }
            oscillating = bracket.real();
        }
        out.values[i] = 0.5 * (std::exp(-0.5 * p.gamma * t) +
                               oscillating * std::exp(-0.75 * p.gamma * t) + c.offset);
    }
    return out;
}

namespace {

Mat2c sigma_minus_rho(const BlochState& ss) {
    Mat2c sminus;
    sminus.m[0][1] = 1.0;
    return sminus * Mat2c::from_bloch(ss);
}

}  // namespace

EnvelopeSeries mollow_correlation(const SystemParams& p, const std::vector<double>& tau) {
    check_tau_grid(tau);
    const BlochState ss = stationary_state(p);
    const Mat2c seed = sigma_minus_rho(ss);

    EnvelopeSeries out;
    out.tau = tau;
    out.values.resize(tau.size());
    out.carrier = Carrier::ExpOmega;
    out.persistent_offset = ss.im01 * ss.im01;  // |<s+>_ss|^2
    out.offset_subtracted = false;

    for (std::size_t i = 0; i < tau.size(); ++i) {
        const Mat2c evolved = apply_propagator(propagator(p, tau[i]), ss, seed);
        out.values[i] = evolved.m[0][1];  // Tr[s+ T_tau(s- rho_ss)]
    }
    return out;
}

EnvelopeSeries mollow_correlation_numeric(const SystemParams& p, const std::vector<double>& tau) {
    check_tau_grid(tau);
    const BlochState ss = stationary_state(p);

    EnvelopeSeries out;
    out.tau = tau;
    out.values.resize(tau.size());
    out.carrier = Carrier::ExpOmega;
    out.persistent_offset = ss.im01 * ss.im01;
    out.offset_subtracted = false;

    Mat2c m = sigma_minus_rho(ss);
    out.values[0] = m.m[0][1];
    for (std::size_t i = 1; i < tau.size(); ++i) {
        m = evolve_numeric(p, m, tau[i] - tau[i - 1]);
        out.values[i] = m.m[0][1];
    }
    return out;
}

EnvelopeSeries sigmax_correlation(const SystemParams& p, const std::vector<double>& tau) {
    check_tau_grid(tau);
    const BlochState ss = stationary_state(p);
    const Mat2c rho = Mat2c::from_bloch(ss);
    const EnvelopeCoeffs coeffs = field_envelope_coeffs(p);

    EnvelopeSeries out;
    out.tau = tau;
    out.values.resize(tau.size());
    out.sin_values.resize(tau.size());
    out.carrier = Carrier::Cosine;
    out.persistent_offset = 0.5 * coeffs.offset;
    out.offset_subtracted = false;

    for (std::size_t i = 0; i < tau.size(); ++i) {
        const Propagator prop = propagator(p, tau[i]);
        const CarrierQuadratures q = carrier_quadratures(prop, ss, rho, /*sandwich=*/false);
        const double scale = std::max({1.0, std::abs(q.ec), std::abs(q.es)});
        if (std::abs(q.e0) > 1e-10 * scale) {
            throw NumericalError("sigmax correlation: constant quadrature leaked");
        }
        out.values[i] = q.ec;
        out.sin_values[i] = q.es;
    }
    return out;
}

complexd theta_average_integrand(const SystemParams& p, double tau, double phi,
                                 bool sandwich, std::size_t n_theta) {
    if (n_theta < 1) {
        throw std::invalid_argument("theta average needs at least one point");
    }
    const BlochState ss = stationary_state(p);
    const Mat2c rho = Mat2c::from_bloch(ss);
    return averaged_integrand(propagator(p, tau), ss, rho, phi, sandwich, n_theta);
}

}  // namespace resfluor
