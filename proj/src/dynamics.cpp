#include "resfluor/dynamics.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>

namespace resfluor {

Mat2c Mat2c::identity() {
    Mat2c r;
    r.m[0][0] = 1.0;
    r.m[1][1] = 1.0;
    return r;
}

Mat2c Mat2c::from_bloch(const BlochState& s) {
    Mat2c r;
    r.m[0][0] = s.p00;
    r.m[0][1] = complexd(s.re01, s.im01);
    r.m[1][0] = complexd(s.re01, -s.im01);
    r.m[1][1] = 1.0 - s.p00;
    return r;
}

Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        }
    }
    return r;
}

Mat2c operator+(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
    return r;
}

Mat2c operator-(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
    return r;
}

Mat2c operator*(complexd c, const Mat2c& a) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = c * a.m[i][j];
    return r;
}

Mat2c dagger(const Mat2c& a) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.m[i][j] = std::conj(a.m[j][i]);
    return r;
}

complexd trace(const Mat2c& a) { return a.m[0][0] + a.m[1][1]; }

Propagator propagator(const SystemParams& p, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("propagator requires tau >= 0");
    }
    const double msq = mu_squared(p);
    const double c = cos_mu_tau(msq, tau);
    const double s = sinc_mu_tau(msq, tau);  // sin(mu tau)/mu
    const double envelope = std::exp(-0.75 * p.gamma * tau);

    Propagator prop;
    prop.tau = tau;
    prop.coherence_factor = std::exp(-0.5 * p.gamma * tau);
    // [I cos - (1/4)[[G, 4O], [-4O, -G]] sinc] e^{-3 G tau/4}
    prop.amatrix[0][0] = (c - 0.25 * p.gamma * s) * envelope;
    prop.amatrix[0][1] = (-p.rabi * s) * envelope;
    prop.amatrix[1][0] = (p.rabi * s) * envelope;
    prop.amatrix[1][1] = (c + 0.25 * p.gamma * s) * envelope;
    return prop;
}

BlochState apply_propagator(const Propagator& prop, const BlochState& ss, const BlochState& s) {
    const double dp = s.p00 - ss.p00;
    const double di = s.im01 - ss.im01;
    BlochState out;
    out.p00 = prop.amatrix[0][0] * dp + prop.amatrix[0][1] * di + ss.p00;
    out.im01 = prop.amatrix[1][0] * dp + prop.amatrix[1][1] * di + ss.im01;
    out.re01 = prop.coherence_factor * s.re01;
    return out;
}

BlochState evolve(const SystemParams& p, const BlochState& s, double tau) {
    if (!is_physical(s)) {
        throw std::invalid_argument("evolve requires a physical Bloch state");
    }
    return apply_propagator(propagator(p, tau), stationary_state(p), s);
}

Mat2c apply_propagator(const Propagator& prop, const BlochState& ss, const Mat2c& m) {
    // Hermitian split m = h1 + i h2; each Hermitian part evolves with the
    // trace-affine map (the affine offset applies per unit trace).
    const Mat2c md = dagger(m);
    const Mat2c h1 = complexd(0.5, 0.0) * (m + md);
    const Mat2c h2 = complexd(0.0, -0.5) * (m - md);

    auto evolve_hermitian = [&](const Mat2c& h) {
        const double tr = h.m[0][0].real() + h.m[1][1].real();
        const double p00 = h.m[0][0].real();
        const double re01 = h.m[0][1].real();
        const double im01 = h.m[0][1].imag();
        const double dp = p00 - tr * ss.p00;
        const double di = im01 - tr * ss.im01;
        Mat2c out;
        const double p00t = prop.amatrix[0][0] * dp + prop.amatrix[0][1] * di + tr * ss.p00;
        const double im01t = prop.amatrix[1][0] * dp + prop.amatrix[1][1] * di + tr * ss.im01;
        const double re01t = prop.coherence_factor * re01;
        out.m[0][0] = p00t;
        out.m[0][1] = complexd(re01t, im01t);
        out.m[1][0] = complexd(re01t, -im01t);
        out.m[1][1] = tr - p00t;
        return out;
    };

    return evolve_hermitian(h1) + complexd(0.0, 1.0) * evolve_hermitian(h2);
}

LiouvillianMatrix liouvillian(const SystemParams& p) {
    // d/dtau (p00, re01, im01) from
    //   drho/dtau = -i (O/2)[sx, rho] + G s- rho s+ - (G/2){s+ s-, rho}.
    LiouvillianMatrix lm;
    lm.l[0] = {-p.gamma, 0.0, -p.rabi};
    lm.l[1] = {0.0, -0.5 * p.gamma, 0.0};
    lm.l[2] = {p.rabi, 0.0, -0.5 * p.gamma};
    lm.b = {p.gamma, 0.0, -0.5 * p.rabi};
    return lm;
}

Mat2c master_rhs(const SystemParams& p, const Mat2c& m) {
    Mat2c sx;
    sx.m[0][1] = 1.0;
    sx.m[1][0] = 1.0;
    Mat2c sminus;  // |0><1|
    sminus.m[0][1] = 1.0;
    const Mat2c splus = dagger(sminus);

    const Mat2c commutator = sx * m - m * sx;
    const Mat2c jump = sminus * m * splus;
    const Mat2c number = splus * sminus;
    const Mat2c anticomm = number * m + m * number;

    return complexd(0.0, -0.5 * p.rabi) * commutator + complexd(p.gamma, 0.0) * jump +
           complexd(-0.5 * p.gamma, 0.0) * anticomm;
}

namespace {

using Vec8 = std::array<double, 8>;

Vec8 pack(const Mat2c& m) {
    return {m.m[0][0].real(), m.m[0][0].imag(), m.m[0][1].real(), m.m[0][1].imag(),
            m.m[1][0].real(), m.m[1][0].imag(), m.m[1][1].real(), m.m[1][1].imag()};
}

Mat2c unpack(const Vec8& v) {
    Mat2c m;
    m.m[0][0] = complexd(v[0], v[1]);
    m.m[0][1] = complexd(v[2], v[3]);
    m.m[1][0] = complexd(v[4], v[5]);
    m.m[1][1] = complexd(v[6], v[7]);
    return m;
}

Vec8 integrate_master(const SystemParams& p, Vec8 state, double tau) {
    namespace odeint = boost::numeric::odeint;
    using stepper_t = odeint::runge_kutta_dopri5<Vec8>;
    auto rhs = [&p](const Vec8& v, Vec8& dvdt, double) {
        dvdt = pack(master_rhs(p, unpack(v)));
    };
    const double dt0 = 0.01 / p.gamma;
    try {
        odeint::integrate_adaptive(odeint::make_controlled<stepper_t>(1e-12, 1e-12), rhs,
                                   state, 0.0, tau, std::min(dt0, tau > 0 ? tau : dt0));
    } catch (const std::exception& e) {
        throw NumericalError(std::string("adaptive integration failed: ") + e.what());
    }
    return state;
}

}  // namespace

BlochState evolve_numeric(const SystemParams& p, const BlochState& s, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("evolve_numeric requires tau >= 0");
    }
    if (tau == 0.0) {
        return s;
    }
    const Vec8 out = integrate_master(p, pack(Mat2c::from_bloch(s)), tau);
    BlochState r;
    r.p00 = out[0];
    r.re01 = out[2];
    r.im01 = out[3];
    return r;
}

Mat2c evolve_numeric(const SystemParams& p, const Mat2c& m, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("evolve_numeric requires tau >= 0");
    }
    if (tau == 0.0) {
        return m;
    }
    return unpack(integrate_master(p, pack(m), tau));
}

}  // namespace resfluor
