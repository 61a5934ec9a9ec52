#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "resfluor/core.hpp"
#include "resfluor/dynamics.hpp"

using namespace resfluor;

TEST_CASE("parameter validation") {
    const SystemParams p = validate_params(1e8, 4e8, 1e15);
    CHECK(p.gamma == 1e8);
    CHECK(p.rabi == 4e8);
    CHECK_FALSE(p.demodulation_warning);

    const SystemParams undriven = validate_params(1e8, 0.0, 1e15);
    CHECK(undriven.rabi == 0.0);

    CHECK_THROWS_AS(validate_params(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(0.0, 1.0, 1e15), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(1.0, -0.5, 1e15), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(std::nan(""), 1.0, 1e15), std::invalid_argument);

    CHECK(validate_params(1e14, 1e14, 1e15).demodulation_warning);

    const SystemParams rel = params_gamma_relative(2.0, 4.0, 1e8);
    CHECK(rel.rabi == 8.0);
}

TEST_CASE("sideband rate examples and branch") {
    CHECK(sideband_rate(validate_params(1.0, 1.0, 1e8)).mu.real() ==
          doctest::Approx(std::sqrt(15.0) / 4.0).epsilon(1e-14));
    CHECK(sideband_rate(validate_params(1.0, 1.0, 1e8)).mu.imag() == 0.0);

    const complexd mu0 = sideband_rate(validate_params(4.0, 1.0, 1e8)).mu;
    CHECK(mu0 == complexd(0.0, 0.0));

    const complexd mu_im = sideband_rate(validate_params(1.0, 0.1, 1e8)).mu;
    CHECK(mu_im.real() == 0.0);
    CHECK(mu_im.imag() == doctest::Approx(0.2291288).epsilon(1e-6));
}

TEST_CASE("mu squared identity over random draws") {
    oracle::Rng rng(2024);
    for (int k = 0; k < 1000; ++k) {
        const double gamma = rng.log_uniform(1e4, 1e10);
        const double rabi = rng.uniform(0.0, 8.0) * gamma;
        const SystemParams p = validate_params(gamma, rabi, 1e15);
        const complexd mu = sideband_rate(p).mu;
        const complexd musq = mu * mu;
        const double expected = (16.0 * rabi * rabi - gamma * gamma) / 16.0;
        CHECK(musq.imag() == 0.0);
        CHECK(musq.real() ==
              doctest::Approx(expected).epsilon(1e-14).scale(std::abs(expected)));
        // branch convention
        CHECK(mu.real() >= 0.0);
        if (mu.real() == 0.0 && std::abs(mu) > 0.0) {
            CHECK(mu.imag() > 0.0);
        }
        CHECK(mu_squared(p) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("stationary state") {
    const BlochState undriven = stationary_state(validate_params(1.0, 0.0, 1e8));
    CHECK(undriven.p00 == 1.0);
    CHECK(undriven.re01 == 0.0);
    CHECK(undriven.im01 == 0.0);

    // Null vector of the numerically assembled generator, solved directly.
    const SystemParams p = validate_params(1.0, 1.0, 1e8);
    const LiouvillianMatrix lm = liouvillian(p);
    const auto v = oracle::solve3(lm.l, {-lm.b[0], -lm.b[1], -lm.b[2]});
    const BlochState ss = stationary_state(p);
    CHECK(ss.p00 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(ss.re01 == 0.0);
    CHECK(ss.im01 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(ss.p00 == doctest::Approx(v[0]).epsilon(1e-12));
    CHECK(ss.re01 == doctest::Approx(v[1]).epsilon(1e-12));
    CHECK(ss.im01 == doctest::Approx(v[2]).epsilon(1e-12));

    const BlochState saturated = stationary_state(validate_params(1.0, 1e6, 1e10));
    CHECK(saturated.p00 == doctest::Approx(0.5).epsilon(1e-11));
    CHECK(std::abs(saturated.im01) < 1e-5);
}

TEST_CASE("stationary state positivity over random draws") {
    oracle::Rng rng(7);
    for (int k = 0; k < 500; ++k) {
        const double gamma = rng.log_uniform(1e2, 1e12);
        const double rabi = rng.log_uniform(1e-4, 1e3) * gamma;
        CHECK(is_physical(stationary_state(validate_params(gamma, rabi, 1e15)), 1e-14));
    }
}

TEST_CASE("field envelope coefficients") {
    const SystemParams p = validate_params(1.0, 4.0, 1e8);
    const BetaPair b = beta_field(p);
    CHECK_FALSE(b.degenerate);
    CHECK(b.plus.real() == doctest::Approx(0.470615).epsilon(1e-6));
    CHECK(b.plus.imag() == doctest::Approx(-0.025790).epsilon(2e-5));
    CHECK(b.minus.real() == doctest::Approx(0.470615).epsilon(1e-6));
    CHECK(b.minus.imag() == doctest::Approx(0.025790).epsilon(2e-5));

    // Undriven limit with mu = i Gamma/4.
    const BetaPair b0 = beta_field(validate_params(1.0, 0.0, 1e8));
    CHECK(std::abs(b0.plus) < 1e-15);
    CHECK(b0.minus.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(b0.minus.imag() == 0.0);
}

TEST_CASE("beta sum rules and conjugacy over random draws") {
    oracle::Rng rng(11);
    for (int k = 0; k < 400; ++k) {
        const double gamma = rng.log_uniform(1e4, 1e10);
        const double rabi = rng.uniform(0.01, 8.0) * gamma;
        const SystemParams p = validate_params(gamma, rabi, 1e15);
        const BetaPair b = beta_field(p);
        const EnvelopeCoeffs c = field_envelope_coeffs(p);
        const complexd sum = b.plus + b.minus;
        CHECK(std::abs(sum.imag()) < 1e-14);
        CHECK(sum.real() == doctest::Approx(c.sym).epsilon(1e-13));
        // forces g(0) = 1 downstream
        CHECK(sum.real() + c.offset == doctest::Approx(1.0).epsilon(1e-14));

        if (16.0 * rabi * rabi > gamma * gamma) {
            CHECK(b.minus == std::conj(b.plus));
            const BetaPair bm = beta_mollow(p);
            CHECK(std::abs(bm.minus - std::conj(bm.plus)) <=
                  1e-14 * std::max(1.0, std::abs(bm.plus)));
        }
    }
}

TEST_CASE("mollow coefficients") {
    const BetaPair b = beta_mollow(validate_params(1.0, 4.0, 1e8));
    CHECK(b.plus.real() == doctest::Approx(0.234848).epsilon(1e-6));
    CHECK(b.plus.imag() == doctest::Approx(0.075431).epsilon(2e-5));
    CHECK(b.minus.imag() == doctest::Approx(-0.075431).epsilon(2e-5));

    const BetaPair strong = beta_mollow(validate_params(1.0, 1e7, 1e10));
    CHECK(strong.plus.real() == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(std::abs(strong.plus.imag()) < 1e-7);
}

TEST_CASE("degenerate marker at 4 Omega = Gamma") {
    const SystemParams p = validate_params(4.0, 1.0, 1e8);
    const BetaPair bf = beta_field(p);
    const BetaPair bm = beta_mollow(p);
    CHECK(bf.degenerate);
    CHECK(bm.degenerate);
    CHECK(std::isnan(bf.plus.real()));
    CHECK(std::isnan(bm.minus.imag()));
}

TEST_CASE("mu-limit trigonometric helpers") {
    // Continuity through the degenerate point against the exact branches.
    for (const double tau : {0.1, 1.0, 3.0}) {
        const double eps = 1e-5;
        CHECK(cos_mu_tau(eps, tau) == doctest::Approx(std::cos(std::sqrt(eps) * tau)).epsilon(1e-12));
        CHECK(cos_mu_tau(-eps, tau) ==
              doctest::Approx(std::cosh(std::sqrt(eps) * tau)).epsilon(1e-12));
        CHECK(sinc_mu_tau(eps, tau) ==
              doctest::Approx(std::sin(std::sqrt(eps) * tau) / std::sqrt(eps)).epsilon(1e-12));
        CHECK(sinc_mu_tau(-eps, tau) ==
              doctest::Approx(std::sinh(std::sqrt(eps) * tau) / std::sqrt(eps)).epsilon(1e-12));
        CHECK(cos_mu_tau(0.0, tau) == doctest::Approx(1.0));
        CHECK(sinc_mu_tau(0.0, tau) == doctest::Approx(tau));
    }
}

TEST_CASE("bloch state positivity predicate") {
    CHECK(is_physical(BlochState{0.5, 0.5, 0.0}));        // pure state boundary
    CHECK(is_physical(BlochState{1.0, 0.0, 0.0}));
    CHECK_FALSE(is_physical(BlochState{0.5, 0.6, 0.0}));  // coherence too large
    CHECK_FALSE(is_physical(BlochState{1.2, 0.0, 0.0}));
    CHECK_FALSE(is_physical(BlochState{std::nan(""), 0.0, 0.0}));
}
