// Validated system parameters and the closed-form scalar quantities that the
// rest of the library is built from: the sideband rate mu, the stationary
// Bloch vector and the two families of correlation-envelope coefficients.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace resfluor {

using complexd = std::complex<double>;

// Thrown when a quadrature or iteration cannot reach its accuracy target.
// The CLI maps this to exit code 3, invalid_argument to exit code 2.
class NumericalError : public std::runtime_error {
  public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Decay rate Gamma, Rabi frequency Omega and transition frequency omega0 of a
// resonantly driven two-level emitter. All rates in rad/s.
struct SystemParams {
    double gamma = 0.0;
    double rabi = 0.0;
    double omega0 = 0.0;
    // Set when omega0/gamma < 100. The demodulated spectra drop the image at
    // -omega0, which is only accurate for omega0 >> gamma.
    bool demodulation_warning = false;
};

// Rejects gamma <= 0, rabi < 0, omega0 <= 0 and non-finite input.
SystemParams validate_params(double gamma, double rabi, double omega0);

// Rabi frequency supplied as a multiple of gamma (the CLI unit convention).
SystemParams params_gamma_relative(double gamma, double rabi_over_gamma, double omega0);

// Interaction-picture 2x2 density matrix in real coordinates
// (rho00, Re rho01, Im rho01); rho11 = 1 - rho00 and rho10 = conj(rho01).
struct BlochState {
    double p00 = 1.0;
    double re01 = 0.0;
    double im01 = 0.0;
};

// Positivity check: p00 in [0,1] and |rho01|^2 <= p00 (1 - p00), within slack.
bool is_physical(const BlochState& s, double slack = 1e-10);

// Oscillation rate of the sideband dynamics, mu = sqrt(16 Omega^2 - Gamma^2)/4
// as a principal complex square root: real mu >= 0 for 16 Omega^2 >= Gamma^2,
// purely imaginary with positive imaginary part otherwise.
struct SidebandRate {
    complexd mu{0.0, 0.0};
};

SidebandRate sideband_rate(const SystemParams& p);

// mu^2 = (16 Omega^2 - Gamma^2)/16, real for all parameters. All closed forms
// below consume mu only through mu^2, which keeps the 4 Omega = Gamma point
// regular.
double mu_squared(const SystemParams& p);

// cos(mu tau) evaluated from mu^2: trigonometric for mu^2 > 0, hyperbolic for
// mu^2 < 0, Taylor series through the degenerate point.
double cos_mu_tau(double mu_sq, double tau);

// sin(mu tau)/mu evaluated from mu^2; tends to tau as mu -> 0.
double sinc_mu_tau(double mu_sq, double tau);

// Stationary state of the driven master equation:
// p00 = (G^2 + O^2)/(G^2 + 2 O^2), im01 = G O/(G^2 + 2 O^2), re01 = 0.
BlochState stationary_state(const SystemParams& p);

// Pair of envelope coefficients multiplying e^{+i mu tau} and e^{-i mu tau}.
// At 4 Omega = Gamma the members are individually singular; `degenerate` is
// set and the values are NaN. Downstream closed forms never divide by mu:
// they use the cos/sinc limit representation instead.
struct BetaPair {
    complexd plus{0.0, 0.0};
    complexd minus{0.0, 0.0};
    bool degenerate = false;
};

// Coefficients of the conditional-measurement (field) correlation envelope.
BetaPair beta_field(const SystemParams& p);

// Coefficients of the regression (Mollow) spectrum.
BetaPair beta_mollow(const SystemParams& p);

// mu-free parts of the two envelopes/spectra. The field envelope bracket is
//   e^{-G tau/2} + [sym cos(mu tau) + (G asym/4) sin(mu tau)/mu] e^{-3 G tau/4} + offset
// with beta+- = sym/2 -+ i G asym/(8 mu); the Mollow coefficients carry the
// analogous split with beta_mol+- = sym/4... kept explicit per accessor.
struct EnvelopeCoeffs {
    double sym = 0.0;    // coefficient of cos(mu tau) (= beta+ + beta-)
    double asym = 0.0;   // dimensionless odd part; sin term is (gamma*asym/4) sinc
    double offset = 0.0; // persistent constant of the envelope bracket
};

// sym = (G^4 + 4 O^4)/(G^2 + 2 O^2)^2, asym = 1 - 12 G^2 O^2/(G^2 + 2 O^2)^2,
// offset = 4 G^2 O^2/(G^2 + 2 O^2)^2. Note sym + offset = 1 exactly.
EnvelopeCoeffs field_envelope_coeffs(const SystemParams& p);

// Mollow analogue: sym = -(G^2 - 2 O^2)/(G^2 + 2 O^2), asym with the
// 12 O^2/(G^2 + 2 O^2) bracket; both enter the spectrum scaled by 1/4.
EnvelopeCoeffs mollow_envelope_coeffs(const SystemParams& p);

}  // namespace resfluor
