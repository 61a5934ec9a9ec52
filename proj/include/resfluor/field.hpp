// Spatial weight tensor converting the atomic coherence into the electric
// field at a detector position: the radial frequency integral reduced to the
// auxiliary sine/cosine-integral functions, its derivatives, the tensor
// assembly and the radial power-law diagnostics.
#pragma once

#include <array>

#include "resfluor/core.hpp"

namespace resfluor {

inline constexpr double speed_of_light = 299792458.0;   // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

// Auxiliary trigonometric-integral functions
//   f(x) = Ci(x) sin x + (pi/2 - Si x) cos x = Int_0^inf sin t/(x + t) dt,
//   g(x) = -Ci(x) cos x + (pi/2 - Si x) sin x = Int_0^inf cos t/(x + t) dt,
// power series below x = 4, rational Chebyshev-Pade approximations above.
struct AuxFG {
    double f = 0.0;
    double g = 0.0;
};

AuxFG aux_fg(double x);

// Radial kernel F(r) = (1/r) Int_0^inf dw sin(w r/c)/(w0 + w) = f(w0 r/c)/r,
// with analytic first and second derivatives via f' = -g, g' = f - 1/x.
struct RadialKernel {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

// Requires r > 0.
RadialKernel radial_kernel(double r, double omega0);

// Independent evaluation of F(r) by direct oscillatory quadrature: half-period
// partial sums of the integrand accelerated by an Euler transformation.
// Throws NumericalError if the acceleration fails to converge.
double radial_kernel_quadrature(double r, double omega0);

// Symmetric 3x3 weight tensor
//   w_ij = (1/2 pi^2) (-delta_ij Lap + d_i d_j) F(|x|),
// assembled by the chain rule on the radial kernel. Requires |x| > 0.
struct FieldWeight {
    std::array<double, 3> position{};             // m
    std::array<std::array<double, 3>, 3> tensor{};  // 1/m^3
    double omega0 = 0.0;
};

FieldWeight weight_tensor(const std::array<double, 3>& x, double omega0);

// Real transition dipole moment, C m.
struct DipoleMoment {
    std::array<double, 3> d{};
};

// E_i = w_ij d_j <sigma_x> / eps0. The printed signal formula absorbs eps0
// into the weight; dividing it out here is what returns V/m for a tensor in
// 1/m^3 and a dipole in C m.
std::array<double, 3> field_signal(const FieldWeight& w, const DipoleMoment& d,
                                   double sigmax_expectation);

// Radial decomposition used by the power-law diagnostics: the kernel itself
// plus the two angular components of the tensor,
//   w_ij = transverse (delta_ij - xh_i xh_j) + longitudinal (3 xh_i xh_j - delta_ij).
// In the near zone these scale as r^-1, r^-2 and r^-3.
struct RadialComponents {
    double kernel = 0.0;        // F(r)
    double transverse = 0.0;    // -(1/2 pi^2) Lap F = (k^2/2 pi^2)(f - 1/a)/r
    double longitudinal = 0.0;  // (1/2 pi^2)(k g/r^2 + f/r^3)
};

RadialComponents radial_components(double r, double omega0);

// Log-log slope of each component fitted over a geometric grid of n points in
// [r_lo, r_hi]. The defaults sit in the near zone r << lambda0 where the
// special-function factors are flat; expected exponents {-1, -2, -3}.
struct RadialExponents {
    double kernel = 0.0;
    double transverse = 0.0;
    double longitudinal = 0.0;
};

RadialExponents fit_radial_exponents(double omega0, double r_lo, double r_hi,
                                     std::size_t n = 48);

// Near-zone default window [1e-4, 1e-2] * lambda0.
RadialExponents fit_radial_exponents(double omega0);

}  // namespace resfluor
