#include "resfluor/field.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

namespace resfluor {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;

// Power series for Si(x) and Ci(x), adequate below x = 4.
void si_ci_series(double x, double& si, double& ci) {
    const double x2 = x * x;
    // Si
    double term = x;
    double sum = 0.0;
    for (int k = 0; k < 40; ++k) {
        const int n = 2 * k + 1;
        sum += term / n;
        const double next = -term * x2 / ((n + 1.0) * (n + 2.0));
        if (std::abs(next) < 1e-18 * std::abs(sum) * (n + 2.0)) {
            term = next;
            sum += term / (n + 2.0);
            break;
        }
        term = next;
    }
    si = sum;
    // Ci
    term = -x2 / 2.0;
    sum = 0.0;
    for (int k = 1; k < 40; ++k) {
        const int n = 2 * k;
        sum += term / n;
        const double next = -term * x2 / ((n + 1.0) * (n + 2.0));
        if (std::abs(next) < 1e-18) {
            break;
        }
        term = next;
    }
    ci = kEulerGamma + std::log(x) + sum;
}

// Rational Chebyshev-Pade approximations of the auxiliary functions for
// x >= 4, accurate to better than 1e-16 (standard published coefficients).
AuxFG aux_fg_large(double x) {
    const double y = 1.0 / (x * x);
    const double f =
        (1.0 +
         y * (7.44437068161936700618e2 +
              y * (1.96396372895146869801e5 +
                   y * (2.37750310125431834034e7 +
                        y * (1.43073403821274636888e9 +
                             y * (4.33736238870432522765e10 +
                                  y * (6.40533830574022022911e11 +
                                       y * (4.20968180571076940208e12 +
                                            y * (1.00795182980368574617e13 +
                                                 y * (4.94816688199951963482e12 +
                                                      y * (-4.94701168645415959931e11))))))))))) /
        (x * (1.0 +
              y * (7.46437068161927678031e2 +
                   y * (1.97865247031583951450e5 +
                        y * (2.41535670165126845144e7 +
                             y * (1.47478952192985464958e9 +
                                  y * (4.58595115847765779830e10 +
                                       y * (7.08501308149515401563e11 +
                                            y * (5.06084464593475076774e12 +
                                                 y * (1.43468549171581016479e13 +
                                                      y * (1.11535493509914254097e13)))))))))));
    const double g =
        y *
        (1.0 +
         y * (8.1359520115168615e2 +
              y * (2.35239181626478200e5 +
                   y * (3.12557570795778731e7 +
                        y * (2.06297595146763354e9 +
                             y * (6.83052205423625007e10 +
                                  y * (1.09049528450362786e12 +
                                       y * (7.57664583257834349e12 +
                                            y * (1.81004487464664575e13 +
                                                 y * (6.43291613143049485e12 +
                                                      y * (-1.36517137670871689e12))))))))))) /
        (1.0 +
         y * (8.19595201151451564e2 +
              y * (2.40036752835578777e5 +
                   y * (3.26026661647090822e7 +
                        y * (2.23355543278099360e9 +
                             y * (7.87465017341829930e10 +
                                  y * (1.39866710696414565e12 +
                                       y * (1.17164723371736605e13 +
                                            y * (4.01839087307656620e13 +
                                                 y * (3.99653257887490811e13))))))))));
    return AuxFG{f, g};
}

}  // namespace

AuxFG aux_fg(double x) {
    if (!(x >= 0.0)) {
        throw std::invalid_argument("aux_fg needs x >= 0");
    }
    if (x == 0.0) {
        return AuxFG{0.5 * kPi, std::numeric_limits<double>::infinity()};
    }
    if (x >= 4.0) {
        return aux_fg_large(x);
    }
    double si = 0.0, ci = 0.0;
    si_ci_series(x, si, ci);
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double half_pi_minus_si = 0.5 * kPi - si;
    return AuxFG{ci * s + half_pi_minus_si * c, -ci * c + half_pi_minus_si * s};
}

RadialKernel radial_kernel(double r, double omega0) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("radial kernel needs r > 0");
    }
    if (omega0 < 0.0) {
        throw std::invalid_argument("radial kernel needs omega0 >= 0");
    }
    RadialKernel k;
    if (omega0 == 0.0) {
        k.value = 0.5 * kPi / r;
        k.d1 = -0.5 * kPi / (r * r);
        k.d2 = kPi / (r * r * r);
        return k;
    }
    const double wave = omega0 / speed_of_light;
    const double a = wave * r;
    const AuxFG fg = aux_fg(a);
    // F = f(a)/r with f' = -g and g' = f - 1/x.
    k.value = fg.f / r;
    k.d1 = -wave * fg.g / r - fg.f / (r * r);
    k.d2 = -wave * wave * fg.f / r + wave / (r * r) + 2.0 * wave * fg.g / (r * r) +
           2.0 * fg.f / (r * r * r);
    return k;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double fa, double fm, double fb, double whole, double eps,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = fn(lm);
    const double frm = fn(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(fn, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(fn, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double integrate(const std::function<double(double)>& fn, double a, double b, double eps) {
    const double fa = fn(a);
    const double fb = fn(b);
    const double fm = fn(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(fn, a, b, fa, fm, fb, whole, eps, 40);
}

}  // namespace

double radial_kernel_quadrature(double r, double omega0) {
    if (!(r > 0.0) || omega0 < 0.0) {
        throw std::invalid_argument("radial kernel quadrature needs r > 0, omega0 >= 0");
    }
    const double a = omega0 / speed_of_light * r;
    // Int_a^inf sin(u - a)/u du as alternating half-period partial integrals
    // accelerated by an Euler transformation.
    const auto integrand = [a](double u) {
        if (u == 0.0) {
            return 1.0;  // a = 0 limit of sin(u)/u
        }
        return std::sin(u - a) / u;
    };

    constexpr std::size_t kMaxIntervals = 96;
    std::vector<double> partial;
    partial.reserve(kMaxIntervals);
    double sum = 0.0;
    for (std::size_t n = 0; n < kMaxIntervals; ++n) {
        const double lo = a + static_cast<double>(n) * kPi;
        const double hi = lo + kPi;
        sum += integrate(integrand, lo, hi, 1e-15);
        partial.push_back(sum);
    }

    // Repeated averaging of the tail of the partial-sum sequence.
    std::vector<double> row(partial.end() - 48, partial.end());
    double previous = row.back();
    double estimate = previous;
    for (std::size_t pass = 0; row.size() > 1; ++pass) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop_back();
        previous = estimate;
        estimate = row.back();
    }
    const double scale = std::max(std::abs(estimate), 1e-3 / (1.0 + a));
    if (std::abs(estimate - previous) > 1e-11 * scale) {
        throw NumericalError("oscillatory quadrature: series acceleration did not converge");
    }
    return estimate / r;
}

FieldWeight weight_tensor(const std::array<double, 3>& x, double omega0) {
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (!(r > 0.0)) {
        throw std::invalid_argument("weight tensor needs |x| > 0");
    }
    const RadialKernel k = radial_kernel(r, omega0);
    const double lap = k.d2 + 2.0 * k.d1 / r;
    const double diag = (k.d1 / r - lap) / (2.0 * kPi * kPi);
    const double dyad = (k.d2 - k.d1 / r) / (2.0 * kPi * kPi);

    FieldWeight w;
    w.position = x;
    w.omega0 = omega0;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            w.tensor[i][j] = dyad * (x[i] / r) * (x[j] / r) + (i == j ? diag : 0.0);
        }
    }
    return w;
}

std::array<double, 3> field_signal(const FieldWeight& w, const DipoleMoment& d,
                                   double sigmax_expectation) {
    std::array<double, 3> e{};
    for (int i = 0; i < 3; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 3; ++j) {
            acc += w.tensor[i][j] * d.d[j];
        }
        e[i] = acc * sigmax_expectation / vacuum_permittivity;
    }
    return e;
}

RadialComponents radial_components(double r, double omega0) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("radial components need r > 0");
    }
    const double norm = 1.0 / (2.0 * kPi * kPi);
    RadialComponents c;
    if (omega0 == 0.0) {
        c.kernel = 0.5 * kPi / r;
        c.transverse = 0.0;
        c.longitudinal = norm * 0.5 * kPi / (r * r * r);
        return c;
    }
    const double wave = omega0 / speed_of_light;
    const AuxFG fg = aux_fg(wave * r);
    c.kernel = fg.f / r;
    c.transverse = norm * (wave * wave * fg.f / r - wave / (r * r));
    c.longitudinal = norm * (wave * fg.g / (r * r) + fg.f / (r * r * r));
    return c;
}

RadialExponents fit_radial_exponents(double omega0, double r_lo, double r_hi,
                                     std::size_t n) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("exponent fit needs omega0 > 0");
    }
    if (!(r_lo > 0.0 && r_hi > r_lo) || n < 4) {
        throw std::invalid_argument("exponent fit needs 0 < r_lo < r_hi and n >= 4");
    }
    const double step = std::log(r_hi / r_lo) / static_cast<double>(n - 1);
    double sx = 0.0, sxx = 0.0;
    std::array<double, 3> sy{}, sxy{};
    for (std::size_t i = 0; i < n; ++i) {
        const double r = r_lo * std::exp(step * static_cast<double>(i));
        const RadialComponents c = radial_components(r, omega0);
        const std::array<double, 3> vals{std::abs(c.kernel), std::abs(c.transverse),
                                         std::abs(c.longitudinal)};
        const double lx = std::log(r);
        sx += lx;
        sxx += lx * lx;
        for (int k = 0; k < 3; ++k) {
            if (!(vals[static_cast<std::size_t>(k)] > 0.0)) {
                throw NumericalError("exponent fit: component vanished in the window");
            }
            const double ly = std::log(vals[static_cast<std::size_t>(k)]);
            sy[static_cast<std::size_t>(k)] += ly;
            sxy[static_cast<std::size_t>(k)] += lx * ly;
        }
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * sxx - sx * sx;
    RadialExponents e;
    e.kernel = (nn * sxy[0] - sx * sy[0]) / denom;
    e.transverse = (nn * sxy[1] - sx * sy[1]) / denom;
    e.longitudinal = (nn * sxy[2] - sx * sy[2]) / denom;
    return e;
}

RadialExponents fit_radial_exponents(double omega0) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("exponent fit needs omega0 > 0");
    }
    const double lambda0 = 2.0 * kPi * speed_of_light / omega0;
    return fit_radial_exponents(omega0, 1e-4 * lambda0, 1e-2 * lambda0);
}

}  // namespace resfluor
