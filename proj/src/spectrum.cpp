#include "resfluor/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "resfluor/kernels.hpp"
#include "resfluor/parallel.hpp"

namespace resfluor {

namespace {

void check_delta_grid(const std::vector<double>& d) {
    if (d.empty()) {
        throw std::invalid_argument("delta grid must not be empty");
    }
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (!(d[i] > d[i - 1])) {
            throw std::invalid_argument("delta grid must be strictly ascending");
        }
    }
}

// Individual closed-form term, regular for complex mu as well:
// (3G - 4iy)/(9G^2 + 16y^2) == 1/(3G + 4iy) for any complex y.
double beta_term(double gamma, complexd beta, complexd y) {
    return 2.0 * std::real(beta / (complexd(3.0 * gamma, 0.0) + complexd(0.0, 4.0) * y));
}

}  // namespace

std::vector<double> delta_grid(double span, std::size_t points) {
    if (!(span > 0.0)) {
        throw std::invalid_argument("delta span must be positive");
    }
    if (points < 3 || points % 2 == 0) {
        throw std::invalid_argument("delta grid needs an odd point count >= 3");
    }
    std::vector<double> g(points);
    const std::size_t half = points / 2;
    const double step = span / static_cast<double>(half);
    for (std::size_t i = 0; i < points; ++i) {
        g[i] = (static_cast<double>(i) - static_cast<double>(half)) * step;
    }
    g[half] = 0.0;
    return g;
}

double default_delta_span(const SystemParams& p) {
    const double msq = mu_squared(p);
    const double mu = msq > 0.0 ? std::sqrt(msq) : 0.0;
    return std::max(4.0 * p.gamma, 8.0 * mu);
}

SpectrumSeries spectrum_field(const SystemParams& p, const std::vector<double>& deltas) {
    check_delta_grid(deltas);
    const EnvelopeCoeffs c = field_envelope_coeffs(p);
    SpectrumSeries s;
    s.delta = deltas;
    s.values.resize(deltas.size());
    s.params = p;
    kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 2.0, c.sym, c.asym,
                             deltas.data(), s.values.data(), deltas.size());
    return s;
}

SpectrumSeries spectrum_mollow(const SystemParams& p, const std::vector<double>& deltas) {
    check_delta_grid(deltas);
    const EnvelopeCoeffs c = mollow_envelope_coeffs(p);
    const double pref =
        2.0 * p.rabi * p.rabi / (p.gamma * p.gamma + 2.0 * p.rabi * p.rabi);
    SpectrumSeries s;
    s.delta = deltas;
    s.values.resize(deltas.size());
    s.params = p;
    kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 4.0, c.sym, c.asym,
                             deltas.data(), s.values.data(), deltas.size());
    for (double& v : s.values) {
        v *= pref;
    }
    return s;
}

namespace {

struct PreparedEnvelope {
    std::vector<double> re;  // offset-subtracted, trapezoid-weighted
    std::vector<double> im;
    bool has_imag = false;
    double h = 0.0;
    double tau_end = 0.0;
    complexd g_end;      // offset-subtracted endpoint value (unweighted)
    complexd g0;
    complexd d_g0;       // one-sided derivative estimates
    complexd d_g_end;
    double tail_rate = 0.0;  // fitted slowest decay; 0 disables the tail
    double prefactor = 1.0;
};

PreparedEnvelope prepare_envelope(const EnvelopeSeries& env) {
    const std::size_t n = env.tau.size();
    if (n < 8 || env.values.size() != n) {
        throw std::invalid_argument("envelope needs at least 8 samples");
    }
    const double h = env.tau[1] - env.tau[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double step = env.tau[i] - env.tau[i - 1];
        if (std::abs(step - h) > 1e-9 * h) {
            throw std::invalid_argument("numeric transform needs a uniform tau grid");
        }
    }

    const complexd offset = env.offset_subtracted ? complexd{0.0, 0.0} : env.persistent_offset;

    PreparedEnvelope prep;
    prep.h = h;
    prep.tau_end = env.tau.back();
    prep.prefactor = env.carrier == Carrier::Cosine ? 1.0 : 2.0;
    prep.re.resize(n);
    prep.im.resize(n);

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const complexd v = env.values[i] - offset;
        prep.re[i] = v.real();
        prep.im[i] = v.imag();
        scale = std::max(scale, std::abs(v));
        if (v.imag() != 0.0) {
            prep.has_imag = true;
        }
    }
    prep.g0 = complexd(prep.re[0], prep.im[0]);
    prep.g_end = complexd(prep.re[n - 1], prep.im[n - 1]);

    if (scale > 0.0 && std::abs(prep.g_end) > 1e-6 * scale) {
        throw NumericalError(
            "envelope has not decayed to its persistent offset by tau_max");
    }

    auto onesided = [&](bool forward) {
        // 4th-order one-sided first derivative.
        auto at = [&](std::size_t k) {
            const std::size_t idx = forward ? k : n - 1 - k;
            return complexd(prep.re[idx], prep.im[idx]);
        };
        const complexd d =
            (-25.0 * at(0) + 48.0 * at(1) - 36.0 * at(2) + 16.0 * at(3) - 3.0 * at(4)) /
            (12.0 * h);
        return forward ? d : -d;
    };
    prep.d_g0 = onesided(true);
    prep.d_g_end = onesided(false);

    // Slowest decay rate from RMS amplitudes of the last two windows; RMS is
    // robust against the oscillating envelope passing through zero.
    const std::size_t win = std::max<std::size_t>(8, n / 20);
    if (n > 2 * win) {
        auto rms = [&](std::size_t begin, std::size_t end) {
            double acc = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                acc += prep.re[i] * prep.re[i] + prep.im[i] * prep.im[i];
            }
            return std::sqrt(acc / static_cast<double>(end - begin));
        };
        const double w1 = rms(n - 2 * win, n - win);
        const double w2 = rms(n - win, n);
        if (w1 > 0.0 && w2 > 0.0 && w1 > w2) {
            prep.tail_rate = std::log(w1 / w2) / (static_cast<double>(win) * h);
        }
    }

    // Fold composite-trapezoid weights into the samples.
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i == n - 1) ? 0.5 * h : h;
        prep.re[i] *= w;
        prep.im[i] *= w;
    }
    return prep;
}

}  // namespace

SpectrumSeries spectrum_numeric(const EnvelopeSeries& env, const std::vector<double>& deltas,
                                const SystemParams& p) {
    check_delta_grid(deltas);
    const PreparedEnvelope prep = prepare_envelope(env);
    const std::size_t n = prep.re.size();
    const std::size_t m = deltas.size();

    SpectrumSeries s;
    s.delta = deltas;
    s.values.assign(m, 0.0);
    s.params = p;

    std::vector<double> cos_re(m), sin_re(m), cos_im, sin_im;
    if (prep.has_imag) {
        cos_im.resize(m);
        sin_im.resize(m);
    }

    parallel_for(m, [&](std::size_t begin, std::size_t end) {
        const std::size_t len = end - begin;
        kernels::fourier_sums(prep.re.data(), n, 0.0, prep.h, deltas.data() + begin,
                              cos_re.data() + begin, sin_re.data() + begin, len);
        if (prep.has_imag) {
            kernels::fourier_sums(prep.im.data(), n, 0.0, prep.h, deltas.data() + begin,
                                  cos_im.data() + begin, sin_im.data() + begin, len);
        }
    });

    const double h2_12 = prep.h * prep.h / 12.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = deltas[j];
        // Re Int g e^{-i d tau}: cosine sum of Re g plus sine sum of Im g.
        double value = cos_re[j] + (prep.has_imag ? sin_im[j] : 0.0);

        // Euler-Maclaurin endpoint correction -(h^2/12)[f'(end) - f'(0)] with
        // f = g e^{-i d tau}.
        const complexd rot = std::polar(1.0, -d * prep.tau_end);
        const complexd i_d(0.0, d);
        const complexd fp0 = prep.d_g0 - i_d * prep.g0;
        const complexd fpe = (prep.d_g_end - i_d * prep.g_end) * rot;
        value -= h2_12 * (fpe - fp0).real();

        // Exponential tail beyond tau_max with the fitted slowest rate.
        if (prep.tail_rate > 0.0) {
            const complexd tail = prep.g_end * rot / complexd(prep.tail_rate, d);
            value += tail.real();
        }

        s.values[j] = prep.prefactor * value;
    }
    return s;
}

SpectrumSeries normalize(const SpectrumSeries& s) {
    const auto it = std::find(s.delta.begin(), s.delta.end(), 0.0);
    if (it == s.delta.end()) {
        throw std::invalid_argument("normalization needs delta = 0 on the grid");
    }
    const double ref = s.values[static_cast<std::size_t>(it - s.delta.begin())];
    if (ref == 0.0) {
        throw NumericalError("cannot normalize: zero value at delta = 0");
    }
    SpectrumSeries out = s;
    for (double& v : out.values) {
        v /= ref;
    }
    out.normalized = true;
    return out;
}

namespace {

double interp_crossing(double x0, double y0, double x1, double y1, double level) {
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

}  // namespace

PeakReport find_peaks(const SpectrumSeries& s) {
    const auto& d = s.delta;
    const auto& v = s.values;
    if (d.size() < 5) {
        throw std::invalid_argument("peak search needs at least 5 grid points");
    }
    const double step = d[1] - d[0];
    if (std::abs(d.front() + d.back()) > 1e-9 * (d.back() - d.front())) {
        throw std::invalid_argument("peak search needs a symmetric grid");
    }
    if (s.params.gamma > 0.0 && step > s.params.gamma / 50.0 * (1.0 + 1e-12)) {
        throw std::invalid_argument("peak search needs grid step <= gamma/50");
    }

    const double vmax = *std::max_element(v.begin(), v.end());
    const double floor_height = 1e-6 * vmax;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) {
            continue;
        }
        if (v[i] < floor_height) {
            continue;
        }
        Peak pk;
        const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
        if (denom < 0.0) {
            const double frac = 0.5 * (v[i - 1] - v[i + 1]) / denom;
            pk.position = d[i] + frac * step;
            pk.height = v[i] - 0.25 * (v[i - 1] - v[i + 1]) * frac;
        } else {
            pk.position = d[i];
            pk.height = v[i];
        }

        // Half-height crossings by linear interpolation within this peak's
        // descent; 0 when the level is not reached before the curve turns up.
        const double half = 0.5 * pk.height;
        double left = 0.0, right = 0.0;
        for (std::size_t k = i; k > 0; --k) {
            if (v[k - 1] > v[k]) {
                break;  // valley: flank ends unresolved
            }
            if (v[k - 1] <= half) {
                left = pk.position - interp_crossing(d[k - 1], v[k - 1], d[k], v[k], half);
                left = std::abs(left);
                break;
            }
        }
        for (std::size_t k = i; k + 1 < v.size(); ++k) {
            if (v[k + 1] > v[k]) {
                break;
            }
            if (v[k + 1] <= half) {
                right = interp_crossing(d[k], v[k], d[k + 1], v[k + 1], half) - pk.position;
                right = std::abs(right);
                break;
            }
        }
        if (left > 0.0 && right > 0.0) {
            pk.hwhm = 0.5 * (left + right);
        } else {
            pk.hwhm = std::max(left, right);
        }
        peaks.push_back(pk);
    }

    if (peaks.empty()) {
        throw NumericalError("no spectral peak found");
    }

    PeakReport report;
    std::size_t central_idx = 0;
    for (std::size_t k = 1; k < peaks.size(); ++k) {
        if (std::abs(peaks[k].position) < std::abs(peaks[central_idx].position)) {
            central_idx = k;
        }
    }
    report.central = peaks[central_idx];
    for (std::size_t k = 0; k < peaks.size(); ++k) {
        if (k != central_idx) {
            report.sidebands.push_back(peaks[k]);
        }
    }
    std::sort(report.sidebands.begin(), report.sidebands.end(),
              [](const Peak& a, const Peak& b) { return a.position < b.position; });
    for (const Peak& pk : report.sidebands) {
        report.ratios.push_back(pk.height / report.central.height);
    }
    return report;
}

SweepTable sweep_peak_heights(const SystemParams& base, const std::vector<double>& rabi_list) {
    for (std::size_t i = 1; i < rabi_list.size(); ++i) {
        if (!(rabi_list[i] > rabi_list[i - 1])) {
            throw std::invalid_argument("rabi list must be ascending");
        }
    }
    SweepTable t;
    t.rabi = rabi_list;
    const double zero = 0.0;
    for (const double rabi : rabi_list) {
        const SystemParams p = validate_params(base.gamma, rabi, base.omega0);
        double sf = 0.0, sm = 0.0;
        const EnvelopeCoeffs cf = field_envelope_coeffs(p);
        const EnvelopeCoeffs cm = mollow_envelope_coeffs(p);
        kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 2.0, cf.sym, cf.asym, &zero,
                                 &sf, 1);
        kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 4.0, cm.sym, cm.asym, &zero,
                                 &sm, 1);
        const double pref = 2.0 * p.rabi * p.rabi / (p.gamma * p.gamma + 2.0 * p.rabi * p.rabi);
        t.field_peak.push_back(sf);
        t.mollow_peak.push_back(pref * sm);
    }
    return t;
}

namespace {

// Least squares of target against three basis columns (normal equations,
// Gaussian elimination with partial pivoting).
TermFit fit_terms(const std::vector<std::array<double, 3>>& basis,
                  const std::vector<double>& target) {
    double g[3][4] = {};
    for (std::size_t i = 0; i < target.size(); ++i) {
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) {
                g[r][c] += basis[i][static_cast<std::size_t>(r)] *
                           basis[i][static_cast<std::size_t>(c)];
            }
            g[r][3] += basis[i][static_cast<std::size_t>(r)] * target[i];
        }
    }
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(g[r][col]) > std::abs(g[pivot][col])) pivot = r;
        }
        std::swap(g[col], g[pivot]);
        if (g[col][col] == 0.0) {
            throw NumericalError("singular basis in term fit");
        }
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = g[r][col] / g[col][col];
            for (int c = col; c < 4; ++c) g[r][c] -= f * g[col][c];
        }
    }
    TermFit fit;
    for (int r = 0; r < 3; ++r) {
        fit.scales[static_cast<std::size_t>(r)] = g[r][3] / g[r][r];
    }
    double res2 = 0.0, tgt2 = 0.0;
    for (std::size_t i = 0; i < target.size(); ++i) {
        double model = 0.0;
        for (int r = 0; r < 3; ++r) {
            model += fit.scales[static_cast<std::size_t>(r)] * basis[i][static_cast<std::size_t>(r)];
        }
        res2 += (target[i] - model) * (target[i] - model);
        tgt2 += target[i] * target[i];
    }
    fit.residual_rms = tgt2 > 0.0 ? std::sqrt(res2 / tgt2) : 0.0;
    return fit;
}

}  // namespace

AuditReport audit(const SystemParams& p, const AuditConfig& cfg) {
    const BetaPair bf = beta_field(p);
    const BetaPair bm = beta_mollow(p);
    if (bf.degenerate) {
        throw std::invalid_argument(
            "audit needs 4 Omega != Gamma: individual closed-form terms are singular");
    }
    const complexd mu = sideband_rate(p).mu;

    AuditReport rep;
    rep.params = p;

    const std::vector<double> taus =
        tau_grid(cfg.tau_max_over_gamma / p.gamma, cfg.tau_steps);
    const std::vector<double> deltas = delta_grid(default_delta_span(p), cfg.delta_points);

    // (a) transform of the closed-form conditional envelope against the three
    // closed-form spectrum terms.
    {
        const SpectrumSeries oracle =
            spectrum_numeric(correlation_closed(p, taus), deltas, p);
        std::vector<std::array<double, 3>> basis(deltas.size());
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const double d = deltas[i];
            basis[i] = {2.0 * p.gamma / (p.gamma * p.gamma + 4.0 * d * d),
                        beta_term(p.gamma, bf.plus, d + mu),
                        beta_term(p.gamma, bf.minus, d - mu)};
        }
        rep.field_fit = fit_terms(basis, oracle.values);
    }

    // (b) transform of the regression envelope against the Mollow terms.
    {
        const SpectrumSeries oracle =
            spectrum_numeric(mollow_correlation(p, taus), deltas, p);
        const double pref =
            2.0 * p.rabi * p.rabi / (p.gamma * p.gamma + 2.0 * p.rabi * p.rabi);
        std::vector<std::array<double, 3>> basis(deltas.size());
        for (std::size_t i = 0; i < deltas.size(); ++i) {
            const double d = deltas[i];
            basis[i] = {pref * 4.0 * p.gamma / (p.gamma * p.gamma + 4.0 * d * d),
                        pref * 2.0 * beta_term(p.gamma, bm.plus, d + mu),
                        pref * 2.0 * beta_term(p.gamma, bm.minus, d - mu)};
        }
        rep.mollow_fit = fit_terms(basis, oracle.values);
    }

    // (c) sideband/central height ratios from all four spectra, evaluated at
    // delta = 0 and delta = mu.
    const double mu_re = mu.real();
    if (mu_re > 0.0) {
        const std::vector<double> probe{0.0, mu_re};
        std::vector<double> f(2), m(2);
        const EnvelopeCoeffs cf = field_envelope_coeffs(p);
        const EnvelopeCoeffs cm = mollow_envelope_coeffs(p);
        kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 2.0, cf.sym, cf.asym,
                                 probe.data(), f.data(), 2);
        kernels::lorentz_triplet(p.gamma, 16.0 * mu_squared(p), 4.0, cm.sym, cm.asym,
                                 probe.data(), m.data(), 2);
        rep.ratio_field_closed = f[1] / f[0];
        rep.ratio_mollow_closed = m[1] / m[0];

        const std::vector<double> probe_grid{-mu_re, 0.0, mu_re};
        const SpectrumSeries of =
            spectrum_numeric(correlation_closed(p, taus), probe_grid, p);
        const SpectrumSeries om =
            spectrum_numeric(mollow_correlation(p, taus), probe_grid, p);
        rep.ratio_field_oracle = of.values[2] / of.values[1];
        rep.ratio_mollow_oracle = om.values[2] / om.values[1];
    } else {
        rep.flags.emplace_back("overdamped: no sideband ratios");
    }

    // Canonical strong-driving regression check at Omega = 20 Gamma.
    {
        const SystemParams strong = validate_params(p.gamma, 20.0 * p.gamma, p.omega0);
        const std::vector<double> staus =
            tau_grid(cfg.tau_max_over_gamma / strong.gamma, cfg.tau_steps);
        const double span = 24.0 * strong.gamma;
        const std::size_t points = 2401;  // step = gamma/50
        const SpectrumSeries sm = spectrum_numeric(mollow_correlation(strong, staus),
                                                   delta_grid(span, points), strong);
        const PeakReport pk = find_peaks(sm);
        if (pk.sidebands.size() == 2) {
            rep.canonical_ratio = 0.5 * (pk.ratios[0] + pk.ratios[1]);
            rep.canonical_central_hwhm = pk.central.hwhm / strong.gamma;
            rep.canonical_sideband_hwhm =
                0.5 * (pk.sidebands[0].hwhm + pk.sidebands[1].hwhm) / strong.gamma;
        } else {
            rep.flags.emplace_back("canonical check: sidebands unresolved");
        }
    }

    if (std::abs(rep.field_fit.scales[0] - 0.5) < 0.1) {
        rep.flags.emplace_back(
            "field central term fits at scale ~1/2: closed form carries an extra factor 2 "
            "relative to the transform of its own envelope");
    }
    if (std::abs(rep.mollow_fit.scales[0] - 0.25) < 0.1) {
        rep.flags.emplace_back(
            "mollow central term fits at scale ~1/4 relative to the transform of the "
            "regression envelope");
    }
    if (rep.ratio_field_closed > rep.ratio_mollow_closed && rep.ratio_field_closed > 0.0) {
        rep.flags.emplace_back(
            "closed-form sideband/central ratios order field > mollow, opposite to the "
            "claimed sideband reduction of the field spectrum");
    }
    if (rep.ratio_field_oracle > 0.0 &&
        std::abs(rep.ratio_field_oracle - rep.ratio_mollow_oracle) <
            0.05 * rep.ratio_field_oracle) {
        rep.flags.emplace_back(
            "transform-based ratios of the two spectra nearly coincide; the closed-form "
            "difference stems from the central terms");
    }
    return rep;
}

}  // namespace resfluor
