#include "resfluor/io.hpp"

#include <cstdio>

namespace resfluor::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string echo_line(const ParamEcho& echo) {
    std::string line = "#";
    for (const auto& [key, value] : echo) {
        line += " " + key + "=" + value;
    }
    line += "\n";
    return line;
}

}  // namespace

std::string series_csv(const ParamEcho& echo, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
    std::string out = echo_line(echo);
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += (c + 1 < columns.size()) ? ',' : '\n';
    }
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += format_double(row[c]);
            out += (c + 1 < row.size()) ? ',' : '\n';
        }
    }
    return out;
}

std::string record_csv(const ParamEcho& echo,
                       const std::vector<std::pair<std::string, double>>& values) {
    std::string out = echo_line(echo);
    out += "name,value\n";
    for (const auto& [name, value] : values) {
        out += name + "," + format_double(value) + "\n";
    }
    return out;
}

ordered_json params_json(const SystemParams& p) {
    return ordered_json{{"gamma", p.gamma},
                        {"rabi", p.rabi},
                        {"omega0", p.omega0},
                        {"demodulation_warning", p.demodulation_warning}};
}

ordered_json spectrum_json(const SpectrumSeries& s) {
    ordered_json j;
    j["schema"] = "resfluor/series/v1";
    j["kind"] = "spectrum";
    j["params"] = params_json(s.params);
    j["normalized"] = s.normalized;
    j["delta"] = s.delta;
    j["values"] = s.values;
    return j;
}

ordered_json envelope_json(const EnvelopeSeries& e, const SystemParams& p) {
    ordered_json j;
    j["schema"] = "resfluor/series/v1";
    j["kind"] = "correlation";
    j["params"] = params_json(p);
    j["carrier"] = e.carrier == Carrier::Cosine ? "cos(omega0 tau)" : "exp(i omega0 tau)";
    j["persistent_offset"] = {e.persistent_offset.real(), e.persistent_offset.imag()};
    j["offset_subtracted"] = e.offset_subtracted;
    j["tau"] = e.tau;
    std::vector<double> re(e.values.size()), im(e.values.size());
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        re[i] = e.values[i].real();
        im[i] = e.values[i].imag();
    }
    j["envelope_re"] = re;
    j["envelope_im"] = im;
    if (!e.sin_values.empty()) {
        std::vector<double> sre(e.sin_values.size()), sim(e.sin_values.size());
        for (std::size_t i = 0; i < e.sin_values.size(); ++i) {
            sre[i] = e.sin_values[i].real();
            sim[i] = e.sin_values[i].imag();
        }
        j["sin_quadrature_re"] = sre;
        j["sin_quadrature_im"] = sim;
    }
    return j;
}

namespace {

ordered_json peak_json(const Peak& p) {
    return ordered_json{{"position", p.position}, {"height", p.height}, {"hwhm", p.hwhm}};
}

ordered_json report_json(const PeakReport& r) {
    ordered_json j;
    j["central"] = peak_json(r.central);
    j["sidebands"] = ordered_json::array();
    for (const Peak& p : r.sidebands) {
        j["sidebands"].push_back(peak_json(p));
    }
    j["ratios"] = r.ratios;
    j["n_peaks"] = 1 + r.sidebands.size();
    return j;
}

}  // namespace

ordered_json peaks_json(const SystemParams& p, const PeakReport& field,
                        const PeakReport& mollow) {
    ordered_json j;
    j["schema"] = "resfluor/peaks/v1";
    j["params"] = params_json(p);
    j["field"] = report_json(field);
    j["mollow"] = report_json(mollow);
    return j;
}

ordered_json sweep_json(const SystemParams& base, const SweepTable& t) {
    ordered_json j;
    j["schema"] = "resfluor/sweep/v1";
    j["params"] = params_json(base);
    j["rabi"] = t.rabi;
    j["field_peak"] = t.field_peak;
    j["mollow_peak"] = t.mollow_peak;
    return j;
}

ordered_json audit_json(const AuditReport& r) {
    ordered_json j;
    j["schema"] = "resfluor/audit/v1";
    j["params"] = params_json(r.params);
    j["field_fit"] = {{"scales", r.field_fit.scales}, {"residual_rms", r.field_fit.residual_rms}};
    j["mollow_fit"] = {{"scales", r.mollow_fit.scales},
                       {"residual_rms", r.mollow_fit.residual_rms}};
    j["ratios"] = {{"field_closed", r.ratio_field_closed},
                   {"mollow_closed", r.ratio_mollow_closed},
                   {"field_transform", r.ratio_field_oracle},
                   {"mollow_transform", r.ratio_mollow_oracle}};
    j["canonical_strong_driving"] = {{"rabi_over_gamma", 20.0},
                                     {"sideband_central_ratio", r.canonical_ratio},
                                     {"central_hwhm_over_gamma", r.canonical_central_hwhm},
                                     {"sideband_hwhm_over_gamma", r.canonical_sideband_hwhm}};
    j["flags"] = r.flags;
    return j;
}

ordered_json field_json(const FieldWeight& w, const RadialKernel& k,
                        const RadialExponents& e) {
    ordered_json j;
    j["schema"] = "resfluor/field/v1";
    j["omega0"] = w.omega0;
    j["position"] = w.position;
    j["tensor"] = w.tensor;
    j["kernel"] = {{"value", k.value}, {"d1", k.d1}, {"d2", k.d2}};
    j["radial_exponents"] = {
        {"kernel", e.kernel}, {"transverse", e.transverse}, {"longitudinal", e.longitudinal}};
    return j;
}

ordered_json trajectory_json(const SystemParams& p, const StationaryEstimate& est,
                             std::uint64_t seed, double t_max, double dt) {
    const BlochState ss = stationary_state(p);
    ordered_json j;
    j["schema"] = "resfluor/trajectory/v1";
    j["params"] = params_json(p);
    j["seed"] = seed;
    j["t_max"] = t_max;
    j["dt"] = dt;
    j["n_trajectories"] = est.n_trajectories;
    j["estimates"] = {
        {"p00", {{"value", est.mean.p00}, {"stderr", est.stderror.p00}}},
        {"re01", {{"value", est.mean.re01}, {"stderr", est.stderror.re01}}},
        {"im01", {{"value", est.mean.im01}, {"stderr", est.stderror.im01}}},
        {"jump_rate", {{"value", est.jump_rate}, {"stderr", est.jump_rate_stderr}}}};
    j["stationary_reference"] = {{"p00", ss.p00},
                                 {"re01", ss.re01},
                                 {"im01", ss.im01},
                                 {"jump_rate", p.gamma * (1.0 - ss.p00)}};
    return j;
}

}  // namespace resfluor::io
