// Command-line interface: every pipeline behind one binary with CSV/JSON
// output. Data goes to stdout or --out; diagnostics go to stderr. Exit codes:
// 0 success, 2 invalid arguments, 3 numerical failure.
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "resfluor/io.hpp"
#include "resfluor/kernels.hpp"

namespace {

using namespace resfluor;

struct Options {
    double gamma = 1e8;
    double rabi_over_gamma = 4.0;
    double omega0 = 1e15;
    double tau_max = 40.0;     // units of 1/gamma
    std::size_t tau_steps = 4000;
    double delta_span = 32.0;  // units of gamma, each side
    std::size_t delta_steps = 2001;
    std::uint64_t seed = 12345;
    std::string format = "csv";
    bool normalized = false;
    std::string out_path;

    std::string source = "closed";  // spectrum/mollow: closed | numeric
    std::string kind = "closed";    // correlation: conditional|closed|mollow|sigmax
    std::string which = "both";     // peaks: field|mollow|both
    std::vector<double> position;   // field subcommand, meters
    double rabi_min = 0.01;
    double rabi_max = 8.0;
    std::size_t rabi_steps = 25;
    std::size_t n_traj = 100;
    double traj_dt = 0.005;     // units of 1/gamma
    double traj_t_max = 1000.0; // units of 1/gamma
};

void emit(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    if (!file) {
        throw std::invalid_argument("cannot open output file: " + opt.out_path);
    }
    file << text;
}

void emit_json(const Options& opt, const io::ordered_json& j) {
    emit(opt, j.dump(2) + "\n");
}

SystemParams make_params(const Options& opt) {
    const SystemParams p = params_gamma_relative(opt.gamma, opt.rabi_over_gamma, opt.omega0);
    if (p.demodulation_warning) {
        std::cerr << "warning: omega0/gamma < 100; the demodulated spectra neglect the "
                     "counter-rotating image at -omega0\n";
    }
    return p;
}

io::ParamEcho base_echo(const SystemParams& p) {
    io::ParamEcho e;
    e.emplace_back("tool", "resfluor");
    e.emplace_back("gamma", io::format_double(p.gamma));
    e.emplace_back("rabi", io::format_double(p.rabi));
    e.emplace_back("omega0", io::format_double(p.omega0));
    return e;
}

std::vector<double> make_taus(const Options& opt, const SystemParams& p) {
    return tau_grid(opt.tau_max / p.gamma, opt.tau_steps);
}

std::vector<double> make_deltas(const Options& opt, const SystemParams& p) {
    return delta_grid(opt.delta_span * p.gamma, opt.delta_steps);
}

EnvelopeSeries make_envelope(const SystemParams& p, const std::string& kind,
                             const std::vector<double>& taus) {
    if (kind == "conditional") return conditional_correlation(p, taus);
    if (kind == "closed") return correlation_closed(p, taus);
    if (kind == "mollow") return mollow_correlation(p, taus);
    if (kind == "sigmax") return sigmax_correlation(p, taus);
    throw std::invalid_argument("unknown correlation kind: " + kind);
}

int run_spectrum(const Options& opt, bool mollow) {
    const SystemParams p = make_params(opt);
    const std::vector<double> deltas = make_deltas(opt, p);
    SpectrumSeries s;
    if (opt.source == "closed") {
        s = mollow ? spectrum_mollow(p, deltas) : spectrum_field(p, deltas);
    } else if (opt.source == "numeric") {
        const std::vector<double> taus = make_taus(opt, p);
        const EnvelopeSeries env =
            mollow ? mollow_correlation(p, taus) : correlation_closed(p, taus);
        s = spectrum_numeric(env, deltas, p);
    } else {
        throw std::invalid_argument("unknown spectrum source: " + opt.source);
    }
    if (opt.normalized) {
        s = normalize(s);
    }
    if (opt.format == "json") {
        emit_json(opt, io::spectrum_json(s));
    } else {
        io::ParamEcho echo = base_echo(p);
        echo.emplace_back("spectrum", mollow ? "mollow" : "field");
        echo.emplace_back("source", opt.source);
        echo.emplace_back("normalized", opt.normalized ? "true" : "false");
        echo.emplace_back("delta_span", io::format_double(opt.delta_span * p.gamma));
        echo.emplace_back("delta_steps", std::to_string(opt.delta_steps));
        std::vector<std::vector<double>> rows(s.delta.size());
        for (std::size_t i = 0; i < s.delta.size(); ++i) {
            rows[i] = {s.delta[i], s.values[i]};
        }
        emit(opt, io::series_csv(echo, {"delta", "value"}, rows));
    }
    return 0;
}

int run_correlation(const Options& opt) {
    const SystemParams p = make_params(opt);
    const std::vector<double> taus = make_taus(opt, p);
    const EnvelopeSeries env = make_envelope(p, opt.kind, taus);
    if (opt.format == "json") {
        emit_json(opt, io::envelope_json(env, p));
        return 0;
    }
    io::ParamEcho echo = base_echo(p);
    echo.emplace_back("correlation", opt.kind);
    echo.emplace_back("tau_max", io::format_double(taus.back()));
    echo.emplace_back("tau_steps", std::to_string(opt.tau_steps));
    const bool complex_values = env.carrier == Carrier::ExpOmega;
    std::vector<std::string> columns{"tau", "envelope"};
    if (complex_values) {
        columns = {"tau", "envelope_re", "envelope_im"};
    } else if (!env.sin_values.empty()) {
        columns = {"tau", "envelope", "sin_quadrature_im"};
    }
    std::vector<std::vector<double>> rows(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (complex_values) {
            rows[i] = {taus[i], env.values[i].real(), env.values[i].imag()};
        } else if (!env.sin_values.empty()) {
            rows[i] = {taus[i], env.values[i].real(), env.sin_values[i].imag()};
        } else {
            rows[i] = {taus[i], env.values[i].real()};
        }
    }
    emit(opt, io::series_csv(echo, columns, rows));
    return 0;
}

std::size_t peak_grid_steps(const Options& opt, const SystemParams& p, double span) {
    // find_peaks needs step <= gamma/50; widen the default point count when
    // the requested span would violate it.
    std::size_t points = opt.delta_steps;
    const std::size_t needed = static_cast<std::size_t>(std::ceil(span / (p.gamma / 50.0)));
    if ((span / (static_cast<double>(points / 2))) > p.gamma / 50.0) {
        points = 2 * needed + 1;
    }
    if (points % 2 == 0) {
        ++points;
    }
    return points;
}

int run_peaks(const Options& opt) {
    if (opt.which != "field" && opt.which != "mollow" && opt.which != "both") {
        throw std::invalid_argument("unknown peaks selector: " + opt.which);
    }
    const SystemParams p = make_params(opt);
    const double span = opt.delta_span * p.gamma;
    const std::vector<double> deltas = delta_grid(span, peak_grid_steps(opt, p, span));
    const PeakReport field = find_peaks(spectrum_field(p, deltas));
    const PeakReport mollow = find_peaks(spectrum_mollow(p, deltas));
    io::ordered_json j = io::peaks_json(p, field, mollow);
    if (opt.which == "field") {
        j.erase("mollow");
    } else if (opt.which == "mollow") {
        j.erase("field");
    }
    emit_json(opt, j);
    return 0;
}

int run_sweep(const Options& opt) {
    const SystemParams p = make_params(opt);
    if (!(opt.rabi_max > opt.rabi_min) || opt.rabi_steps < 2) {
        throw std::invalid_argument("sweep needs rabi-max > rabi-min and >= 2 steps");
    }
    std::vector<double> rabi(opt.rabi_steps);
    for (std::size_t i = 0; i < opt.rabi_steps; ++i) {
        rabi[i] = (opt.rabi_min +
                   (opt.rabi_max - opt.rabi_min) * static_cast<double>(i) /
                       static_cast<double>(opt.rabi_steps - 1)) *
                  p.gamma;
    }
    const SweepTable t = sweep_peak_heights(p, rabi);
    if (opt.format == "json") {
        emit_json(opt, io::sweep_json(p, t));
        return 0;
    }
    io::ParamEcho echo = base_echo(p);
    echo.emplace_back("sweep", "peak-heights");
    std::vector<std::vector<double>> rows(rabi.size());
    for (std::size_t i = 0; i < rabi.size(); ++i) {
        rows[i] = {t.rabi[i] / p.gamma, t.field_peak[i], t.mollow_peak[i]};
    }
    emit(opt, io::series_csv(echo, {"rabi_over_gamma", "field_peak", "mollow_peak"}, rows));
    return 0;
}

int run_field(const Options& opt) {
    const SystemParams p = make_params(opt);
    if (opt.position.size() != 3) {
        throw std::invalid_argument("field needs --position x,y,z in meters");
    }
    const std::array<double, 3> x{opt.position[0], opt.position[1], opt.position[2]};
    const FieldWeight w = weight_tensor(x, p.omega0);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    const RadialKernel k = radial_kernel(r, p.omega0);
    const RadialExponents e = fit_radial_exponents(p.omega0);
    if (opt.format == "json") {
        emit_json(opt, io::field_json(w, k, e));
        return 0;
    }
    io::ParamEcho echo = base_echo(p);
    echo.emplace_back("position", io::format_double(x[0]) + ";" + io::format_double(x[1]) +
                                      ";" + io::format_double(x[2]));
    std::vector<std::pair<std::string, double>> values;
    const char* axes = "xyz";
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            values.emplace_back(std::string("w_") + axes[i] + axes[j], w.tensor[i][j]);
        }
    }
    values.emplace_back("kernel", k.value);
    values.emplace_back("kernel_d1", k.d1);
    values.emplace_back("kernel_d2", k.d2);
    values.emplace_back("exponent_kernel", e.kernel);
    values.emplace_back("exponent_transverse", e.transverse);
    values.emplace_back("exponent_longitudinal", e.longitudinal);
    emit(opt, io::record_csv(echo, values));
    return 0;
}

int run_trajectory(const Options& opt) {
    const SystemParams p = make_params(opt);
    const double dt = opt.traj_dt / p.gamma;
    const double t_max = opt.traj_t_max / p.gamma;
    const std::vector<JumpTrajectory> ensemble =
        simulate_ensemble(p, t_max, dt, opt.seed, opt.n_traj);
    const StationaryEstimate est = estimate_stationary(ensemble);
    if (opt.format == "csv") {
        io::ParamEcho echo = base_echo(p);
        echo.emplace_back("seed", std::to_string(opt.seed));
        echo.emplace_back("n_traj", std::to_string(opt.n_traj));
        echo.emplace_back("dt", io::format_double(dt));
        echo.emplace_back("t_max", io::format_double(t_max));
        emit(opt, io::record_csv(echo, {{"p00", est.mean.p00},
                                        {"p00_stderr", est.stderror.p00},
                                        {"re01", est.mean.re01},
                                        {"re01_stderr", est.stderror.re01},
                                        {"im01", est.mean.im01},
                                        {"im01_stderr", est.stderror.im01},
                                        {"jump_rate", est.jump_rate},
                                        {"jump_rate_stderr", est.jump_rate_stderr}}));
        return 0;
    }
    emit_json(opt, io::trajectory_json(p, est, opt.seed, t_max, dt));
    return 0;
}

int run_audit(const Options& opt) {
    const SystemParams p = make_params(opt);
    AuditConfig cfg;
    cfg.tau_max_over_gamma = opt.tau_max;
    cfg.tau_steps = opt.tau_steps;
    cfg.delta_points = opt.delta_steps;
    emit_json(opt, io::audit_json(audit(p, cfg)));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Resonance-fluorescence spectra of a driven two-level emitter"};
    app.require_subcommand(1);

    app.add_option("--gamma", opt.gamma, "Decay rate, rad/s");
    app.add_option("--rabi", opt.rabi_over_gamma, "Rabi frequency, units of gamma");
    app.add_option("--omega0", opt.omega0, "Transition frequency, rad/s");
    app.add_option("--tau-max", opt.tau_max, "Correlation horizon, units of 1/gamma");
    app.add_option("--tau-steps", opt.tau_steps, "Correlation grid intervals");
    app.add_option("--delta-span", opt.delta_span, "Half-width of the detuning grid, units of gamma");
    app.add_option("--delta-steps", opt.delta_steps, "Detuning grid points (odd)");
    app.add_option("--seed", opt.seed, "Master seed for stochastic runs");
    app.add_option("--format", opt.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--normalized", opt.normalized, "Divide spectra by the delta = 0 value");
    app.add_option("--out", opt.out_path, "Write output to a file instead of stdout");

    auto* sc_spectrum = app.add_subcommand("spectrum", "Field spectrum on a detuning grid");
    sc_spectrum->add_option("--source", opt.source, "closed or numeric");
    auto* sc_mollow = app.add_subcommand("mollow", "Mollow spectrum on a detuning grid");
    sc_mollow->add_option("--source", opt.source, "closed or numeric");
    auto* sc_corr = app.add_subcommand("correlation", "Correlation envelope on a tau grid");
    sc_corr->add_option("--kind", opt.kind, "conditional, closed, mollow or sigmax");
    auto* sc_peaks = app.add_subcommand("peaks", "Peak report for both spectra");
    sc_peaks->add_option("--which", opt.which, "field, mollow or both");
    auto* sc_sweep = app.add_subcommand("sweep", "Peak heights vs Rabi frequency");
    sc_sweep->add_option("--rabi-min", opt.rabi_min, "Smallest Rabi frequency, units of gamma");
    sc_sweep->add_option("--rabi-max", opt.rabi_max, "Largest Rabi frequency, units of gamma");
    sc_sweep->add_option("--rabi-steps", opt.rabi_steps, "Number of sweep points");
    auto* sc_field = app.add_subcommand("field", "Weight tensor at a detector position");
    sc_field->add_option("--position", opt.position, "Detector position x,y,z in meters")
        ->delimiter(',');
    auto* sc_traj = app.add_subcommand("trajectory", "Quantum-jump Monte Carlo estimates");
    sc_traj->add_option("--n-traj", opt.n_traj, "Number of trajectories");
    sc_traj->add_option("--dt", opt.traj_dt, "Step, units of 1/gamma");
    sc_traj->add_option("--t-max", opt.traj_t_max, "Trajectory length, units of 1/gamma");
    auto* sc_audit = app.add_subcommand("audit", "Closed-form vs transform audit report");

    for (auto* sc : app.get_subcommands({})) {
        sc->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sc_spectrum->parsed()) return run_spectrum(opt, false);
        if (sc_mollow->parsed()) return run_spectrum(opt, true);
        if (sc_corr->parsed()) return run_correlation(opt);
        if (sc_peaks->parsed()) return run_peaks(opt);
        if (sc_sweep->parsed()) return run_sweep(opt);
        if (sc_field->parsed()) return run_field(opt);
        if (sc_traj->parsed()) return run_trajectory(opt);
        if (sc_audit->parsed()) return run_audit(opt);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resfluor::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}
