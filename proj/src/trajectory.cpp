#include "resfluor/trajectory.hpp"

#include <cmath>

#include "resfluor/parallel.hpp"

namespace resfluor {

namespace {

// Counter-based stream split: trajectory k draws from an mt19937_64 seeded by
// splitmix64(seed, k), so the stream is independent of how many others run.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// splitmix64 counter generator mapped to [0, 1); fully specified here so
// trajectories are reproducible by construction.
class UniformStream {
  public:
    explicit UniformStream(std::uint64_t state) : state_(state) {}

    double next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        x ^= x >> 31;
        return static_cast<double>(x >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

struct Mat2 {
    complexd a, b, c, d;  // [[a, b], [c, d]]
};

// exp(m) for a 2x2 complex matrix via the Cayley-Hamilton closed form.
Mat2 expm(const Mat2& m) {
    const complexd half_tr = 0.5 * (m.a + m.d);
    const complexd dev = 0.5 * (m.a - m.d);
    const complexd q = std::sqrt(dev * dev + m.b * m.c);
    complexd ch, shq;  // cosh(q), sinh(q)/q
    if (std::abs(q) < 1e-8) {
        const complexd q2 = q * q;
        ch = 1.0 + q2 * 0.5;
        shq = 1.0 + q2 / 6.0;
    } else {
        ch = std::cosh(q);
        shq = std::sinh(q) / q;
    }
    const complexd scale = std::exp(half_tr);
    Mat2 r;
    r.a = scale * (ch + shq * dev);
    r.b = scale * shq * m.b;
    r.c = scale * shq * m.c;
    r.d = scale * (ch - shq * dev);
    return r;
}

}  // namespace

JumpTrajectory simulate(const SystemParams& p, double t_max, double dt,
                        std::uint64_t seed, std::uint64_t stream,
                        const std::array<complexd, 2>& psi0) {
    if (!(dt > 0.0) || dt > 0.01 / p.gamma) {
        throw std::invalid_argument("simulate needs 0 < dt <= 0.01/gamma");
    }
    if (!(t_max >= 100.0 / p.gamma)) {
        throw std::invalid_argument("simulate needs t_max >= 100/gamma");
    }

    const std::size_t steps = static_cast<std::size_t>(std::llround(t_max / dt));

    // No-jump evolution: exp(-i H_eff dt) with
    // H_eff = (Omega/2) sigma_x - i (Gamma/2) |1><1|, precomputed once.
    Mat2 gen;
    gen.a = complexd(0.0, 0.0);
    gen.b = complexd(0.0, -0.5 * p.rabi * dt);
    gen.c = complexd(0.0, -0.5 * p.rabi * dt);
    gen.d = complexd(-0.5 * p.gamma * dt, 0.0);
    const Mat2 u = expm(gen);

    UniformStream rng(splitmix64(seed ^ splitmix64(stream)));

    JumpTrajectory traj;
    traj.params = p;
    traj.seed = seed;
    traj.dt = dt;
    traj.t_max = t_max;
    traj.sample_stride = std::max<std::size_t>(1, steps / 20000);
    traj.samples.reserve(steps / traj.sample_stride + 2);

    complexd c0 = psi0[0];
    complexd c1 = psi0[1];
    {
        const double norm = std::sqrt(std::norm(c0) + std::norm(c1));
        if (!(norm > 0.0)) {
            throw std::invalid_argument("simulate needs a nonzero initial state");
        }
        c0 /= norm;
        c1 /= norm;
    }

    auto record = [&](std::size_t step) {
        const complexd coh = c0 * std::conj(c1);
        traj.samples.push_back(BlochSample{static_cast<double>(step) * dt, std::norm(c0),
                                           coh.real(), coh.imag()});
    };

    for (std::size_t step = 0; step < steps; ++step) {
        if (step % traj.sample_stride == 0) {
            record(step);
        }
        const double p_excited = std::norm(c1);
        if (p.rabi == 0.0 && p_excited == 0.0) {
            // Dark ground state: no further jumps, samples stay constant.
            for (std::size_t s = step + traj.sample_stride - step % traj.sample_stride;
                 s < steps; s += traj.sample_stride) {
                record(s);
            }
            break;
        }
        const double p_jump = p.gamma * p_excited * dt;
        if (rng.next() < p_jump) {
            traj.jump_times.push_back((static_cast<double>(step) + 0.5) * dt);
            c0 = complexd(1.0, 0.0);
            c1 = complexd(0.0, 0.0);
        } else {
            const complexd n0 = u.a * c0 + u.b * c1;
            const complexd n1 = u.c * c0 + u.d * c1;
            const double norm = std::sqrt(std::norm(n0) + std::norm(n1));
            c0 = n0 / norm;
            c1 = n1 / norm;
        }
    }

    traj.final_state = {c0, c1};
    return traj;
}

std::vector<JumpTrajectory> simulate_ensemble(const SystemParams& p, double t_max,
                                              double dt, std::uint64_t seed,
                                              std::size_t n) {
    std::vector<JumpTrajectory> out(n);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            out[k] = simulate(p, t_max, dt, seed, k);
        }
    });
    return out;
}

StationaryEstimate estimate_stationary(std::span<const JumpTrajectory> trajectories) {
    if (trajectories.size() < 10) {
        throw std::invalid_argument("stationary estimate needs at least 10 trajectories");
    }
    const SystemParams& p = trajectories.front().params;
    const double burn_in = 20.0 / p.gamma;

    std::vector<double> mean_p00, mean_re, mean_im, rate;
    for (const JumpTrajectory& t : trajectories) {
        if (t.params.gamma != p.gamma || t.params.rabi != p.rabi) {
            throw std::invalid_argument("stationary estimate needs a homogeneous ensemble");
        }
        if (!(t.t_max > burn_in)) {
            throw std::invalid_argument("stationary estimate needs t_max > 20/gamma");
        }
        double s0 = 0.0, sre = 0.0, sim = 0.0;
        std::size_t count = 0;
        for (const BlochSample& s : t.samples) {
            if (s.t <= burn_in) {
                continue;
            }
            s0 += s.p00;
            sre += s.re01;
            sim += s.im01;
            ++count;
        }
        if (count == 0) {
            throw std::invalid_argument("stationary estimate: no samples after burn-in");
        }
        mean_p00.push_back(s0 / static_cast<double>(count));
        mean_re.push_back(sre / static_cast<double>(count));
        mean_im.push_back(sim / static_cast<double>(count));
        std::size_t jumps = 0;
        for (const double jt : t.jump_times) {
            if (jt > burn_in) {
                ++jumps;
            }
        }
        rate.push_back(static_cast<double>(jumps) / (t.t_max - burn_in));
    }

    auto mean_and_se = [](const std::vector<double>& v, double& mean, double& se) {
        const double n = static_cast<double>(v.size());
        double acc = 0.0;
        for (const double x : v) acc += x;
        mean = acc / n;
        double var = 0.0;
        for (const double x : v) var += (x - mean) * (x - mean);
        se = std::sqrt(var / (n - 1.0) / n);
    };

    StationaryEstimate est;
    est.n_trajectories = trajectories.size();
    mean_and_se(mean_p00, est.mean.p00, est.stderror.p00);
    mean_and_se(mean_re, est.mean.re01, est.stderror.re01);
    mean_and_se(mean_im, est.mean.im01, est.stderror.im01);
    mean_and_se(rate, est.jump_rate, est.jump_rate_stderr);
    return est;
}

}  // namespace resfluor
