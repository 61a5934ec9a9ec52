// Quantum-jump Monte Carlo unraveling of the master equation: deterministic
// no-jump evolution under the non-Hermitian effective generator with
// first-order jump sampling. Statistical oracle for the stationary state and
// the photon emission rate.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "resfluor/core.hpp"

namespace resfluor {

struct BlochSample {
    double t = 0.0;
    double p00 = 0.0;
    double re01 = 0.0;
    double im01 = 0.0;
};

struct JumpTrajectory {
    SystemParams params;
    std::uint64_t seed = 0;
    double dt = 0.0;
    double t_max = 0.0;
    std::vector<double> jump_times;            // strictly ascending
    std::array<complexd, 2> final_state{};     // normalized amplitudes (c0, c1)
    std::vector<BlochSample> samples;          // pure-state Bloch coordinates
    std::size_t sample_stride = 1;             // steps between samples
};

// One trajectory, deterministic given (params, t_max, dt, seed). Requires
// 0 < dt <= 0.01/Gamma and t_max >= 100/Gamma. Per step: exact no-jump
// propagation by the precomputed exponential of the effective generator with
// renormalization, jump to the ground state with probability
// Gamma |c1|^2 dt. The per-trajectory RNG stream is derived from the seed by
// a counter-based split, so trajectory k is independent of how many run.
JumpTrajectory simulate(const SystemParams& p, double t_max, double dt,
                        std::uint64_t seed, std::uint64_t stream = 0,
                        const std::array<complexd, 2>& psi0 = {complexd{1.0, 0.0},
                                                               complexd{0.0, 0.0}});

// Independent trajectories stream = 0..n-1 of a common master seed, run in
// parallel.
std::vector<JumpTrajectory> simulate_ensemble(const SystemParams& p, double t_max,
                                              double dt, std::uint64_t seed,
                                              std::size_t n);

// Time-and-ensemble averages after discarding a 20/Gamma burn-in, with
// batch-means standard errors (one batch per trajectory). Requires at least
// 10 trajectories.
struct StationaryEstimate {
    BlochState mean;
    BlochState stderror;
    double jump_rate = 0.0;         // jumps per unit time
    double jump_rate_stderr = 0.0;
    std::size_t n_trajectories = 0;
};

StationaryEstimate estimate_stationary(std::span<const JumpTrajectory> trajectories);

}  // namespace resfluor
