#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcycle/generator.hpp"
#include "qcycle/membrane.hpp"
#include "qcycle/propagator.hpp"

namespace qcycle {

/// splitmix64 step; the statistical seed chain below is built from it so
/// that trajectory streams are decorrelated and reproducible across runs
/// and platforms.
std::uint64_t splitmix64(std::uint64_t state);

/// Seed for trajectory (point_index, traj_index) of a scan with the given
/// master seed.
std::uint64_t derive_trajectory_seed(std::uint64_t master_seed,
                                     std::uint64_t point_index,
                                     std::uint64_t traj_index);

/// Sampled observables along one trajectory. occ is indexed by SiteId.
struct TrajectorySeries {
    std::vector<double> t;
    std::vector<double> x;
    std::array<std::vector<double>, kNumSites> occ;
    std::vector<double> n_e;
    std::vector<double> N_p;
    std::vector<double> N_n;
};

struct TrajectoryResult {
    TrajectorySeries series;
    FluxCounters counters;
    double final_x = 0.0;

    bool qy_defined() const { return counters.n_e > 0.0; }
    double qy() const; // N_p / n_e, NaN when undefined
};

/// Integrate one stochastic trajectory: the population starts concentrated
/// on p.initial_state with the shuttle parked at p.initial_x, and each
/// timestep rebuilds the generator at the current position, propagates the
/// populations by dt, tallies reservoir fluxes, and moves the shuttle by
/// one Langevin step driven by the post-step mean squared charge.
/// Observables are recorded every sample_every steps (and at t = 0).
TrajectoryResult run_trajectory(const ModelParams& p, std::uint64_t seed,
                                double t_end, double dt, int sample_every = 100);

} // namespace qcycle
