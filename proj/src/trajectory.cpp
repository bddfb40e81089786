#include "qcycle/trajectory.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace qcycle {

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t derive_trajectory_seed(std::uint64_t master_seed,
                                     std::uint64_t point_index,
                                     std::uint64_t traj_index) {
    std::uint64_t s = splitmix64(master_seed);
    s = splitmix64(s + point_index);
    s = splitmix64(s + traj_index);
    return s;
}

double TrajectoryResult::qy() const {
    if (!qy_defined())
        return std::numeric_limits<double>::quiet_NaN();
    return counters.N_p / counters.n_e;
}

TrajectoryResult run_trajectory(const ModelParams& p, std::uint64_t seed,
                                double t_end, double dt, int sample_every) {
    if (!(t_end >= 0.0) || !(dt > 0.0))
        throw std::invalid_argument("run_trajectory: need t_end >= 0 and dt > 0");
    if (sample_every < 1)
        throw std::invalid_argument("run_trajectory: sample_every must be >= 1");

    ModelParams params = p;
    params.dt = dt;

    GeneratorBuilder builder(params);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    TrajectoryResult result;
    PopulationVector pop = basis_population(params.initial_state);
    double x = params.initial_x;

    auto record = [&](double t) {
        result.series.t.push_back(t);
        result.series.x.push_back(x);
        for (int s = 0; s < kNumSites; ++s)
            result.series.occ[static_cast<std::size_t>(s)].push_back(
                site_occupation(pop, static_cast<SiteId>(s)));
        result.series.n_e.push_back(result.counters.n_e);
        result.series.N_p.push_back(result.counters.N_p);
        result.series.N_n.push_back(result.counters.N_n);
    };

    record(0.0);
    const long steps = std::lround(std::ceil(t_end / dt - 1e-9));
    for (long k = 1; k <= steps; ++k) {
        builder.update_position(x);
        StepResult step;
        try {
            step = evolve_step(pop, builder.matrix(), dt);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("trajectory aborted at t = " +
                                     std::to_string(static_cast<double>(k - 1) * dt) +
                                     " us: " + e.what());
        }
        accumulate_fluxes(step.time_integral, builder.matrix(), result.counters);
        pop = std::move(step.next);
        x = langevin_step(x, shuttle_charge_sq(pop), params, normal(rng));
        if (k % sample_every == 0)
            record(static_cast<double>(k) * dt);
    }

    result.final_x = x;
    return result;
}

} // namespace qcycle
