#include "qcycle/scan.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qcycle {

void ScanSpec::check() const {
    if (grid.empty())
        throw std::invalid_argument("scan grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("scan grid must be strictly increasing");
    if (variable == ScanVariable::Temperature)
        for (double v : grid)
            if (!(v > 0.0))
                throw std::invalid_argument("temperature grid values must be positive");
    if (trajectories < 1)
        throw std::invalid_argument("scan needs at least one trajectory");
    if (!(t_end > 0.0))
        throw std::invalid_argument("t_end must be positive");
    if (!(dt > 0.0))
        throw std::invalid_argument("dt must be positive");
    if (sample_every < 1)
        throw std::invalid_argument("sample_every must be >= 1");
}

std::vector<double> default_grid(ScanVariable variable) {
    std::vector<double> grid;
    switch (variable) {
    case ScanVariable::DeltaMu:
        for (int v = 0; v <= 450; v += 50)
            grid.push_back(v);
        break;
    case ScanVariable::DeltaV:
        for (int v = 200; v <= 320; v += 20)
            grid.push_back(v);
        break;
    case ScanVariable::Temperature:
        for (int v = 250; v <= 350; v += 10)
            grid.push_back(v);
        break;
    }
    return grid;
}

double delta_mu_from_ph(double delta_ph, double T_kelvin) {
    return delta_ph * (T_kelvin / kRoomTemperatureK) * 60.0;
}

ModelParams apply_scheme(TemperatureScheme scheme, double T_kelvin,
                         const ModelParams& base) {
    if (!(T_kelvin > 0.0))
        throw std::invalid_argument("apply_scheme: temperature must be positive");
    ModelParams p = base;
    p.T = kBoltzmannMevPerK * T_kelvin;
    if (scheme == TemperatureScheme::II || scheme == TemperatureScheme::III) {
        const double dmu = delta_mu_from_ph(kDefaultDeltaPh, T_kelvin);
        p.mu_P = dmu / 2.0;
        p.mu_N = -dmu / 2.0;
    }
    if (scheme == TemperatureScheme::III)
        p.set_surface_potential(5.4 * p.T, 4.6 * p.T);
    return p;
}

ModelParams scan_point_params(const ScanSpec& spec, double value,
                              const ModelParams& base) {
    switch (spec.variable) {
    case ScanVariable::DeltaMu: {
        ModelParams p = base;
        p.mu_P = value / 2.0;
        p.mu_N = -value / 2.0;
        return p;
    }
    case ScanVariable::DeltaV: {
        // value is the total transmembrane drop V_P + V_N; the asymmetry
        // V_P - V_N keeps its base value.
        ModelParams p = base;
        const double asym = base.V_P - base.V_N;
        p.set_surface_potential((value + asym) / 2.0, (value - asym) / 2.0);
        return p;
    }
    case ScanVariable::Temperature:
        return apply_scheme(spec.scheme, value, base);
    }
    throw std::logic_error("scan_point_params: unknown variable");
}

FiguresOfMerit figures_of_merit(double n_e, double N_p, const ModelParams& p) {
    FiguresOfMerit fom;
    if (!(n_e > 0.0)) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        fom.qy = fom.q = fom.eta = nan;
        fom.defined = false;
        return fom;
    }
    fom.qy = N_p / n_e;
    fom.q = fom.qy * N_p;
    fom.eta = (p.mu_P - p.mu_N) / (p.mu_Fd - p.mu_Pc) * fom.qy;
    fom.defined = true;
    return fom;
}

namespace {

struct TrajectoryTotals {
    double n_e = 0.0;
    double N_p = 0.0;
};

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

// Population statistics (divisor N): a single trajectory reports std 0.
MeanStd population_stats(const std::vector<double>& v) {
    MeanStd out;
    for (double x : v)
        out.mean += x;
    out.mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) {
        const double d = x - out.mean;
        var += d * d;
    }
    var /= static_cast<double>(v.size());
    out.std = std::sqrt(std::max(var, 0.0));
    return out;
}

} // namespace

ScanResult run_scan(const ScanSpec& spec, const ModelParams& base, int threads) {
    spec.check();
    const std::size_t n_points = spec.grid.size();
    const std::size_t n_traj = static_cast<std::size_t>(spec.trajectories);
    const std::size_t n_jobs = n_points * n_traj;

    std::vector<ModelParams> point_params;
    point_params.reserve(n_points);
    for (double value : spec.grid)
        point_params.push_back(scan_point_params(spec, value, base));

    std::vector<TrajectoryTotals> totals(n_jobs);
    std::atomic<std::size_t> next_job{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    // Trajectories run without recording time series; only the final
    // counters feed the scan statistics.
    constexpr int kNoSampling = std::numeric_limits<int>::max();
    auto worker = [&]() {
        for (;;) {
            const std::size_t job = next_job.fetch_add(1);
            if (job >= n_jobs)
                return;
            const std::size_t pi = job / n_traj;
            const std::size_t tj = job % n_traj;
            try {
                const std::uint64_t seed =
                    derive_trajectory_seed(spec.master_seed, pi, tj);
                TrajectoryResult r = run_trajectory(point_params[pi], seed,
                                                    spec.t_end, spec.dt, kNoSampling);
                totals[job] = {r.counters.n_e, r.counters.N_p};
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };

    int n_threads = threads > 0 ? threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_jobs)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);

    ScanResult result;
    result.points.reserve(n_points);
    for (std::size_t pi = 0; pi < n_points; ++pi) {
        std::vector<double> ne(n_traj), np(n_traj), qy(n_traj), q(n_traj), eta(n_traj);
        bool defined = true;
        for (std::size_t tj = 0; tj < n_traj; ++tj) {
            const TrajectoryTotals& tt = totals[pi * n_traj + tj];
            ne[tj] = tt.n_e;
            np[tj] = tt.N_p;
            const FiguresOfMerit fom = figures_of_merit(tt.n_e, tt.N_p, point_params[pi]);
            qy[tj] = fom.qy;
            q[tj] = fom.q;
            eta[tj] = fom.eta;
            defined = defined && fom.defined;
        }
        ScanPoint point;
        point.param = spec.grid[pi];
        const MeanStd ne_stats = population_stats(ne);
        const MeanStd np_stats = population_stats(np);
        point.ne_mean = ne_stats.mean;
        point.ne_std = ne_stats.std;
        point.np_mean = np_stats.mean;
        point.np_std = np_stats.std;
        point.qy_defined = defined;
        if (defined) {
            // Derived figures average per trajectory, not products of the
            // averaged factors.
            const MeanStd qy_stats = population_stats(qy);
            point.qy_mean = qy_stats.mean;
            point.qy_std = qy_stats.std;
            point.q = population_stats(q).mean;
            point.eta = population_stats(eta).mean;
        } else {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            point.qy_mean = point.qy_std = point.q = point.eta = nan;
        }
        result.points.push_back(point);
    }
    return result;
}

} // namespace qcycle
