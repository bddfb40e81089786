#include "qcycle/validate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "qcycle/config.hpp"
#include "qcycle/csv.hpp"
#include "qcycle/generator.hpp"
#include "qcycle/membrane.hpp"
#include "qcycle/propagator.hpp"
#include "qcycle/scan.hpp"
#include "qcycle/trajectory.hpp"

namespace qcycle {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

PropertyResult pass(std::string detail) { return {true, std::move(detail)}; }
PropertyResult failure(std::string detail) { return {false, std::move(detail)}; }

ModelParams perturbed_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> scale(0.9, 1.1);
    ModelParams p;
    p.eps_Q0 *= scale(rng);
    p.E_Q0 *= scale(rng);
    p.eps_L_prime *= scale(rng);
    p.eps_H_prime *= scale(rng);
    p.eps_A_prime *= scale(rng);
    p.eps_B_prime *= scale(rng);
    p.U_ee *= scale(rng);
    p.U_pp *= scale(rng);
    p.U_ep *= scale(rng);
    p.U_LH *= scale(rng);
    p.lambda_AQ *= scale(rng);
    p.lambda_LH *= scale(rng);
    p.mu_Fd *= scale(rng);
    p.mu_Pc *= scale(rng);
    p.mu_N *= scale(rng);
    p.mu_P *= scale(rng);
    p.T *= scale(rng);
    p.V_P *= scale(rng);
    p.V_N *= scale(rng);
    return p;
}

RateMatrix random_small_generator(std::mt19937_64& rng, int dim = 16) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> mag(0.0, 30.0);
    std::vector<Channel> channels;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i == j || uni(rng) > 0.3)
                continue;
            channels.push_back(Channel{ChannelKind::Marcus, 0, 0, 0, 0, 0,
                                       static_cast<std::uint8_t>(i),
                                       static_cast<std::uint8_t>(j), mag(rng)});
        }
    if (channels.empty())
        channels.push_back(Channel{ChannelKind::Marcus, 0, 0, 0, 0, 0, 0, 1, 1.0});
    return RateMatrix(dim, std::move(channels));
}

PopulationVector random_population(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    PopulationVector p(static_cast<std::size_t>(dim));
    double sum = 0.0;
    for (double& v : p) {
        v = uni(rng);
        sum += v;
    }
    for (double& v : p)
        v /= sum;
    return p;
}

PopulationVector gibbs_population(const ModelParams& p, double x, double mu) {
    PopulationVector w(kNumStates);
    double shift = 1e300;
    for (int s = 0; s < kNumStates; ++s) {
        const int n_tot = electron_count(s) + proton_count(s);
        const double e = state_energy(s, x, p) - mu * n_tot;
        w[static_cast<unsigned>(s)] = e;
        shift = std::min(shift, e);
    }
    double sum = 0.0;
    for (double& v : w) {
        v = std::exp(-(v - shift) / p.T);
        sum += v;
    }
    for (double& v : w)
        v /= sum;
    return w;
}

ModelParams equilibrium_params(const ModelParams& base) {
    ModelParams p = base;
    p.mu_Fd = p.mu_Pc = p.mu_N = p.mu_P = 0.0;
    p.proton_gap_convention = ProtonGapConvention::Signed;
    return p;
}

// Heavy shared fixture: the six default-parameter 100 us trajectories used
// by several statistical properties. Built once on first use.
struct DefaultEnsemble {
    std::vector<TrajectoryResult> runs;
};

void run_trajectories_pooled(const ModelParams& params,
                             const std::vector<std::uint64_t>& seeds, double t_end,
                             double dt, int sample_every, int threads,
                             std::vector<TrajectoryResult>& out) {
    out.resize(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size())
                return;
            out[i] = run_trajectory(params, seeds[i], t_end, dt, sample_every);
        }
    };
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, std::min<int>(n, static_cast<int>(seeds.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n; ++i)
            pool.emplace_back(worker);
        for (std::thread& t : pool)
            t.join();
    }
}

const DefaultEnsemble& ensure_default_ensemble(const std::shared_ptr<DefaultEnsemble>& fixture,
                                               int threads) {
    if (fixture->runs.empty()) {
        std::vector<std::uint64_t> seeds;
        for (std::uint64_t i = 0; i < 6; ++i)
            seeds.push_back(derive_trajectory_seed(2024, 0, i));
        run_trajectories_pooled(ModelParams{}, seeds, 100.0, 1e-3, 100, threads,
                                fixture->runs);
    }
    return *fixture;
}

struct MeanStd {
    double mean = 0.0, std = 0.0;
};

MeanStd stats(const std::vector<double>& v) {
    MeanStd out;
    for (double x : v)
        out.mean += x;
    out.mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v)
        var += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(std::max(var / static_cast<double>(v.size()), 0.0));
    return out;
}

} // namespace

std::vector<PropertyCheck> property_registry(int threads) {
    std::vector<PropertyCheck> checks;
    auto ensemble = std::make_shared<DefaultEnsemble>();

    // ---------------- state-space ----------------

    checks.push_back({"state-space", "bit_layout_round_trip", []() -> PropertyResult {
        for (int s = 0; s < kNumStates; ++s) {
            int rebuilt = 0;
            for (int b = 0; b < kNumSites; ++b)
                rebuilt |= occupancy(s, static_cast<SiteId>(b)) << b;
            if (rebuilt != s)
                return failure("state " + std::to_string(s) + " rebuilt as " +
                               std::to_string(rebuilt));
        }
        return pass("all 256 states round-trip");
    }});

    checks.push_back({"state-space", "energy_exchange_symmetry", []() -> PropertyResult {
        const ModelParams p;
        auto swap_bits = [](int s, int a, int b) {
            const int ba = (s >> a) & 1, bb = (s >> b) & 1;
            if (ba == bb)
                return s;
            return s ^ ((1 << a) | (1 << b));
        };
        double worst = 0.0;
        for (double x : {-2.0, -0.7, 0.0, 1.3, 2.0})
            for (int s = 0; s < kNumStates; ++s) {
                const double e = state_energy(s, x, p);
                const double e_el = state_energy(swap_bits(s, 0, 1), x, p);
                const double e_pr = state_energy(swap_bits(s, 2, 3), x, p);
                worst = std::max({worst, std::abs(e - e_el), std::abs(e - e_pr)});
            }
        if (worst > 1e-12)
            return failure("max asymmetry " + fmt(worst) + " meV");
        return pass("shuttle-site exchange leaves energies unchanged");
    }});

    checks.push_back({"state-space", "neutral_position_independence", []() -> PropertyResult {
        const ModelParams p;
        const double h = 1e-4;
        double worst_neutral = 0.0, worst_coeff = 0.0;
        for (int s = 0; s < kNumStates; ++s) {
            const bool neutral = shuttle_electron_count(s) == shuttle_proton_count(s);
            for (double x : {-1.5, 0.4, 1.9}) {
                const double grad =
                    (state_energy(s, x + h, p) - state_energy(s, x - h, p)) / (2.0 * h);
                if (neutral) {
                    worst_neutral = std::max(worst_neutral, std::abs(grad));
                } else {
                    const double expected =
                        (surface_potential(x + h, p) - surface_potential(x - h, p)) /
                        (2.0 * h) * surface_charge_coefficient(s);
                    worst_coeff = std::max(worst_coeff, std::abs(grad - expected));
                }
            }
        }
        if (worst_neutral > 1e-8 || worst_coeff > 1e-6)
            return failure("neutral gradient " + fmt(worst_neutral) + ", coefficient dev " +
                           fmt(worst_coeff));
        return pass("neutral states x-independent, charged slope = V'(x) * charge");
    }});

    checks.push_back({"state-space", "charge_sq_bounds", []() -> PropertyResult {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const double q2 = shuttle_charge_sq(random_population(rng, kNumStates));
            if (q2 < 0.0 || q2 > 4.0)
                return failure("shuttle_charge_sq = " + fmt(q2));
        }
        return pass("shuttle_charge_sq in [0, 4] for random normalized populations");
    }});

    // ---------------- rate-generator ----------------

    checks.push_back({"rate-generator", "column_sums_and_signs", []() -> PropertyResult {
        std::mt19937_64 rng(21);
        std::uniform_real_distribution<double> xdist(-2.7, 2.7);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const ModelParams p = perturbed_params(rng);
            const RateMatrix m = build_generator(xdist(rng), p);
            for (const Channel& c : m.channels())
                if (c.rate < 0.0)
                    return failure("negative rate found");
            const std::vector<double> dense = m.to_dense();
            const double scale = std::max(1.0, m.max_exit_rate());
            for (int j = 0; j < m.dim(); ++j) {
                double col = 0.0;
                for (int i = 0; i < m.dim(); ++i)
                    col += dense[static_cast<std::size_t>(i) * m.dim() + j];
                worst = std::max(worst, std::abs(col) / scale);
            }
        }
        if (worst > 1e-12)
            return failure("max scaled column sum " + fmt(worst));
        return pass("100 randomized draws, max scaled column sum " + fmt(worst));
    }});

    checks.push_back({"rate-generator", "particle_selection_rules", []() -> PropertyResult {
        const RateMatrix m = build_generator(0.8, ModelParams{});
        for (const Channel& c : m.channels()) {
            const int de = electron_count(c.to_state) - electron_count(c.from_state);
            const int dp = proton_count(c.to_state) - proton_count(c.from_state);
            switch (c.kind) {
            case ChannelKind::Marcus:
                if (de != 0 || dp != 0)
                    return failure("Marcus channel changes particle counts");
                break;
            case ChannelKind::ElectronReservoir:
                if (std::abs(de) != 1 || dp != 0)
                    return failure("reservoir channel with wrong electron move");
                break;
            case ChannelKind::ProtonReservoir:
                if (de != 0 || std::abs(dp) != 1)
                    return failure("proton channel with wrong proton move");
                break;
            }
        }
        return pass("all 2688 channels move exactly the designated particle");
    }});

    checks.push_back({"rate-generator", "marcus_detailed_balance", []() -> PropertyResult {
        const ModelParams p;
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> xdist(-2.7, 2.7);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double x = xdist(rng);
            const RateMatrix m = build_generator(x, p);
            for (const Channel& c : m.channels()) {
                if (c.kind != ChannelKind::Marcus || c.from_state > c.to_state)
                    continue;
                const Channel* back = nullptr;
                for (const Channel& d : m.channels())
                    if (d.kind == ChannelKind::Marcus && d.from_state == c.to_state &&
                        d.to_state == c.from_state) {
                        back = &d;
                        break;
                    }
                if (!back || back->rate <= 0.0 || c.rate <= 0.0)
                    continue;
                const double d_omega = state_energy(c.to_state, x, p) -
                                       state_energy(c.from_state, x, p);
                const double expected = std::exp(-d_omega / p.T);
                const double rel = std::abs(c.rate / back->rate / expected - 1.0);
                worst = std::max(worst, rel);
            }
        }
        if (worst > 1e-10)
            return failure("worst relative deviation " + fmt(worst));
        return pass("forward/backward = exp(-d_omega/T), worst deviation " + fmt(worst));
    }});

    checks.push_back({"rate-generator", "reservoir_detailed_balance", []() -> PropertyResult {
        const ModelParams p;
        const RateMatrix m = build_generator(-1.1, p);
        double worst = 0.0;
        for (const Channel& c : m.channels()) {
            if (c.kind != ChannelKind::ElectronReservoir)
                continue;
            const bool uptake = electron_count(c.to_state) > electron_count(c.from_state);
            if (!uptake)
                continue;
            const Channel* back = nullptr;
            for (const Channel& d : m.channels())
                if (d.kind == ChannelKind::ElectronReservoir &&
                    d.from_state == c.to_state && d.to_state == c.from_state) {
                    back = &d;
                    break;
                }
            const double eps = (c.endpoint_a == 0) ? p.eps_A_prime : p.eps_B_prime;
            const double mu = (c.endpoint_a == 0) ? p.mu_Fd : p.mu_Pc;
            const double expected = std::exp(-(eps - mu) / p.T);
            const double rel = std::abs(c.rate / back->rate / expected - 1.0);
            worst = std::max(worst, rel);
        }
        if (worst > 1e-12)
            return failure("worst relative deviation " + fmt(worst));
        return pass("uptake/release = exp(-(eps'-mu)/T), worst deviation " + fmt(worst));
    }});

    checks.push_back({"rate-generator", "position_locality", []() -> PropertyResult {
        const ModelParams p;
        const double suppression = std::exp(-16.0) * (1.0 + 1e-9);
        struct Case {
            double x;
            int far_profile_a; // fixed sites whose couplings must be suppressed
            int far_profile_b;
            int far_proton_side;
        };
        const Case cases[2] = {
            {p.x0, static_cast<int>(SiteId::SiteA), static_cast<int>(SiteId::HemeH), 0},
            {-p.x0, static_cast<int>(SiteId::SiteB), static_cast<int>(SiteId::HemeL), 1},
        };
        for (const Case& cs : cases) {
            const RateMatrix m = build_generator(cs.x, p);
            for (const Channel& c : m.channels()) {
                if (c.kind == ChannelKind::Marcus) {
                    const int fixed_site =
                        (c.endpoint_a >= 4) ? c.endpoint_a : c.endpoint_b;
                    if (fixed_site != cs.far_profile_a && fixed_site != cs.far_profile_b)
                        continue;
                    if (c.endpoint_a < 2 || c.endpoint_b < 2) { // shuttle involved
                        double delta0 = 0.0;
                        switch (static_cast<SiteId>(fixed_site)) {
                        case SiteId::SiteA: delta0 = p.Delta_AQ; break;
                        case SiteId::SiteB: delta0 = p.Delta_BQ; break;
                        case SiteId::HemeL: delta0 = p.Delta_LQ; break;
                        case SiteId::HemeH: delta0 = p.Delta_HQ; break;
                        default: break;
                        }
                        const double bound = kHbarInvUsPerMev *
                                             std::sqrt(std::numbers::pi / (100.0 * p.T)) *
                                             delta0 * delta0 * suppression;
                        if (c.rate > bound)
                            return failure("far-side Marcus rate " + fmt(c.rate) +
                                           " above bound " + fmt(bound));
                    }
                } else if (c.kind == ChannelKind::ProtonReservoir &&
                           c.endpoint_a == cs.far_proton_side) {
                    const double gamma =
                        (cs.far_proton_side == 0) ? p.Gamma_N : p.Gamma_P;
                    const double bound = gamma * kHbarInvUsPerMev * suppression;
                    if (c.rate > bound)
                        return failure("far-side proton rate " + fmt(c.rate) +
                                       " above bound " + fmt(bound));
                }
            }
        }
        return pass("far-side channel rates suppressed by >= e^-16 at both contacts");
    }});

    // ---------------- propagator ----------------

    checks.push_back({"propagator", "positivity", []() -> PropertyResult {
        std::mt19937_64 rng(41);
        for (int trial = 0; trial < 20; ++trial) {
            const RateMatrix m = random_small_generator(rng);
            const PopulationVector p0 = random_population(rng, m.dim());
            for (double dt : {0.0, 1e-3, 0.1, 1.0}) {
                const PopulationVector p1 = evolve(p0, m, dt);
                for (double v : p1)
                    if (v < -1e-12)
                        return failure("entry " + fmt(v) + " at dt " + fmt(dt));
            }
        }
        return pass("no entry below -1e-12 across random generators, dt in [0,1]");
    }});

    checks.push_back({"propagator", "normalization_longrun", []() -> PropertyResult {
        GeneratorBuilder builder{ModelParams{}};
        builder.update_position(-1.7);
        PopulationVector p = basis_population(0);
        for (int k = 0; k < 10000; ++k)
            p = evolve(p, builder.matrix(), 1e-3);
        const double drift = std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0);
        if (drift > 1e-9)
            return failure("norm drift " + fmt(drift) + " after 1e4 steps");
        return pass("norm drift " + fmt(drift) + " after 1e4 steps");
    }});

    checks.push_back({"propagator", "dense_agreement", []() -> PropertyResult {
        std::mt19937_64 rng(51);
        double worst = 0.0;
        auto compare = [&](const RateMatrix& m, double dt) {
            const PopulationVector p0 = random_population(rng, m.dim());
            const PopulationVector fast = evolve(p0, m, dt);
            const Eigen::MatrixXd ref = dense_expm_reference(m, dt);
            for (int i = 0; i < m.dim(); ++i) {
                double exact = 0.0;
                for (int j = 0; j < m.dim(); ++j)
                    exact += ref(i, j) * p0[static_cast<std::size_t>(j)];
                worst = std::max(worst, std::abs(exact - fast[static_cast<std::size_t>(i)]));
            }
        };
        for (int trial = 0; trial < 10; ++trial)
            compare(random_small_generator(rng), 0.05);
        compare(build_generator(-1.9, ModelParams{}), 1e-3);
        compare(build_generator(0.6, ModelParams{}), 0.1);
        if (worst > 1e-8)
            return failure("max disagreement " + fmt(worst));
        return pass("uniformization vs dense exponential within " + fmt(worst));
    }});

    checks.push_back({"propagator", "semigroup", []() -> PropertyResult {
        std::mt19937_64 rng(61);
        std::uniform_real_distribution<double> tdist(0.0, 0.1);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const RateMatrix m = random_small_generator(rng);
            const PopulationVector p0 = random_population(rng, m.dim());
            const double s = tdist(rng), t = tdist(rng);
            const PopulationVector two = evolve(evolve(p0, m, s), m, t);
            const PopulationVector one = evolve(p0, m, s + t);
            for (std::size_t i = 0; i < two.size(); ++i)
                worst = std::max(worst, std::abs(two[i] - one[i]));
        }
        if (worst > 1e-8)
            return failure("max semigroup defect " + fmt(worst));
        return pass("evolve(evolve(p,s),t) = evolve(p,s+t) within " + fmt(worst));
    }});

    checks.push_back({"propagator", "gibbs_stationarity", []() -> PropertyResult {
        const ModelParams base;
        double worst = 0.0;
        for (double mu : {0.0, 50.0}) {
            ModelParams p = equilibrium_params(base);
            p.mu_Fd = p.mu_Pc = p.mu_N = p.mu_P = mu;
            for (double x : {-2.0, 0.0, 1.3}) {
                const RateMatrix m = build_generator(x, p);
                const PopulationVector gc = gibbs_population(p, x, mu);
                const PopulationVector after = evolve(gc, m, 1e-2);
                for (std::size_t i = 0; i < gc.size(); ++i)
                    worst = std::max(worst, std::abs(after[i] - gc[i]));
            }
        }
        if (worst > 1e-6)
            return failure("max drift from grand-canonical state " + fmt(worst));
        return pass("grand-canonical vector stationary within " + fmt(worst));
    }});

    checks.push_back({"propagator", "flux_bookkeeping", []() -> PropertyResult {
        std::mt19937_64 rng(71);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            ModelParams p;
            p.gamma_Fd = 0.0; // all electron exchange flows through Pc
            GeneratorBuilder builder(p);
            builder.update_position(-1.2 + 0.6 * trial);
            const PopulationVector pre = random_population(rng, kNumStates);
            const StepResult step = evolve_step(pre, builder.matrix(), 1e-3);
            FluxCounters fc;
            accumulate_fluxes(step.time_integral, builder.matrix(), fc);
            double d_protons = 0.0, d_electrons = 0.0;
            for (int s = 0; s < kNumStates; ++s) {
                const double dp = step.next[static_cast<unsigned>(s)] - pre[static_cast<unsigned>(s)];
                d_protons += dp * proton_count(s);
                d_electrons += dp * electron_count(s);
            }
            worst = std::max(worst, std::abs(d_protons - (fc.N_n - fc.N_p)));
            worst = std::max(worst, std::abs(d_electrons - (-fc.n_e)));
        }
        if (worst > 1e-9)
            return failure("counter mismatch " + fmt(worst));
        return pass("counter increments match population changes within " + fmt(worst));
    }});

    // ---------------- membrane-dynamics ----------------

    checks.push_back({"membrane-dynamics", "potential_symmetry_and_slopes", []() -> PropertyResult {
        const ModelParams p;
        const double h = 1e-6;
        double worst = 0.0;
        for (double x : {0.0, 0.4, 1.0, 1.65, 1.7, 1.75, 2.0, 2.6, 2.7, 2.8, 3.2}) {
            for (int sign : {1, -1}) {
                const double xx = sign * x;
                const PotentialValue w = confinement_potential(xx, p);
                const PotentialValue c = charge_barrier(xx, p);
                const PotentialValue w_m = confinement_potential(-xx, p);
                const PotentialValue c_m = charge_barrier(-xx, p);
                worst = std::max({worst, std::abs(w.value - w_m.value),
                                  std::abs(c.value - c_m.value),
                                  std::abs(w.derivative + w_m.derivative),
                                  std::abs(c.derivative + c_m.derivative)});
                const double fd_w = (confinement_potential(xx + h, p).value -
                                     confinement_potential(xx - h, p).value) / (2.0 * h);
                const double fd_c = (charge_barrier(xx + h, p).value -
                                     charge_barrier(xx - h, p).value) / (2.0 * h);
                const double tol_w = 1e-3 + 1e-5 * std::abs(w.derivative);
                const double tol_c = 1e-3 + 1e-5 * std::abs(c.derivative);
                if (std::abs(fd_w - w.derivative) > tol_w ||
                    std::abs(fd_c - c.derivative) > tol_c)
                    return failure("derivative mismatch at x = " + fmt(xx));
            }
        }
        if (worst > 1e-9)
            return failure("symmetry defect " + fmt(worst));
        return pass("even potentials, odd analytic derivatives matching finite differences");
    }});

    checks.push_back({"membrane-dynamics", "soft_wall_containment",
                      [ensemble, threads]() -> PropertyResult {
        const DefaultEnsemble& runs = ensure_default_ensemble(ensemble, threads);
        double worst = 0.0;
        for (const TrajectoryResult& r : runs.runs)
            for (double x : r.series.x)
                worst = std::max(worst, std::abs(x));
        if (worst > 3.7)
            return failure("|x| reached " + fmt(worst) + " nm");
        return pass("6 x 100 us default trajectories stay within |x| <= " + fmt(worst) +
                    " nm");
    }});

    checks.push_back({"membrane-dynamics", "free_diffusion_msd", []() -> PropertyResult {
        ModelParams p;
        p.U_w0 = 0.0;
        p.U_ch0 = 0.0;
        const double D = p.diffusion();
        const int n_traj = 20000;
        const int n_steps = 1000; // 1 us at dt = 1e-3
        std::mt19937_64 rng(81);
        std::normal_distribution<double> normal(0.0, 1.0);
        std::vector<double> x(n_traj, 0.0);
        double worst = 0.0;
        std::string detail;
        for (int k = 1; k <= n_steps; ++k) {
            for (int i = 0; i < n_traj; ++i)
                x[static_cast<std::size_t>(i)] =
                    langevin_step(x[static_cast<std::size_t>(i)], 0.0, p, normal(rng));
            if (k == 250 || k == 500 || k == 1000) {
                double msd = 0.0;
                for (double xi : x)
                    msd += xi * xi;
                msd /= n_traj;
                const double expected = 2.0 * D * (k * p.dt);
                const double rel = std::abs(msd / expected - 1.0);
                worst = std::max(worst, rel);
                detail += " t=" + fmt(k * p.dt) + ":" + fmt(rel);
            }
        }
        if (worst > 0.05)
            return failure("MSD deviates from 2Dt by " + fmt(worst));
        return pass("MSD within 5% of 2Dt (relative deviations:" + detail + ")");
    }});

    checks.push_back({"membrane-dynamics", "charge_barrier_blocking", []() -> PropertyResult {
        const ModelParams p;
        auto crossings = [&](double q_sq, std::uint64_t seed) {
            std::mt19937_64 rng(seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            double x = -p.x0;
            long count = 0;
            for (int k = 0; k < 100000; ++k) {
                const double nx = langevin_step(x, q_sq, p, normal(rng));
                if ((x < 0.0) != (nx < 0.0))
                    ++count;
                x = nx;
            }
            return count;
        };
        long neutral = 0, charged = 0;
        for (std::uint64_t s = 0; s < 6; ++s) {
            neutral += crossings(0.0, 1000 + s);
            charged += crossings(4.0, 2000 + s);
        }
        if (neutral == 0)
            return failure("neutral shuttle never crossed the midpoint");
        if (charged * 10 > neutral)
            return failure("charged crossings " + std::to_string(charged) +
                           " vs neutral " + std::to_string(neutral));
        return pass("midpoint crossings over 6 x 100 us: neutral " +
                    std::to_string(neutral) + ", charged " + std::to_string(charged));
    }});

    // ---------------- experiment-harness ----------------

    checks.push_back({"experiment-harness", "trajectory_determinism", []() -> PropertyResult {
        const ModelParams p;
        const TrajectoryResult a = run_trajectory(p, 99, 0.5, 1e-3, 10);
        const TrajectoryResult b = run_trajectory(p, 99, 0.5, 1e-3, 10);
        const TrajectoryResult c = run_trajectory(p, 100, 0.5, 1e-3, 10);
        if (trajectory_csv(a) != trajectory_csv(b))
            return failure("same seed produced different series");
        if (a.final_x != b.final_x || a.counters.n_e != b.counters.n_e)
            return failure("same seed produced different final state");
        if (c.final_x == a.final_x)
            return failure("different seeds produced identical positions");
        return pass("seed 99 reproduces bitwise, seed 100 differs");
    }});

    checks.push_back({"experiment-harness", "qy_headroom",
                      [ensemble, threads]() -> PropertyResult {
        const DefaultEnsemble& runs = ensure_default_ensemble(ensemble, threads);
        double worst = 0.0;
        for (const TrajectoryResult& r : runs.runs) {
            if (!r.qy_defined())
                return failure("default trajectory with n_e <= 0");
            worst = std::max(worst, r.qy());
        }
        if (worst > 2.2)
            return failure("per-trajectory QY reached " + fmt(worst));
        return pass("per-trajectory QY <= " + fmt(worst) + " (bound 2.2)");
    }});

    checks.push_back({"experiment-harness", "zero_bias_null",
                      [threads]() -> PropertyResult {
        std::string detail;
        for (TemperatureScheme scheme :
             {TemperatureScheme::I, TemperatureScheme::II, TemperatureScheme::III}) {
            ModelParams p = apply_scheme(scheme, 298.0, ModelParams{});
            p = equilibrium_params(p);
            p.set_surface_potential(0.0, 0.0);
            std::vector<std::uint64_t> seeds;
            for (std::uint64_t i = 0; i < 6; ++i)
                seeds.push_back(derive_trajectory_seed(777, static_cast<int>(scheme), i));
            std::vector<TrajectoryResult> runs;
            run_trajectories_pooled(p, seeds, 100.0, 1e-3, 100, threads, runs);
            // Skip the relaxation transient from the vacuum start; the null
            // statement is about steady-state currents.
            const double t_burn = 20.0;
            std::vector<double> dne, dnp;
            for (const TrajectoryResult& r : runs) {
                std::size_t burn_idx = 0;
                while (burn_idx + 1 < r.series.t.size() && r.series.t[burn_idx] < t_burn)
                    ++burn_idx;
                dne.push_back(r.counters.n_e - r.series.n_e[burn_idx]);
                dnp.push_back(r.counters.N_p - r.series.N_p[burn_idx]);
            }
            const MeanStd ne = stats(dne), np = stats(dnp);
            const double floor = 0.02;
            if (std::abs(ne.mean) > std::max(3.0 * ne.std, floor) ||
                std::abs(np.mean) > std::max(3.0 * np.std, floor))
                return failure("scheme " + std::to_string(static_cast<int>(scheme)) +
                               ": n_e " + fmt(ne.mean) + "+-" + fmt(ne.std) + ", N_p " +
                               fmt(np.mean) + "+-" + fmt(np.std));
            detail += " scheme" + std::to_string(static_cast<int>(scheme)) + ": n_e " +
                      fmt(ne.mean) + "+-" + fmt(ne.std) + ", N_p " + fmt(np.mean) +
                      "+-" + fmt(np.std) + ";";
        }
        return pass("steady-state currents vanish at zero bias:" + detail);
    }});

    checks.push_back({"experiment-harness", "scheme_consistency", []() -> PropertyResult {
        const double t_mev = 25.93;
        const double t_kelvin = t_mev / kBoltzmannMevPerK;
        const ModelParams p = apply_scheme(TemperatureScheme::III, t_kelvin, ModelParams{});
        if (std::abs(p.V_P - 140.0) > 1.0 || std::abs(p.V_N - 120.0) > 1.0)
            return failure("V_P " + fmt(p.V_P) + ", V_N " + fmt(p.V_N));
        const double expected_eps_a = 585.0 - p.V_N;
        if (std::abs(p.eps_A_prime - expected_eps_a) > 1e-9)
            return failure("re-primed eps_A' " + fmt(p.eps_A_prime));
        return pass("scheme III at T = 25.93 meV recovers the default surface pair "
                    "within 1 meV and re-primes site energies");
    }});

    // ---------------- cli-io ----------------

    checks.push_back({"cli-io", "scan_determinism_and_stats", []() -> PropertyResult {
        ScanSpec spec;
        spec.variable = ScanVariable::DeltaMu;
        spec.grid = {100.0, 200.0};
        spec.trajectories = 3;
        spec.t_end = 0.2;
        spec.master_seed = 5;
        const ModelParams base;
        const std::string one = scan_csv(run_scan(spec, base, 1));
        const std::string two = scan_csv(run_scan(spec, base, 2));
        const std::string three = scan_csv(run_scan(spec, base, 3));
        if (one != two || one != three)
            return failure("scan output depends on thread count");
        ScanSpec single = spec;
        single.grid = {150.0};
        single.trajectories = 1;
        const ScanResult sr = run_scan(single, base, 1);
        if (sr.points[0].ne_std != 0.0 || sr.points[0].np_std != 0.0)
            return failure("single-trajectory std not zero");
        return pass("bit-identical across 1/2/3 threads; single-trajectory std = 0");
    }});

    checks.push_back({"cli-io", "config_round_trip", []() -> PropertyResult {
        std::mt19937_64 rng(91);
        for (int trial = 0; trial < 20; ++trial) {
            ModelParams p = perturbed_params(rng);
            p.proton_gap_convention = (trial % 2) ? ProtonGapConvention::Absolute
                                                  : ProtonGapConvention::Signed;
            ScanSpec s;
            s.variable = (trial % 3 == 0) ? ScanVariable::Temperature
                                          : ((trial % 3 == 1) ? ScanVariable::DeltaV
                                                              : ScanVariable::DeltaMu);
            s.grid = {251.7, 260.01 + trial, 300.0 + trial * trial};
            s.scheme = TemperatureScheme::II;
            s.trajectories = 2 + trial;
            s.t_end = 12.5;
            s.dt = 2.5e-3;
            s.master_seed = 0x12345678ull + trial;
            s.sample_every = 7;
            const ParsedConfig back = parse_config(emit_config(p, s));
            const std::string again = emit_config(back.params, back.scan);
            if (again != emit_config(p, s))
                return failure("round-trip changed the configuration text");
        }
        return pass("20 randomized configurations round-trip bit-exactly");
    }});

    return checks;
}

int run_validation(std::ostream& out, int threads) {
    const std::vector<PropertyCheck> checks = property_registry(threads);
    int failed = 0;
    for (const PropertyCheck& check : checks) {
        PropertyResult result;
        try {
            result = check.run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        out << (result.passed ? "[PASS] " : "[FAIL] ") << check.module << "/"
            << check.name << ": " << result.detail << "\n";
        if (!result.passed)
            ++failed;
    }
    out << (failed == 0 ? "validation OK, " : "validation FAILED, ")
        << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size()
        << " properties passed\n";
    return failed;
}

} // namespace qcycle
