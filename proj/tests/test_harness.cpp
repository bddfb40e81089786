#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "qcycle/csv.hpp"
#include "qcycle/scan.hpp"
#include "qcycle/trajectory.hpp"

using namespace qcycle;

TEST_CASE("splitmix64 reproduces the published reference outputs") {
    // successive outputs of the reference generator seeded with 0
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64(0x9E3779B97F4A7C15ull) == 0x6E789E6AA1B965F4ull);
    CHECK(splitmix64(2 * 0x9E3779B97F4A7C15ull) == 0x06C45D188009454Full);
}

TEST_CASE("trajectory seeds are deterministic and collision free") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t m : {1ull, 2ull, 99ull})
        for (std::uint64_t p = 0; p < 12; ++p)
            for (std::uint64_t t = 0; t < 12; ++t) {
                const std::uint64_t s = derive_trajectory_seed(m, p, t);
                CHECK(s == derive_trajectory_seed(m, p, t));
                seen.insert(s);
            }
    CHECK(seen.size() == 3 * 12 * 12);
}

TEST_CASE("trajectories reproduce bitwise for equal seeds and diverge otherwise") {
    const ModelParams p;
    const TrajectoryResult a = run_trajectory(p, 42, 0.05, 1e-3, 10);
    const TrajectoryResult b = run_trajectory(p, 42, 0.05, 1e-3, 10);
    const TrajectoryResult c = run_trajectory(p, 43, 0.05, 1e-3, 10);
    CHECK(trajectory_csv(a) == trajectory_csv(b));
    CHECK(trajectory_csv(a) != trajectory_csv(c));
    CHECK(a.final_x == b.final_x);
}

TEST_CASE("series sampling cadence and initial record") {
    const ModelParams p;
    const TrajectoryResult r = run_trajectory(p, 7, 0.01, 1e-3, 3);
    // 10 steps, records at t = 0 and after steps 3, 6, 9
    REQUIRE(r.series.t.size() == 4);
    CHECK(r.series.t[0] == 0.0);
    CHECK(r.series.t[1] == doctest::Approx(0.003).epsilon(1e-12));
    CHECK(r.series.t[3] == doctest::Approx(0.009).epsilon(1e-12));
    CHECK(r.series.x.size() == 4);
    CHECK(r.series.n_e.size() == 4);
    for (const auto& occ : r.series.occ)
        CHECK(occ.size() == 4);
}

TEST_CASE("the configured initial condition seeds the series") {
    ModelParams p;
    p.initial_state = 0xA0;
    p.initial_x = -2.0;
    const TrajectoryResult r = run_trajectory(p, 5, 0.002, 1e-3, 1);
    CHECK(r.series.x[0] == -2.0);
    CHECK(r.series.occ[static_cast<int>(SiteId::HemeH)][0] == 1.0);
    CHECK(r.series.occ[static_cast<int>(SiteId::SiteB)][0] == 1.0);
    CHECK(r.series.occ[static_cast<int>(SiteId::HemeL)][0] == 0.0);
    CHECK(r.series.occ[static_cast<int>(SiteId::ShuttleE1)][0] == 0.0);

    ModelParams vac;
    vac.initial_state = 0;
    vac.initial_x = 1.25;
    const TrajectoryResult v = run_trajectory(vac, 5, 0.002, 1e-3, 1);
    CHECK(v.series.x[0] == 1.25);
    for (int s = 0; s < kNumSites; ++s)
        CHECK(v.series.occ[static_cast<std::size_t>(s)][0] == 0.0);
}

TEST_CASE("run_trajectory rejects unusable arguments") {
    const ModelParams p;
    CHECK_THROWS_AS((void)run_trajectory(p, 1, -1.0, 1e-3), std::invalid_argument);
    CHECK_THROWS_AS((void)run_trajectory(p, 1, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)run_trajectory(p, 1, 1.0, 1e-3, 0), std::invalid_argument);
}

TEST_CASE("decoupled reservoirs leave the counters at zero and QY undefined") {
    ModelParams p;
    p.gamma_Fd = p.gamma_Pc = 0.0;
    p.Gamma_N = p.Gamma_P = 0.0;
    const TrajectoryResult r = run_trajectory(p, 3, 0.02, 1e-3, 10);
    CHECK(r.counters.n_e == 0.0);
    CHECK(r.counters.N_p == 0.0);
    CHECK(r.counters.N_n == 0.0);
    CHECK_FALSE(r.qy_defined());
    CHECK(std::isnan(r.qy()));
}

TEST_CASE("figures of merit: frozen ratio and undefined branch") {
    const ModelParams p; // mu_P - mu_N = 150, mu_Fd - mu_Pc = 850
    const FiguresOfMerit fom = figures_of_merit(1.0, 2.0, p);
    CHECK(fom.defined);
    CHECK(fom.qy == 2.0);
    CHECK(fom.q == 4.0);
    CHECK(fom.eta == 6.0 / 17.0); // bitwise: (150/850) * 2 = 6/17
    const FiguresOfMerit undef = figures_of_merit(0.0, 2.0, p);
    CHECK_FALSE(undef.defined);
    CHECK(std::isnan(undef.qy));
    CHECK(std::isnan(undef.q));
    CHECK(std::isnan(undef.eta));
    const FiguresOfMerit neg = figures_of_merit(-0.5, 2.0, p);
    CHECK_FALSE(neg.defined);
}

TEST_CASE("proton bias follows temperature linearly from the 298 K anchor") {
    CHECK(delta_mu_from_ph(2.5, 298.0) == 150.0);
    CHECK(delta_mu_from_ph(2.5, 350.0) == doctest::Approx(176.1744966442953).epsilon(1e-15));
    CHECK(delta_mu_from_ph(0.0, 298.0) == 0.0);
}

TEST_CASE("temperature schemes cascade: T only, + proton bias, + surface scaling") {
    const ModelParams base;
    const double T_K = 25.0 / kBoltzmannMevPerK; // makes T_meV exactly-ish 25

    const ModelParams s1 = apply_scheme(TemperatureScheme::I, T_K, base);
    CHECK(s1.T == doctest::Approx(25.0).epsilon(1e-13));
    CHECK(s1.mu_P == base.mu_P);
    CHECK(s1.mu_N == base.mu_N);
    CHECK(s1.V_P == base.V_P);
    CHECK(s1.eps_A_prime == base.eps_A_prime);

    const ModelParams s2 = apply_scheme(TemperatureScheme::II, T_K, base);
    const double dmu = delta_mu_from_ph(2.5, T_K);
    CHECK(s2.mu_P == dmu / 2.0);
    CHECK(s2.mu_N == -dmu / 2.0);
    CHECK(s2.V_P == base.V_P);
    CHECK(s2.mu_Fd == base.mu_Fd);

    const ModelParams s3 = apply_scheme(TemperatureScheme::III, T_K, base);
    CHECK(s3.V_P == doctest::Approx(135.0).epsilon(1e-12));
    CHECK(s3.V_N == doctest::Approx(115.0).epsilon(1e-12));
    // site A base energy 585 re-primed by the new V_N
    CHECK(s3.eps_A_prime == doctest::Approx(470.0).epsilon(1e-11));
    CHECK(s3.mu_P == s2.mu_P);

    CHECK_THROWS_AS((void)apply_scheme(TemperatureScheme::I, -5.0, base), std::invalid_argument);
}

TEST_CASE("scan point parameters for each variable") {
    const ModelParams base;
    ScanSpec spec;

    spec.variable = ScanVariable::DeltaMu;
    const ModelParams dm = scan_point_params(spec, 300.0, base);
    CHECK(dm.mu_P == 150.0);
    CHECK(dm.mu_N == -150.0);
    CHECK(dm.V_P == base.V_P);

    spec.variable = ScanVariable::DeltaV;
    const ModelParams dv = scan_point_params(spec, 300.0, base);
    // total drop 300 with the default asymmetry V_P - V_N = 20
    CHECK(dv.V_P == 160.0);
    CHECK(dv.V_N == 140.0);
    CHECK(dv.mu_P == base.mu_P);
    // re-priming happened: site A base 585 shifted by the new V_N
    CHECK(dv.eps_A_prime == doctest::Approx(585.0 - 140.0).epsilon(1e-11));

    spec.variable = ScanVariable::Temperature;
    spec.scheme = TemperatureScheme::I;
    const ModelParams tp = scan_point_params(spec, 298.0, base);
    CHECK(tp.T == doctest::Approx(kBoltzmannMevPerK * 298.0).epsilon(1e-14));
    CHECK(tp.mu_P == base.mu_P);
}

TEST_CASE("scan spec validation catches broken setups") {
    ScanSpec spec;
    spec.grid = {1.0, 2.0, 3.0};
    CHECK_NOTHROW(spec.check());
    spec.grid = {};
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
    spec.grid = {2.0, 1.0};
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
    spec.grid = {1.0, 2.0};
    spec.trajectories = 0;
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
    spec = ScanSpec{};
    spec.grid = {100.0};
    spec.t_end = 0.0;
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
    spec = ScanSpec{};
    spec.variable = ScanVariable::Temperature;
    spec.grid = {-10.0, 300.0};
    CHECK_THROWS_AS(spec.check(), std::invalid_argument);
}

TEST_CASE("default grids cover the documented ranges") {
    const auto dmu = default_grid(ScanVariable::DeltaMu);
    REQUIRE(dmu.size() == 10);
    CHECK(dmu.front() == 0.0);
    CHECK(dmu.back() == 450.0);
    const auto dv = default_grid(ScanVariable::DeltaV);
    REQUIRE(dv.size() == 7);
    CHECK(dv.front() == 200.0);
    CHECK(dv.back() == 320.0);
    const auto t = default_grid(ScanVariable::Temperature);
    REQUIRE(t.size() == 11);
    CHECK(t.front() == 250.0);
    CHECK(t.back() == 350.0);
}

TEST_CASE("tiny scan: thread-count invariance, single-trajectory std, NaN path") {
    ModelParams base;
    ScanSpec spec;
    spec.variable = ScanVariable::DeltaMu;
    spec.grid = {100.0, 200.0};
    spec.trajectories = 2;
    spec.t_end = 0.02;
    spec.dt = 1e-3;
    spec.master_seed = 9;

    const ScanResult one = run_scan(spec, base, 1);
    const ScanResult two = run_scan(spec, base, 2);
    CHECK(scan_csv(one) == scan_csv(two));

    spec.trajectories = 1;
    const ScanResult single = run_scan(spec, base, 1);
    CHECK(single.points[0].ne_std == 0.0);
    CHECK(single.points[0].np_std == 0.0);

    // no reservoir exchange in 20 ns from the primed state is possible, but
    // decoupling the reservoirs guarantees an undefined QY
    base.gamma_Fd = base.gamma_Pc = 0.0;
    base.Gamma_N = base.Gamma_P = 0.0;
    const ScanResult undef = run_scan(spec, base, 1);
    CHECK_FALSE(undef.points[0].qy_defined);
    CHECK(std::isnan(undef.points[0].qy_mean));
    CHECK(std::isnan(undef.points[0].eta));
    CHECK(undef.points[0].ne_mean == 0.0);
}
