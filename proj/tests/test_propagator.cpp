#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "qcycle/generator.hpp"
#include "qcycle/propagator.hpp"

using namespace qcycle;

namespace {

RateMatrix two_state(double a, double b) {
    std::vector<Channel> ch;
    ch.push_back(Channel{ChannelKind::ElectronReservoir, 1, 0, 1, 0, 0, 0, 1, a});
    ch.push_back(Channel{ChannelKind::ElectronReservoir, 1, 0, 0, 0, 0, 1, 0, b});
    return RateMatrix(2, std::move(ch));
}

RateMatrix random_generator(std::mt19937_64& rng, int dim, double scale) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Channel> ch;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            if (i == j || unit(rng) < 0.55)
                continue;
            ch.push_back(Channel{ChannelKind::Marcus, 0, 0, 0, 0, 0,
                                 static_cast<std::uint8_t>(i),
                                 static_cast<std::uint8_t>(j), scale * unit(rng)});
        }
    if (ch.empty())
        ch.push_back(Channel{ChannelKind::Marcus, 0, 0, 0, 0, 0, 0, 1, scale});
    return RateMatrix(dim, std::move(ch));
}

PopulationVector random_population(std::mt19937_64& rng, int dim) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    PopulationVector p(static_cast<std::size_t>(dim));
    double sum = 0.0;
    for (double& v : p) {
        v = unit(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

Eigen::MatrixXd to_eigen(const RateMatrix& m) {
    const int n = m.dim();
    const std::vector<double> dense = m.to_dense();
    Eigen::MatrixXd l(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            l(i, j) = dense[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                            static_cast<std::size_t>(j)];
    return l;
}

} // namespace

TEST_CASE("two-state relaxation hits the closed form") {
    // rates 0.5 up / 1.5 down from p = (1, 0):
    // p0(t) = 3/4 + 1/4 e^{-2t}, so p0(1) = 0.75 + 0.25 e^-2
    const RateMatrix m = two_state(0.5, 1.5);
    const PopulationVector p0 = {1.0, 0.0};
    const PopulationVector p1 = evolve(p0, m, 1.0);
    CHECK(p1[0] == doctest::Approx(0.7838338208091532).epsilon(1e-11));
    CHECK(p1[1] == doctest::Approx(1.0 - 0.7838338208091532).epsilon(1e-11));
    CHECK(p1[0] + p1[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("two-state occupation time integral hits the closed form") {
    // int_0^1 p0(s) ds = 3/4 + (1/8)(1 - e^-2)
    const RateMatrix m = two_state(0.5, 1.5);
    const PopulationVector p0 = {1.0, 0.0};
    const StepResult r = evolve_step(p0, m, 1.0);
    CHECK(r.next[0] == doctest::Approx(0.7838338208091532).epsilon(1e-11));
    CHECK(r.time_integral[0] == doctest::Approx(0.8580830895954235).epsilon(1e-11));
    CHECK(r.time_integral[0] + r.time_integral[1] == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("exact flux tally equals rate times occupation time") {
    const RateMatrix m = two_state(0.5, 1.5);
    const PopulationVector p0 = {1.0, 0.0};
    const StepResult r = evolve_step(p0, m, 1.0);
    FluxCounters fc;
    accumulate_fluxes(r.time_integral, m, fc);
    // only the 0 -> 1 channel is tagged, so n_e = 0.5 * int p0
    CHECK(fc.n_e == doctest::Approx(0.5 * 0.8580830895954235).epsilon(1e-11));
    CHECK(fc.N_p == 0.0);
    CHECK(fc.N_n == 0.0);
}

TEST_CASE("trapezoidal flux overload implements its endpoint formula") {
    const RateMatrix m = two_state(0.5, 1.5);
    const PopulationVector pre = {1.0, 0.0};
    const PopulationVector post = evolve(pre, m, 1.0);
    FluxCounters fc;
    accumulate_fluxes(pre, post, m, 1.0, fc);
    CHECK(fc.n_e == 0.5 * 0.5 * (pre[0] + post[0]) * 1.0);
    // and for a tiny step the two quadratures agree to O(dt^2)
    const StepResult r = evolve_step(pre, m, 1e-5);
    FluxCounters exact, trap;
    accumulate_fluxes(r.time_integral, m, exact);
    accumulate_fluxes(pre, r.next, m, 1e-5, trap);
    CHECK(exact.n_e == doctest::Approx(trap.n_e).epsilon(1e-9));
}

TEST_CASE("degenerate steps and bad inputs") {
    const RateMatrix m = two_state(0.5, 1.5);
    const PopulationVector p0 = {0.25, 0.75};
    SUBCASE("dt = 0 returns the input and a zero integral") {
        const StepResult r = evolve_step(p0, m, 0.0);
        CHECK(r.next == p0);
        CHECK(r.time_integral[0] == 0.0);
        CHECK(r.time_integral[1] == 0.0);
    }
    SUBCASE("negative dt throws") {
        CHECK_THROWS_AS((void)evolve(p0, m, -1e-9), std::invalid_argument);
    }
    SUBCASE("denormalized input throws") {
        CHECK_THROWS_AS((void)evolve({0.6, 0.6}, m, 0.1), std::invalid_argument);
    }
    SUBCASE("dimension mismatch throws") {
        CHECK_THROWS_AS((void)evolve({0.5, 0.25, 0.25}, m, 0.1), std::invalid_argument);
    }
    SUBCASE("zero generator is the identity with a linear integral") {
        RateMatrix z(2, {Channel{ChannelKind::Marcus, 0, 0, 0, 0, 0, 0, 1, 0.0}});
        const StepResult r = evolve_step(p0, z, 0.7);
        CHECK(r.next == p0);
        CHECK(r.time_integral[0] == doctest::Approx(0.25 * 0.7).epsilon(1e-14));
        CHECK(r.time_integral[1] == doctest::Approx(0.75 * 0.7).epsilon(1e-14));
    }
}

TEST_CASE("uniformization matches the dense exponential on random generators") {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        const double scale = (trial % 2 == 0) ? 1.0 : 300.0;
        const RateMatrix m = random_generator(rng, 16, scale);
        const PopulationVector p0 = random_population(rng, 16);
        const double dt = (trial % 2 == 0) ? 0.8 : 0.03;
        const PopulationVector got = evolve(p0, m, dt);
        const Eigen::MatrixXd prop = dense_expm_reference(m, dt);
        for (int i = 0; i < 16; ++i) {
            double want = 0.0;
            for (int j = 0; j < 16; ++j) want += prop(i, j) * p0[static_cast<unsigned>(j)];
            worst = std::max(worst, std::abs(got[static_cast<unsigned>(i)] - want));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("occupation time integral matches the block-matrix exponential") {
    // exp([[L, I], [0, 0]] t) has int_0^t exp(L s) ds as its upper-right
    // block, an oracle fully independent of the Poisson-tail bookkeeping
    std::mt19937_64 rng(131);
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
        const double scale = (trial % 3 == 0) ? 400.0 : 2.0;
        const RateMatrix m = random_generator(rng, 16, scale);
        const PopulationVector p0 = random_population(rng, 16);
        const double dt = (trial % 3 == 0) ? 0.02 : 0.6;
        const StepResult r = evolve_step(p0, m, dt);
        Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(32, 32);
        aug.topLeftCorner(16, 16) = to_eigen(m);
        aug.topRightCorner(16, 16) = Eigen::MatrixXd::Identity(16, 16);
        const Eigen::MatrixXd block = dense_expm(aug * dt).topRightCorner(16, 16);
        for (int i = 0; i < 16; ++i) {
            double want = 0.0;
            for (int j = 0; j < 16; ++j) want += block(i, j) * p0[static_cast<unsigned>(j)];
            worst = std::max(worst, std::abs(r.time_integral[static_cast<unsigned>(i)] - want));
        }
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("occupation time integral is additive over split steps") {
    std::mt19937_64 rng(151);
    const RateMatrix m = random_generator(rng, 16, 5.0);
    const PopulationVector p0 = random_population(rng, 16);
    const StepResult whole = evolve_step(p0, m, 0.3);
    const StepResult first = evolve_step(p0, m, 0.12);
    const StepResult second = evolve_step(first.next, m, 0.18);
    for (int i = 0; i < 16; ++i) {
        const auto u = static_cast<unsigned>(i);
        CHECK(whole.time_integral[u] ==
              doctest::Approx(first.time_integral[u] + second.time_integral[u]).epsilon(1e-9));
    }
}

TEST_CASE("full model: one-shot agreement with the dense exponential") {
    const ModelParams p;
    const RateMatrix m = build_generator(0.7, p);
    const PopulationVector p0 = basis_population(0xA0);
    for (double dt : {1e-3, 0.05}) {
        const PopulationVector got = evolve(p0, m, dt);
        const Eigen::MatrixXd prop = dense_expm_reference(m, dt);
        double worst = 0.0;
        for (int i = 0; i < kNumStates; ++i)
            worst = std::max(worst, std::abs(got[static_cast<unsigned>(i)] - prop(i, 0xA0)));
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("positivity and norm conservation over many steps") {
    const ModelParams params;
    const RateMatrix m = build_generator(-1.1, params);
    PopulationVector p = basis_population(0);
    for (int step = 0; step < 1000; ++step) {
        p = evolve(p, m, 1e-3);
        for (double v : p) CHECK(v >= 0.0);
    }
    double norm = 0.0;
    for (double v : p) norm += v;
    CHECK(std::abs(norm - 1.0) <= 1e-10);
}

TEST_CASE("propagation is a semigroup") {
    std::mt19937_64 rng(171);
    const RateMatrix m = random_generator(rng, 16, 10.0);
    const PopulationVector p0 = random_population(rng, 16);
    const PopulationVector ab = evolve(evolve(p0, m, 0.07), m, 0.13);
    const PopulationVector whole = evolve(p0, m, 0.2);
    for (int i = 0; i < 16; ++i)
        CHECK(ab[static_cast<unsigned>(i)] ==
              doctest::Approx(whole[static_cast<unsigned>(i)]).epsilon(1e-10));
}

TEST_CASE("counters track population changes exactly on the full model") {
    std::mt19937_64 rng(191);
    ModelParams p;
    p.gamma_Fd = 0.0; // every electron crossing is a Pc exchange, so the
                      // delivered-electron counter mirrors the total count
    GeneratorBuilder builder(p);
    builder.update_position(-1.2);
    const PopulationVector pre = random_population(rng, kNumStates);
    const StepResult r = evolve_step(pre, builder.matrix(), 1e-3);
    FluxCounters fc;
    accumulate_fluxes(r.time_integral, builder.matrix(), fc);
    double d_protons = 0.0, d_electrons = 0.0;
    for (int s = 0; s < kNumStates; ++s) {
        const double dp = r.next[static_cast<unsigned>(s)] - pre[static_cast<unsigned>(s)];
        d_protons += dp * proton_count(s);
        d_electrons += dp * electron_count(s);
    }
    CHECK(std::abs(d_protons - (fc.N_n - fc.N_p)) <= 1e-11);
    CHECK(std::abs(d_electrons + fc.n_e) <= 1e-11);
    // and the integral itself integrates to dt
    double total = 0.0;
    for (double v : r.time_integral) total += v;
    CHECK(total == doctest::Approx(1e-3).epsilon(1e-10));
}
