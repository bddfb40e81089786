#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcycle/state_space.hpp"

using namespace qcycle;

namespace {

// Independent term-by-term recomputation of the basis-state energy, written
// against the physical definition rather than the production code path:
// on-site energies, on-shuttle Coulomb repulsion, electron-proton
// attraction, heme-heme repulsion, and the surface potential acting on the
// net shuttle charge.
double oracle_energy(int s, double x, const ModelParams& p) {
    const int n1 = (s >> 0) & 1, n2 = (s >> 1) & 1;
    const int N1 = (s >> 2) & 1, N2 = (s >> 3) & 1;
    const int nL = (s >> 4) & 1, nH = (s >> 5) & 1;
    const int nA = (s >> 6) & 1, nB = (s >> 7) & 1;
    const double v = -(x - p.x0) / (2.0 * p.x0) * p.V_N - (x + p.x0) / (2.0 * p.x0) * p.V_P;
    double w = 0.0;
    w += p.eps_Q0 * (n1 + n2) + p.E_Q0 * (N1 + N2);
    w += p.U_ee * (n1 * n2) + p.U_pp * (N1 * N2);
    w -= p.U_ep * (n1 + n2) * (N1 + N2);
    w += p.eps_L_prime * nL + p.eps_H_prime * nH + p.eps_A_prime * nA + p.eps_B_prime * nB;
    w += p.U_LH * (nL * nH);
    w += v * ((N1 + N2) - (n1 + n2));
    return w;
}

} // namespace

TEST_CASE("occupation bit layout round trips") {
    for (int s = 0; s < kNumStates; ++s) {
        int rebuilt = 0;
        for (int b = 0; b < kNumSites; ++b)
            rebuilt |= occupancy(s, static_cast<SiteId>(b)) << b;
        CHECK(rebuilt == s);
    }
    CHECK(occupancy(0xA0, SiteId::HemeH) == 1);
    CHECK(occupancy(0xA0, SiteId::SiteB) == 1);
    CHECK(occupancy(0xA0, SiteId::HemeL) == 0);
}

TEST_CASE("particle counts split electrons and protons") {
    CHECK(electron_count(0xFF) == 6);
    CHECK(proton_count(0xFF) == 2);
    CHECK(electron_count(0x0C) == 0);
    CHECK(proton_count(0x0C) == 2);
    CHECK(shuttle_electron_count(0xF3) == 2);
    CHECK(shuttle_proton_count(0xF3) == 0);
    for (int s = 0; s < kNumStates; ++s)
        CHECK(electron_count(s) + proton_count(s) == __builtin_popcount(static_cast<unsigned>(s)));
}

TEST_CASE("surface potential hits the pinned endpoint values") {
    const ModelParams p;
    CHECK(surface_potential(-2.0, p) == doctest::Approx(120.0).epsilon(1e-14));
    CHECK(surface_potential(2.0, p) == doctest::Approx(-140.0).epsilon(1e-14));
    CHECK(surface_potential(0.0, p) == doctest::Approx(-10.0).epsilon(1e-14));
    // linearity: midpoint average equals the value at the midpoint
    const double a = surface_potential(-1.3, p), b = surface_potential(0.7, p);
    CHECK(surface_potential(-0.3, p) == doctest::Approx(0.5 * (a + b)).epsilon(1e-14));
}

TEST_CASE("state energies match the independent term-by-term oracle") {
    const ModelParams p;
    for (double x : {-2.0, -0.7, 0.0, 0.37, 1.3, 2.0}) {
        for (int s = 0; s < kNumStates; ++s) {
            CHECK(state_energy(s, x, p) ==
                  doctest::Approx(oracle_energy(s, x, p)).epsilon(1e-12));
        }
    }
    // fully loaded shuttle: 2*280 + 2*822 + 305 + 76.3 - 4*610, neutral so
    // position independent
    CHECK(state_energy_base(0x0F, p) == doctest::Approx(145.3).epsilon(1e-12));
    CHECK(state_energy(0x0F, -2.0, p) == doctest::Approx(state_energy(0x0F, 2.0, p)));
}

TEST_CASE("surface charge coefficient is protons minus electrons on the shuttle") {
    CHECK(surface_charge_coefficient(0x0F) == 0);
    CHECK(surface_charge_coefficient(0x03) == -2);
    CHECK(surface_charge_coefficient(0x0C) == 2);
    CHECK(surface_charge_coefficient(0xF0) == 0); // fixed sites carry no coefficient
    for (int s = 0; s < kNumStates; ++s)
        CHECK(surface_charge_coefficient(s) ==
              shuttle_proton_count(s) - shuttle_electron_count(s));
}

TEST_CASE("StateTable reproduces state_energy at arbitrary positions") {
    const ModelParams p;
    const StateTable table(p);
    for (double x : {-1.9, 0.0, 1.1}) {
        const double v = surface_potential(x, p);
        for (int s = 0; s < kNumStates; ++s)
            CHECK(table.energy(s, v) == doctest::Approx(state_energy(s, x, p)).epsilon(1e-13));
    }
}

TEST_CASE("basis_population is a delta distribution") {
    const PopulationVector pop = basis_population(0xA0);
    CHECK(pop.size() == kNumStates);
    double sum = 0.0;
    for (double v : pop) sum += v;
    CHECK(sum == 1.0);
    CHECK(pop[0xA0] == 1.0);
    CHECK_THROWS_AS((void)basis_population(-1), std::out_of_range);
    CHECK_THROWS_AS((void)basis_population(256), std::out_of_range);
}

TEST_CASE("site_occupation and shuttle_charge_sq on mixtures") {
    PopulationVector pop(kNumStates, 0.0);
    pop[0x03] = 0.5; // two shuttle electrons: charge -2, q^2 = 4
    pop[0x0C] = 0.5; // two shuttle protons: charge +2, q^2 = 4
    CHECK(site_occupation(pop, SiteId::ShuttleE1) == 0.5);
    CHECK(site_occupation(pop, SiteId::ShuttleP2) == 0.5);
    CHECK(site_occupation(pop, SiteId::HemeL) == 0.0);
    CHECK(shuttle_charge_sq(pop) == 4.0);

    PopulationVector mix(kNumStates, 0.0);
    mix[0x00] = 0.5;  // neutral
    mix[0x05] = 0.5;  // one electron + one proton: neutral
    CHECK(shuttle_charge_sq(mix) == 0.0);
}

TEST_CASE("parameter domain checks reject nonsense") {
    ModelParams p;
    p.T = -1.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = ModelParams{};
    p.lambda_LH = 0.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = ModelParams{};
    p.initial_state = 256;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = ModelParams{};
    p.initial_x = 100.0;
    CHECK_THROWS_AS(p.check(), std::invalid_argument);
    p = ModelParams{};
    CHECK_NOTHROW(p.check());
    CHECK(p.initial_state == 0xA0);
    CHECK(p.initial_x == -2.0);
}

TEST_CASE("set_surface_potential re-primes the fixed site energies") {
    ModelParams p;
    const double base_A = p.eps_A_prime + p.V_N; // 585
    const double base_B = p.eps_B_prime - p.V_P; // -635
    p.set_surface_potential(135.0, 115.0);
    CHECK(p.V_P == 135.0);
    CHECK(p.V_N == 115.0);
    CHECK(p.eps_A_prime == doctest::Approx(base_A - 115.0).epsilon(1e-13));
    CHECK(p.eps_B_prime == doctest::Approx(base_B + 135.0).epsilon(1e-13));
    // restoring the default pair restores the default primes
    p.set_surface_potential(140.0, 120.0);
    CHECK(p.eps_A_prime == doctest::Approx(465.0).epsilon(1e-13));
    CHECK(p.eps_B_prime == doctest::Approx(-495.0).epsilon(1e-13));
    CHECK(p.eps_L_prime == doctest::Approx(360.0).epsilon(1e-13));
    CHECK(p.eps_H_prime == doctest::Approx(220.0).epsilon(1e-13));
}

TEST_CASE("diffusion coefficient is T over zeta") {
    const ModelParams p;
    CHECK(p.diffusion() == 25.0 / 8.55);
}
