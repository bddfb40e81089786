#include "qcycle/state_space.hpp"

#include <stdexcept>

namespace qcycle {

double surface_potential(double x, const ModelParams& p) {
    return -(x - p.x0) / (2.0 * p.x0) * p.V_N - (x + p.x0) / (2.0 * p.x0) * p.V_P;
}

double state_energy_base(int state, const ModelParams& p) {
    const int n1 = occupancy(state, SiteId::ShuttleE1);
    const int n2 = occupancy(state, SiteId::ShuttleE2);
    const int N1 = occupancy(state, SiteId::ShuttleP1);
    const int N2 = occupancy(state, SiteId::ShuttleP2);
    const int nL = occupancy(state, SiteId::HemeL);
    const int nH = occupancy(state, SiteId::HemeH);
    const int nA = occupancy(state, SiteId::SiteA);
    const int nB = occupancy(state, SiteId::SiteB);

    double omega = p.eps_Q0 * (n1 + n2) + p.E_Q0 * (N1 + N2);
    omega += p.U_ee * n1 * n2 + p.U_pp * N1 * N2;
    omega -= p.U_ep * (n1 + n2) * (N1 + N2);
    omega += p.eps_L_prime * nL + p.eps_H_prime * nH + p.U_LH * nL * nH;
    omega += p.eps_A_prime * nA + p.eps_B_prime * nB;
    return omega;
}

int surface_charge_coefficient(int state) {
    return shuttle_proton_count(state) - shuttle_electron_count(state);
}

double state_energy(int state, double x, const ModelParams& p) {
    return state_energy_base(state, p) +
           surface_potential(x, p) * surface_charge_coefficient(state);
}

PopulationVector basis_population(int state) {
    if (state < 0 || state >= kNumStates)
        throw std::out_of_range("basis state index out of range");
    PopulationVector pop(kNumStates, 0.0);
    pop[static_cast<unsigned>(state)] = 1.0;
    return pop;
}

double site_occupation(const PopulationVector& pop, SiteId site) {
    double acc = 0.0;
    for (int s = 0; s < kNumStates; ++s)
        acc += pop[static_cast<unsigned>(s)] * occupancy(s, site);
    return acc;
}

double shuttle_charge_sq(const PopulationVector& pop) {
    double acc = 0.0;
    for (int s = 0; s < kNumStates; ++s) {
        const int q = shuttle_electron_count(s) - shuttle_proton_count(s);
        acc += pop[static_cast<unsigned>(s)] * q * q;
    }
    return acc;
}

StateTable::StateTable(const ModelParams& p) {
    for (int s = 0; s < kNumStates; ++s) {
        base[static_cast<unsigned>(s)] = state_energy_base(s, p);
        charge_coeff[static_cast<unsigned>(s)] = surface_charge_coefficient(s);
    }
}

} // namespace qcycle
