#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcycle/params.hpp"

namespace qcycle {

// Eight two-level sites; a basis state is the 8-bit occupation word below.
// Bit order (LSB first):
//   0,1  shuttle electron sites
//   2,3  shuttle proton sites
//   4    heme L (P side)
//   5    heme H (N side)
//   6    site A (N-side electron entry)
//   7    site B (P-side electron exit)
enum class SiteId : int {
    ShuttleE1 = 0,
    ShuttleE2 = 1,
    ShuttleP1 = 2,
    ShuttleP2 = 3,
    HemeL = 4,
    HemeH = 5,
    SiteA = 6,
    SiteB = 7,
};

inline constexpr int kNumSites = 8;
inline constexpr int kNumStates = 256;

inline constexpr unsigned kElectronMask = 0xF3; // bits 0,1,4,5,6,7
inline constexpr unsigned kProtonMask = 0x0C;   // bits 2,3
inline constexpr unsigned kShuttleElectronMask = 0x03;
inline constexpr unsigned kShuttleProtonMask = 0x0C;

inline int occupancy(int state, SiteId site) {
    return (state >> static_cast<int>(site)) & 1;
}

inline int electron_count(int state) {
    return __builtin_popcount(static_cast<unsigned>(state) & kElectronMask);
}

inline int proton_count(int state) {
    return __builtin_popcount(static_cast<unsigned>(state) & kProtonMask);
}

inline int shuttle_electron_count(int state) {
    return __builtin_popcount(static_cast<unsigned>(state) & kShuttleElectronMask);
}

inline int shuttle_proton_count(int state) {
    return __builtin_popcount(static_cast<unsigned>(state) & kShuttleProtonMask);
}

/// Linear surface potential between the charged membrane faces:
/// V(-x0) = +V_N, V(+x0) = -V_P.
double surface_potential(double x, const ModelParams& p);

/// Position-independent part of the basis-state energy (meV).
double state_energy_base(int state, const ModelParams& p);

/// d omega / dV for a basis state: shuttle protons minus shuttle electrons.
/// The full energy is state_energy_base + V(x) * this.
int surface_charge_coefficient(int state);

/// Energy of a basis state with the shuttle at position x (meV).
double state_energy(int state, double x, const ModelParams& p);

using PopulationVector = std::vector<double>;

/// Delta distribution on one basis state.
PopulationVector basis_population(int state);

/// Ensemble occupation of one site, sum_i P_i * n_site(i).
double site_occupation(const PopulationVector& pop, SiteId site);

/// Ensemble mean of the squared shuttle charge (n1+n2-N1-N2)^2. This is
/// what the charge barrier couples to in the Langevin step.
double shuttle_charge_sq(const PopulationVector& pop);

/// Energies split into the x-independent base and the surface-potential
/// coefficient, precomputed for all 256 states.
struct StateTable {
    std::array<double, kNumStates> base{};
    std::array<double, kNumStates> charge_coeff{};

    explicit StateTable(const ModelParams& p);

    double energy(int state, double v_surface) const {
        return base[static_cast<unsigned>(state)] +
               v_surface * charge_coeff[static_cast<unsigned>(state)];
    }
};

} // namespace qcycle
