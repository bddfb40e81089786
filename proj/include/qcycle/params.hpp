#pragma once

#include <cstdint>

namespace qcycle {

// Unit conventions: energies in meV, lengths in nm, time in us.
// Rates quoted in meV are converted to us^-1 with 1/hbar,
// hbar = 6.582e-7 meV us, so 1 meV corresponds to 1.5193 events/ps.
inline constexpr double kHbarInvUsPerMev = 1.5193e6; // us^-1 per meV
inline constexpr double kBoltzmannMevPerK = 0.08617; // meV/K
inline constexpr double kRoomTemperatureK = 298.0;

// How the proton-exchange Fermi factor reads the state-energy gap.
// Signed uses omega(with proton) - omega(without); Absolute uses |gap|.
enum class ProtonGapConvention { Signed, Absolute };

/// Full physical parameter set of the pump model. Defaults are the
/// canonical operating point used throughout the test suite.
struct ModelParams {
    // shuttle site energies (meV); position dependence enters through the
    // surface potential, see state_energy()
    double eps_Q0 = 280.0; // electron binding sites
    double E_Q0 = 822.0;   // proton binding sites

    // fixed-site energies, already shifted by the default surface potential
    double eps_L_prime = 360.0;
    double eps_H_prime = 220.0;
    double eps_A_prime = 465.0;
    double eps_B_prime = -495.0;

    // on-shuttle and heme-chain Coulomb terms (meV)
    double U_ee = 305.0;
    double U_pp = 76.30;
    double U_ep = 610.0;
    double U_LH = 240.0;

    // Marcus reorganization energies (meV), per connected site pair
    double lambda_AQ = 100.0;
    double lambda_BQ = 100.0;
    double lambda_LQ = 100.0;
    double lambda_HQ = 100.0;
    double lambda_LH = 250.0;

    // tunneling amplitudes at contact (meV)
    double Delta_AQ = 0.10;
    double Delta_BQ = 0.10;
    double Delta_LQ = 0.06;
    double Delta_HQ = 0.06;
    double Delta_LH = 0.10;

    // reservoir coupling rates (meV)
    double gamma_Fd = 1e-4;
    double gamma_Pc = 1e-4;
    double Gamma_N = 0.002;
    double Gamma_P = 0.002;

    // reservoir electrochemical potentials (meV)
    double mu_Fd = 410.0;
    double mu_Pc = -440.0;
    double mu_N = -75.0;
    double mu_P = 75.0;

    double T = 25.0; // temperature (meV)

    // surface potential extremes (meV)
    double V_P = 140.0;
    double V_N = 120.0;

    // confining and charge-barrier potentials (meV)
    double U_w0 = 500.0;
    double U_ch0 = 770.0;

    // lengths (nm)
    double x0 = 2.0;   // membrane half-thickness / contact positions
    double l_e = 0.25; // electron coupling decay length
    double l_p = 0.25; // proton exchange decay length
    double x_w = 2.70; // confining wall position
    double l_w = 0.10; // confining wall width
    double x_ch = 1.70; // charge barrier edge
    double l_ch = 0.05; // charge barrier width

    double zeta = 8.55; // drag coefficient (meV us / nm^2)
    double dt = 1e-3;   // integration timestep (us)

    ProtonGapConvention proton_gap_convention = ProtonGapConvention::Signed;

    // Trajectory initial condition: Fock basis state the populations start
    // in, and the shuttle's starting position. The default primes the pump
    // the way a turnover actually begins: the recycling electron parked on
    // heme H, site B holding the electron it trades with the Pc pool, the
    // shuttle empty and docked at the N-side contact. Starting from the
    // bare vacuum instead (initial_state = 0) adds a multi-hundred-us
    // dead time while the recycling stock builds up.
    int initial_state = 0xA0; // HemeH and SiteB occupied
    double initial_x = -2.0;  // N-side contact

    /// Shuttle diffusion coefficient D = T/zeta (nm^2/us).
    double diffusion() const { return T / zeta; }

    /// Change the surface potential extremes and re-shift the fixed-site
    /// energies accordingly. The unprimed bases are recovered from the
    /// current primed values and the current V pair, so at the default
    /// operating point the stored table stays authoritative.
    void set_surface_potential(double v_p, double v_n);

    /// Throws std::invalid_argument when a parameter is out of domain
    /// (T, lambdas, zeta, lengths, dt must be positive).
    void check() const;
};

} // namespace qcycle
