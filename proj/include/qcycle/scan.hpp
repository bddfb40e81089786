#pragma once

#include <cstdint>
#include <vector>

#include "qcycle/params.hpp"
#include "qcycle/trajectory.hpp"

namespace qcycle {

enum class ScanVariable { DeltaMu, DeltaV, Temperature };

/// How a temperature sweep re-derives the coupled parameters:
///   I    only T changes
///   II   the proton reservoir bias also follows a fixed pH difference
///   III  additionally the surface potential extremes scale with T
enum class TemperatureScheme { I = 1, II = 2, III = 3 };

struct ScanSpec {
    ScanVariable variable = ScanVariable::DeltaMu;
    std::vector<double> grid; // meV for bias scans, K for temperature scans
    TemperatureScheme scheme = TemperatureScheme::III;
    int trajectories = 6;
    double t_end = 100.0; // us
    double dt = 1e-3;     // us
    std::uint64_t master_seed = 1;
    int sample_every = 100;

    void check() const; // throws on an unusable spec
};

std::vector<double> default_grid(ScanVariable variable);

/// Proton electrochemical bias for a pH difference at temperature T_kelvin,
/// anchored to 60 meV per pH unit at 298 K and linear in T.
double delta_mu_from_ph(double delta_ph, double T_kelvin);

inline constexpr double kDefaultDeltaPh = 2.5;

/// Parameter set for one temperature-scan point.
ModelParams apply_scheme(TemperatureScheme scheme, double T_kelvin,
                         const ModelParams& base);

/// Parameter set for one scan point of any variable.
ModelParams scan_point_params(const ScanSpec& spec, double value,
                              const ModelParams& base);

struct FiguresOfMerit {
    double qy = 0.0;  // protons pumped per delivered electron, N_p / n_e
    double q = 0.0;   // pumping effectiveness, QY * N_p
    double eta = 0.0; // thermodynamic efficiency, (mu_P-mu_N)/(mu_Fd-mu_Pc) * QY
    bool defined = false;
};

/// Figures of merit from trajectory totals; undefined when n_e <= 0
/// (the NaN fields make that explicit downstream).
FiguresOfMerit figures_of_merit(double n_e, double N_p, const ModelParams& p);

struct ScanPoint {
    double param = 0.0;
    double qy_mean = 0.0, qy_std = 0.0;
    double ne_mean = 0.0, ne_std = 0.0;
    double np_mean = 0.0, np_std = 0.0;
    double q = 0.0;
    double eta = 0.0;
    bool qy_defined = false;
};

struct ScanResult {
    std::vector<ScanPoint> points;
};

/// Run the full scan: trajectories are distributed over worker threads
/// (threads = 0 picks the hardware count), but seeds depend only on
/// (master_seed, point index, trajectory index) and aggregation runs in a
/// fixed order, so the result is bit-identical for any thread count.
ScanResult run_scan(const ScanSpec& spec, const ModelParams& base, int threads = 0);

} // namespace qcycle
