#pragma once

#include "qcycle/params.hpp"
#include "qcycle/state_space.hpp"

namespace qcycle {

enum class Side { N, P };

/// Fermi-Dirac occupation 1/(exp((eps-mu)/T)+1), overflow-safe.
/// Throws std::invalid_argument for T <= 0.
double fermi_occupation(double eps, double T, double mu);

/// Occupation and hole factor together. hole is the stable evaluation of
/// 1 - occ, exact even when occ is within an ulp of 1.
struct FermiPair {
    double occ;
    double hole;
};
FermiPair fermi_pair(double eps, double T, double mu);

/// Marcus golden-rule factor without the tunneling amplitude (meV^-1 units
/// absorbed): sqrt(pi/(lambda T)) * exp(-(lambda + d_omega)^2 / (4 lambda T)).
/// The full rate in meV is delta^2 times this; callers multiply by
/// kHbarInvUsPerMev for us^-1. d_omega is the energy of the final state
/// minus the initial one. Throws for lambda <= 0 or T <= 0.
double marcus_factor(double d_omega, double lambda, double T);

/// Electron transfer rate in meV between two states separated by d_omega.
double marcus_rate(double d_omega, double lambda, double T, double delta);

/// Distance-decayed tunneling amplitude between the shuttle and one of the
/// four fixed electron sites. L and B sit at +x0, H and A at -x0.
double coupling_profile(SiteId site, double x, const ModelParams& p);

/// Distance-decayed proton exchange rate Gamma_side * exp(-|x - x_side|/l_p)
/// in meV; the N side sits at -x0, the P side at +x0.
double proton_rate_profile(Side side, double x, const ModelParams& p);

} // namespace qcycle
