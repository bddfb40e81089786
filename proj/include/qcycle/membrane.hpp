#pragma once

#include "qcycle/params.hpp"

namespace qcycle {

struct PotentialValue {
    double value;      // meV
    double derivative; // meV/nm
};

/// Confining wall potential: ~0 inside |x| < x_w, rising to U_w0 over width
/// l_w beyond either wall. Keeps the shuttle inside the membrane.
PotentialValue confinement_potential(double x, const ModelParams& p);

/// Charge barrier: ~U_ch0 on the central plateau |x| < x_ch, falling to 0
/// over width l_ch. A shuttle with net charge q pays q^2 times this, which
/// blocks charged crossings while letting the neutral shuttle diffuse.
PotentialValue charge_barrier(double x, const ModelParams& p);

/// One overdamped Langevin update of the shuttle position:
///   x' = x + dt/zeta * (-U_w'(x) - q_sq * U_ch'(x)) + sqrt(2 T dt / zeta) * xi
/// where xi is the caller-supplied standard normal draw and q_sq the
/// ensemble mean squared shuttle charge.
double langevin_step(double x, double q_sq, const ModelParams& p, double normal_draw);

} // namespace qcycle
