#include "qcycle/membrane.hpp"

#include <cmath>

namespace qcycle {

namespace {

// g(z) = 1/(exp(z)+1) without overflow for large |z|.
double logistic(double z) {
    if (z >= 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (std::exp(z) + 1.0);
}

// -g'(z) = g(z)(1-g(z)), even in z.
double logistic_slope(double z) {
    const double e = std::exp(-std::abs(z));
    const double d = 1.0 + e;
    return e / (d * d);
}

} // namespace

PotentialValue confinement_potential(double x, const ModelParams& p) {
    const double u = (x - p.x_w) / p.l_w;
    const double v = (x + p.x_w) / p.l_w;
    PotentialValue out;
    out.value = p.U_w0 * (1.0 - logistic(u) + logistic(v));
    out.derivative = p.U_w0 / p.l_w * (logistic_slope(u) - logistic_slope(v));
    return out;
}

PotentialValue charge_barrier(double x, const ModelParams& p) {
    const double u = (x - p.x_ch) / p.l_ch;
    const double v = (x + p.x_ch) / p.l_ch;
    PotentialValue out;
    out.value = p.U_ch0 * (logistic(u) - logistic(v));
    out.derivative = p.U_ch0 / p.l_ch * (logistic_slope(v) - logistic_slope(u));
    return out;
}

double langevin_step(double x, double q_sq, const ModelParams& p, double normal_draw) {
    const double force = -confinement_potential(x, p).derivative -
                         q_sq * charge_barrier(x, p).derivative;
    return x + p.dt / p.zeta * force +
           std::sqrt(2.0 * p.T * p.dt / p.zeta) * normal_draw;
}

} // namespace qcycle
