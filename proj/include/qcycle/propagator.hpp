#pragma once

#include <Eigen/Dense>

#include "qcycle/rate_matrix.hpp"
#include "qcycle/state_space.hpp"

namespace qcycle {

/// Net transported totals accumulated along a trajectory: electrons
/// delivered to the Pc reservoir, protons released to the P side, protons
/// taken up from the N side.
struct FluxCounters {
    double n_e = 0.0;
    double N_p = 0.0;
    double N_n = 0.0;
};

/// Propagate exp(L dt) p by uniformization: with nu = 1.1 * max_i |L_ii|
/// the series sum_k Poisson(k; nu dt) M^k p, M = I + L/nu, has only
/// non-negative terms, so positivity is exact. The series is truncated once
/// the accumulated Poisson mass reaches 1 - 1e-12 and the result is
/// rescaled by that mass, which keeps sum(p) = 1 to machine precision over
/// arbitrarily many steps. Long intervals are split so nu*dt stays modest.
///
/// Throws std::invalid_argument for dt < 0 or when the input drifts from
/// normalization by more than 1e-6.
PopulationVector evolve(const PopulationVector& p, const RateMatrix& rates, double dt);

/// One propagation step together with the exact time integral of the
/// populations over the step, int_0^dt p_i(s) ds. The integral reuses the
/// same series terms weighted by Poisson tail probabilities
/// (int_0^dt Pois(k; nu s) ds = P(N > k) / nu at mean nu dt), so it costs
/// one extra accumulation per term and inherits the 1e-12 truncation.
/// sum_i time_integral[i] = dt up to that truncation.
struct StepResult {
    PopulationVector next;
    PopulationVector time_integral;
};
StepResult evolve_step(const PopulationVector& p, const RateMatrix& rates, double dt);

/// Dense Pade-13 scaling-and-squaring exponential of an arbitrary square
/// matrix (the argument is the full exponent, already scaled by time).
Eigen::MatrixXd dense_expm(const Eigen::MatrixXd& exponent);

/// Dense exp(L t) via Pade-13 scaling and squaring, as an independent
/// cross-check of evolve(). Column-stochastic up to roundoff. Throws for
/// t < 0.
Eigen::MatrixXd dense_expm_reference(const RateMatrix& rates, double t);

/// Exact flux tally over one step: every tagged channel contributes
/// tag * rate * int_0^dt p_from(s) ds to its counter, with the integral
/// taken from evolve_step. This keeps the counters exact quadratures of
/// the probability current even when rate * dt is of order one.
void accumulate_fluxes(const PopulationVector& time_integral, const RateMatrix& rates,
                       FluxCounters& counters);

/// Trapezoidal fallback for callers that only hold the endpoint
/// populations: adds tag * rate * (pre[from] + post[from])/2 * dt, an
/// O(dt^2) approximation of the exact tally above. Production trajectories
/// use the exact form; this one exists for generic pre/post pairs.
void accumulate_fluxes(const PopulationVector& pre, const PopulationVector& post,
                       const RateMatrix& rates, double dt, FluxCounters& counters);

} // namespace qcycle
