#include "qcycle/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcycle {

namespace {

// Largest Poisson mean handled in a single uniformization pass. Larger
// intervals are split into substeps; this bounds both the series length
// and the dynamic range of the weights.
constexpr double kMaxPoissonMean = 200.0;
constexpr double kTailTolerance = 1e-12;

void check_normalized(const PopulationVector& p) {
    double norm = 0.0;
    for (double v : p) norm += v;
    if (std::abs(norm - 1.0) > 1e-6)
        throw std::invalid_argument("evolve: population vector is not normalized");
}

// One uniformization substep with Poisson mean a = nu * dt_sub. Overwrites
// `out` with exp(L dt_sub) p and, when `integral` is non-null, adds
// int_0^{dt_sub} p(s) ds to it. The integral reuses the same series terms
// weighted by the survival probabilities tail_k = P(N > k), since
// int_0^{dt} Pois(k; nu s) nu ds integrates to exactly that tail. The tail
// is downdated from 1 alongside the forward mass; the subtraction loses
// relative accuracy only on terms whose absolute contribution is already
// below the truncation tolerance.
void uniform_step(const PopulationVector& p, const RateMatrix& rates, double nu,
                  double a, PopulationVector& out, PopulationVector& term,
                  PopulationVector& scratch, PopulationVector* integral) {
    const std::size_t n = p.size();
    term = p;
    double weight = std::exp(-a);
    double mass = weight;
    double tail = 1.0 - weight;
    const double inv_nu = 1.0 / nu;
    std::fill(out.begin(), out.end(), 0.0);
    const int k_max = 16 + static_cast<int>(a + 12.0 * std::sqrt(a + 1.0));
    for (int k = 0;; ++k) {
        for (std::size_t i = 0; i < n; ++i) out[i] += weight * term[i];
        if (integral) {
            const double w_int = std::max(tail, 0.0) * inv_nu;
            for (std::size_t i = 0; i < n; ++i) (*integral)[i] += w_int * term[i];
        }
        if (mass >= 1.0 - kTailTolerance || k >= k_max) break;
        rates.apply(term, scratch);
        for (std::size_t i = 0; i < n; ++i) term[i] += scratch[i] * inv_nu;
        weight *= a / (k + 1);
        mass += weight;
        tail -= weight;
    }
    const double inv_mass = 1.0 / mass;
    for (std::size_t i = 0; i < n; ++i) out[i] *= inv_mass;
}

void propagate(const PopulationVector& p, const RateMatrix& rates, double dt,
               PopulationVector& out, PopulationVector* integral) {
    if (!(dt >= 0.0)) throw std::invalid_argument("evolve: negative time step");
    if (static_cast<int>(p.size()) != rates.dim())
        throw std::invalid_argument("evolve: dimension mismatch");
    check_normalized(p);
    out = p;
    if (dt == 0.0) return;
    const double nu = 1.1 * rates.max_exit_rate();
    if (nu <= 0.0) {
        // Generator is identically zero; populations just sit still.
        if (integral)
            for (std::size_t i = 0; i < p.size(); ++i) (*integral)[i] += p[i] * dt;
        return;
    }
    const int substeps =
        std::max(1, static_cast<int>(std::ceil(nu * dt / kMaxPoissonMean)));
    const double dt_sub = dt / substeps;
    const double a = nu * dt_sub;
    PopulationVector cur = p;
    PopulationVector term(p.size()), scratch(p.size());
    for (int s = 0; s < substeps; ++s) {
        uniform_step(cur, rates, nu, a, out, term, scratch, integral);
        if (s + 1 < substeps) cur = out;
    }
}

}  // namespace

PopulationVector evolve(const PopulationVector& p, const RateMatrix& rates, double dt) {
    PopulationVector out(p.size());
    propagate(p, rates, dt, out, nullptr);
    return out;
}

StepResult evolve_step(const PopulationVector& p, const RateMatrix& rates, double dt) {
    StepResult r;
    r.next.resize(p.size());
    r.time_integral.assign(p.size(), 0.0);
    propagate(p, rates, dt, r.next, &r.time_integral);
    return r;
}

Eigen::MatrixXd dense_expm(const Eigen::MatrixXd& exponent) {
    // Pade-13 with scaling and squaring; standard coefficients.
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;
    const Eigen::Index n = exponent.rows();
    const double norm1 = exponent.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13)
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const Eigen::MatrixXd a = exponent / std::exp2(static_cast<double>(squarings));
    const Eigen::MatrixXd a2 = a * a;
    const Eigen::MatrixXd a4 = a2 * a2;
    const Eigen::MatrixXd a6 = a2 * a4;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
             b[3] * a2 + b[1] * id);
    Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                        b[4] * a4 + b[2] * a2 + b[0] * id;
    Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) r = r * r;
    return r;
}

Eigen::MatrixXd dense_expm_reference(const RateMatrix& rates, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("dense_expm_reference: negative time");
    const int n = rates.dim();
    const std::vector<double> dense = rates.to_dense();
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        l(dense.data(), n, n);
    return dense_expm(Eigen::MatrixXd(l) * t);
}

void accumulate_fluxes(const PopulationVector& time_integral, const RateMatrix& rates,
                       FluxCounters& counters) {
    for (const Channel& c : rates.channels()) {
        if (c.d_ne == 0 && c.d_np == 0 && c.d_nn == 0) continue;
        const double flow = c.rate * time_integral[c.from_state];
        counters.n_e += c.d_ne * flow;
        counters.N_p += c.d_np * flow;
        counters.N_n += c.d_nn * flow;
    }
}

void accumulate_fluxes(const PopulationVector& pre, const PopulationVector& post,
                       const RateMatrix& rates, double dt, FluxCounters& counters) {
    for (const Channel& c : rates.channels()) {
        if (c.d_ne == 0 && c.d_np == 0 && c.d_nn == 0) continue;
        const double flow = c.rate * 0.5 * (pre[c.from_state] + post[c.from_state]) * dt;
        counters.n_e += c.d_ne * flow;
        counters.N_p += c.d_np * flow;
        counters.N_n += c.d_nn * flow;
    }
}

}  // namespace qcycle
