#include "qcycle/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcycle {

double fermi_occupation(double eps, double T, double mu) {
    if (!(T > 0.0))
        throw std::invalid_argument("fermi_occupation: T must be positive");
    const double z = (eps - mu) / T;
    if (z >= 0.0) {
        const double e = std::exp(-z);
        return e / (1.0 + e);
    }
    return 1.0 / (std::exp(z) + 1.0);
}

FermiPair fermi_pair(double eps, double T, double mu) {
    if (!(T > 0.0))
        throw std::invalid_argument("fermi_pair: T must be positive");
    const double z = (eps - mu) / T;
    const double e = std::exp(-std::abs(z));
    const double small = e / (1.0 + e);
    const double large = 1.0 / (1.0 + e);
    return (z >= 0.0) ? FermiPair{small, large} : FermiPair{large, small};
}

double marcus_factor(double d_omega, double lambda, double T) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("marcus_factor: lambda must be positive");
    if (!(T > 0.0))
        throw std::invalid_argument("marcus_factor: T must be positive");
    const double a = lambda + d_omega;
    return std::sqrt(std::numbers::pi / (lambda * T)) *
           std::exp(-a * a / (4.0 * lambda * T));
}

double marcus_rate(double d_omega, double lambda, double T, double delta) {
    return delta * delta * marcus_factor(d_omega, lambda, T);
}

double coupling_profile(SiteId site, double x, const ModelParams& p) {
    double x_site = 0.0;
    double delta = 0.0;
    switch (site) {
    case SiteId::HemeL:
        x_site = p.x0;
        delta = p.Delta_LQ;
        break;
    case SiteId::SiteB:
        x_site = p.x0;
        delta = p.Delta_BQ;
        break;
    case SiteId::HemeH:
        x_site = -p.x0;
        delta = p.Delta_HQ;
        break;
    case SiteId::SiteA:
        x_site = -p.x0;
        delta = p.Delta_AQ;
        break;
    default:
        throw std::invalid_argument("coupling_profile: not a fixed electron site");
    }
    return delta * std::exp(-std::abs(x - x_site) / p.l_e);
}

double proton_rate_profile(Side side, double x, const ModelParams& p) {
    const double x_side = (side == Side::N) ? -p.x0 : p.x0;
    const double gamma = (side == Side::N) ? p.Gamma_N : p.Gamma_P;
    return gamma * std::exp(-std::abs(x - x_side) / p.l_p);
}

} // namespace qcycle
