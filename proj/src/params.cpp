#include "qcycle/params.hpp"

#include <stdexcept>
#include <string>

namespace qcycle {

void ModelParams::set_surface_potential(double v_p, double v_n) {
    const double eps_A_base = eps_A_prime + V_N;
    const double eps_H_base = eps_H_prime + V_N;
    const double eps_B_base = eps_B_prime - V_P;
    const double eps_L_base = eps_L_prime - V_P;

    V_P = v_p;
    V_N = v_n;

    eps_A_prime = eps_A_base - V_N;
    eps_H_prime = eps_H_base - V_N;
    eps_B_prime = eps_B_base + V_P;
    eps_L_prime = eps_L_base + V_P;
}

void ModelParams::check() const {
    auto require_positive = [](double value, const char* name) {
        if (!(value > 0.0))
            throw std::invalid_argument(std::string(name) + " must be positive");
    };
    require_positive(T, "T");
    require_positive(lambda_AQ, "lambda_AQ");
    require_positive(lambda_BQ, "lambda_BQ");
    require_positive(lambda_LQ, "lambda_LQ");
    require_positive(lambda_HQ, "lambda_HQ");
    require_positive(lambda_LH, "lambda_LH");
    require_positive(zeta, "zeta");
    require_positive(x0, "x0");
    require_positive(l_e, "l_e");
    require_positive(l_p, "l_p");
    require_positive(x_w, "x_w");
    require_positive(l_w, "l_w");
    require_positive(x_ch, "x_ch");
    require_positive(l_ch, "l_ch");
    require_positive(dt, "dt");
    if (gamma_Fd < 0.0 || gamma_Pc < 0.0 || Gamma_N < 0.0 || Gamma_P < 0.0)
        throw std::invalid_argument("reservoir couplings must be non-negative");
    if (initial_state < 0 || initial_state > 255)
        throw std::invalid_argument("initial_state must be a Fock index in [0, 255]");
    if (!(initial_x > -(x_w + 6.0 * l_w) && initial_x < x_w + 6.0 * l_w))
        throw std::invalid_argument("initial_x must lie inside the confining walls");
}

} // namespace qcycle
