#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qcycle/params.hpp"
#include "qcycle/rate_matrix.hpp"
#include "qcycle/rates.hpp"
#include "qcycle/state_space.hpp"

namespace qcycle {

/// Assembles the Pauli generator for a given shuttle position and keeps the
/// channel skeleton cached so a trajectory can refresh rates in place every
/// timestep without reallocating.
///
/// Channel order is fixed and deterministic: electron reservoir channels
/// (Fd at site A, then Pc at site B), then Marcus channels pair by pair,
/// then proton channels side by side. Within a group, states are scanned in
/// increasing index order.
class GeneratorBuilder {
  public:
    explicit GeneratorBuilder(const ModelParams& p);

    /// Recompute every position-dependent rate for shuttle position x.
    void update_position(double x);

    const RateMatrix& matrix() const { return matrix_; }
    const ModelParams& params() const { return params_; }
    const StateTable& states() const { return table_; }
    double position() const { return x_; }

  private:
    struct PairConstants {
        double lambda;
        double inv_four_lambda_t;
        double prefactor; // hbar_inv * sqrt(pi / (lambda T))
        int profile_site; // SiteId of the fixed partner, -1 for the heme pair
    };

    ModelParams params_;
    StateTable table_;
    std::vector<double> rates_;

    // Marcus channels, indexed relative to marcus_offset_
    std::vector<double> m_dbase_;
    std::vector<double> m_dcoeff_;
    std::vector<std::uint8_t> m_pair_;
    std::array<PairConstants, 9> pairs_{};

    // proton channels, indexed relative to proton_offset_; the gap is always
    // stored for the proton-addition direction
    std::vector<double> p_add_dbase_;
    std::vector<double> p_add_dcoeff_;
    std::vector<std::uint8_t> p_side_; // 0 = N, 1 = P
    std::vector<std::uint8_t> p_uptake_;

    std::size_t marcus_offset_ = 0;
    std::size_t proton_offset_ = 0;

    RateMatrix matrix_;
    double x_ = 0.0;

    RateMatrix assemble_skeleton();
};

/// One-shot assembly of the generator at position x.
RateMatrix build_generator(double x, const ModelParams& p);

} // namespace qcycle
