#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qcycle {

enum class ChannelKind : std::uint8_t { ElectronReservoir, Marcus, ProtonReservoir };

/// One directed transition between basis states. Rates are in us^-1.
/// endpoint_a/endpoint_b identify what moved:
///   Marcus:            source site id, destination site id
///   ElectronReservoir: reservoir (0 = Fd, 1 = Pc), site id
///   ProtonReservoir:   side (0 = N, 1 = P), proton site id
/// Flux tags count, per hop, the contribution to the transported totals:
/// d_ne electrons delivered Fd -> Pc chain, d_np protons released to the P
/// side, d_nn protons taken up from the N side.
struct Channel {
    ChannelKind kind;
    std::int8_t endpoint_a;
    std::int8_t endpoint_b;
    std::int8_t d_ne;
    std::int8_t d_np;
    std::int8_t d_nn;
    std::uint8_t from_state;
    std::uint8_t to_state;
    double rate;
};

/// Sparse Markov generator in channel form. Column sums vanish by
/// construction: every channel contributes +rate off-diagonal and -rate to
/// the diagonal of its source column.
class RateMatrix {
  public:
    RateMatrix(int dim, std::vector<Channel> channels);

    int dim() const { return dim_; }
    const std::vector<Channel>& channels() const { return channels_; }

    /// Overwrite all channel rates (same order as channels()) and refresh
    /// the cached exit rates. Rates must be non-negative.
    void update_rates(std::span<const double> rates);

    /// out = L * p
    void apply(std::span<const double> p, std::span<double> out) const;

    /// max_i |L_ii|, the uniformization bound.
    double max_exit_rate() const;

    /// Total exit rate -L_ii per state.
    const std::vector<double>& exit_rates() const { return exit_rate_; }

    /// Dense row-major dim x dim copy, for reference propagators and tests.
    std::vector<double> to_dense() const;

  private:
    void rebuild_exit_rates();

    int dim_;
    std::vector<Channel> channels_;
    std::vector<double> exit_rate_;
};

} // namespace qcycle
