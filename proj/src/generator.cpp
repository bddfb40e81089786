#include "qcycle/generator.hpp"

#include <cmath>
#include <numbers>

namespace qcycle {

namespace {

struct PairSpec {
    SiteId mobile;
    SiteId fixed;
    int profile_site; // -1 when the amplitude has no position dependence
};

// The nine connected electron pairs: each shuttle level couples to the four
// fixed sites, and the two hemes couple to each other.
constexpr std::array<PairSpec, 9> kPairs = {{
    {SiteId::ShuttleE1, SiteId::SiteA, static_cast<int>(SiteId::SiteA)},
    {SiteId::ShuttleE1, SiteId::SiteB, static_cast<int>(SiteId::SiteB)},
    {SiteId::ShuttleE1, SiteId::HemeL, static_cast<int>(SiteId::HemeL)},
    {SiteId::ShuttleE1, SiteId::HemeH, static_cast<int>(SiteId::HemeH)},
    {SiteId::ShuttleE2, SiteId::SiteA, static_cast<int>(SiteId::SiteA)},
    {SiteId::ShuttleE2, SiteId::SiteB, static_cast<int>(SiteId::SiteB)},
    {SiteId::ShuttleE2, SiteId::HemeL, static_cast<int>(SiteId::HemeL)},
    {SiteId::ShuttleE2, SiteId::HemeH, static_cast<int>(SiteId::HemeH)},
    {SiteId::HemeL, SiteId::HemeH, -1},
}};

} // namespace

GeneratorBuilder::GeneratorBuilder(const ModelParams& p)
    : params_(p), table_(p), matrix_(assemble_skeleton()) {
    update_position(0.0);
}

RateMatrix GeneratorBuilder::assemble_skeleton() {
    params_.check();
    std::vector<Channel> channels;
    channels.reserve(2688);

    auto add = [&](ChannelKind kind, int from, int to, int ea, int eb, int d_ne,
                   int d_np, int d_nn, double rate) {
        channels.push_back(Channel{kind, static_cast<std::int8_t>(ea),
                                   static_cast<std::int8_t>(eb),
                                   static_cast<std::int8_t>(d_ne),
                                   static_cast<std::int8_t>(d_np),
                                   static_cast<std::int8_t>(d_nn),
                                   static_cast<std::uint8_t>(from),
                                   static_cast<std::uint8_t>(to), rate});
    };

    // Electron reservoirs. Fd feeds site A, Pc drains site B; the rates are
    // position-independent, so they are final here. Only the Pc channels
    // carry the delivered-electron tag.
    struct ReservoirSpec {
        int id;
        SiteId site;
        double gamma;
        double mu;
        int tag;
    };
    const ReservoirSpec reservoirs[2] = {
        {0, SiteId::SiteA, params_.gamma_Fd, params_.mu_Fd, 0},
        {1, SiteId::SiteB, params_.gamma_Pc, params_.mu_Pc, 1},
    };
    for (const ReservoirSpec& r : reservoirs) {
        const double eps = (r.site == SiteId::SiteA) ? params_.eps_A_prime : params_.eps_B_prime;
        const FermiPair nbar = fermi_pair(eps, params_.T, r.mu);
        const double g = r.gamma * kHbarInvUsPerMev;
        const int bit = 1 << static_cast<int>(r.site);
        for (int s = 0; s < kNumStates; ++s) {
            if (!(s & bit))
                add(ChannelKind::ElectronReservoir, s, s | bit, r.id,
                    static_cast<int>(r.site), -r.tag, 0, 0, g * nbar.occ);
            else
                add(ChannelKind::ElectronReservoir, s, s & ~bit, r.id,
                    static_cast<int>(r.site), r.tag, 0, 0, g * nbar.hole);
        }
    }

    // Marcus channels: both hop directions for every pair, rates filled by
    // update_position.
    marcus_offset_ = channels.size();
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const PairSpec& spec = kPairs[k];
        const int bit_a = 1 << static_cast<int>(spec.mobile);
        const int bit_b = 1 << static_cast<int>(spec.fixed);
        for (int s = 0; s < kNumStates; ++s) {
            const bool occ_a = s & bit_a;
            const bool occ_b = s & bit_b;
            if (occ_a == occ_b)
                continue;
            const int to = s ^ (bit_a | bit_b);
            const int src = occ_a ? static_cast<int>(spec.mobile) : static_cast<int>(spec.fixed);
            const int dst = occ_a ? static_cast<int>(spec.fixed) : static_cast<int>(spec.mobile);
            add(ChannelKind::Marcus, s, to, src, dst, 0, 0, 0, 0.0);
            m_dbase_.push_back(table_.base[static_cast<unsigned>(to)] -
                               table_.base[static_cast<unsigned>(s)]);
            m_dcoeff_.push_back(table_.charge_coeff[static_cast<unsigned>(to)] -
                                table_.charge_coeff[static_cast<unsigned>(s)]);
            m_pair_.push_back(static_cast<std::uint8_t>(k));
        }
    }
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        double lambda = 0.0;
        switch (kPairs[k].fixed) {
        case SiteId::SiteA: lambda = params_.lambda_AQ; break;
        case SiteId::SiteB: lambda = params_.lambda_BQ; break;
        case SiteId::HemeL: lambda = params_.lambda_LQ; break;
        case SiteId::HemeH: lambda = (kPairs[k].mobile == SiteId::HemeL)
                                         ? params_.lambda_LH
                                         : params_.lambda_HQ; break;
        default: break;
        }
        pairs_[k].lambda = lambda;
        pairs_[k].inv_four_lambda_t = 1.0 / (4.0 * lambda * params_.T);
        pairs_[k].prefactor =
            kHbarInvUsPerMev * std::sqrt(std::numbers::pi / (lambda * params_.T));
        pairs_[k].profile_site = kPairs[k].profile_site;
    }

    // Proton exchange: each reservoir side talks to both shuttle proton
    // sites. The stored gap always refers to the proton-addition direction.
    proton_offset_ = channels.size();
    struct ProtonSpec {
        int side; // 0 = N, 1 = P
        SiteId site;
    };
    const ProtonSpec proton_specs[4] = {
        {0, SiteId::ShuttleP1},
        {0, SiteId::ShuttleP2},
        {1, SiteId::ShuttleP1},
        {1, SiteId::ShuttleP2},
    };
    for (const ProtonSpec& ps : proton_specs) {
        const int bit = 1 << static_cast<int>(ps.site);
        for (int s = 0; s < kNumStates; ++s) {
            const bool uptake = !(s & bit);
            const int to = uptake ? (s | bit) : (s & ~bit);
            const int with_p = uptake ? to : s;
            const int without_p = uptake ? s : to;
            int d_np = 0, d_nn = 0;
            if (ps.side == 0)
                d_nn = uptake ? 1 : -1;
            else
                d_np = uptake ? -1 : 1;
            add(ChannelKind::ProtonReservoir, s, to, ps.side,
                static_cast<int>(ps.site), 0, d_np, d_nn, 0.0);
            p_add_dbase_.push_back(table_.base[static_cast<unsigned>(with_p)] -
                                   table_.base[static_cast<unsigned>(without_p)]);
            p_add_dcoeff_.push_back(table_.charge_coeff[static_cast<unsigned>(with_p)] -
                                    table_.charge_coeff[static_cast<unsigned>(without_p)]);
            p_side_.push_back(static_cast<std::uint8_t>(ps.side));
            p_uptake_.push_back(uptake ? 1 : 0);
        }
    }

    rates_.resize(channels.size());
    for (std::size_t i = 0; i < channels.size(); ++i)
        rates_[i] = channels[i].rate;
    return RateMatrix(kNumStates, std::move(channels));
}

void GeneratorBuilder::update_position(double x) {
    const double v = surface_potential(x, params_);

    std::array<double, 9> amp;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const double delta =
            (pairs_[k].profile_site < 0)
                ? params_.Delta_LH
                : coupling_profile(static_cast<SiteId>(pairs_[k].profile_site), x, params_);
        amp[k] = pairs_[k].prefactor * delta * delta;
    }
    for (std::size_t i = 0; i < m_dbase_.size(); ++i) {
        const PairConstants& pc = pairs_[m_pair_[i]];
        const double d_omega = m_dbase_[i] + v * m_dcoeff_[i];
        const double a = pc.lambda + d_omega;
        rates_[marcus_offset_ + i] = amp[m_pair_[i]] * std::exp(-a * a * pc.inv_four_lambda_t);
    }

    const double g_side[2] = {
        proton_rate_profile(Side::N, x, params_) * kHbarInvUsPerMev,
        proton_rate_profile(Side::P, x, params_) * kHbarInvUsPerMev,
    };
    const double mu_side[2] = {params_.mu_N, params_.mu_P};
    const bool signed_gap = params_.proton_gap_convention == ProtonGapConvention::Signed;
    for (std::size_t i = 0; i < p_add_dbase_.size(); ++i) {
        double gap = p_add_dbase_[i] + v * p_add_dcoeff_[i];
        if (!signed_gap)
            gap = std::abs(gap);
        const FermiPair f = fermi_pair(gap, params_.T, mu_side[p_side_[i]]);
        rates_[proton_offset_ + i] = g_side[p_side_[i]] * (p_uptake_[i] ? f.occ : f.hole);
    }

    matrix_.update_rates(rates_);
    x_ = x;
}

RateMatrix build_generator(double x, const ModelParams& p) {
    GeneratorBuilder builder(p);
    builder.update_position(x);
    return builder.matrix();
}

} // namespace qcycle
