#include "qcycle/rate_matrix.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qcycle {

RateMatrix::RateMatrix(int dim, std::vector<Channel> channels)
    : dim_(dim), channels_(std::move(channels)), exit_rate_(static_cast<size_t>(dim), 0.0) {
    for (const Channel& c : channels_) {
        if (c.from_state >= dim_ || c.to_state >= dim_)
            throw std::out_of_range("channel endpoint outside state space");
        if (c.from_state == c.to_state)
            throw std::invalid_argument("channel must connect distinct states");
    }
    rebuild_exit_rates();
}

void RateMatrix::update_rates(std::span<const double> rates) {
    if (rates.size() != channels_.size())
        throw std::invalid_argument("rate count does not match channel count");
    for (size_t i = 0; i < rates.size(); ++i)
        channels_[i].rate = rates[i];
    rebuild_exit_rates();
}

void RateMatrix::rebuild_exit_rates() {
    std::fill(exit_rate_.begin(), exit_rate_.end(), 0.0);
    for (const Channel& c : channels_) {
        if (!(c.rate >= 0.0))
            throw std::invalid_argument("channel rate must be non-negative");
        exit_rate_[c.from_state] += c.rate;
    }
}

void RateMatrix::apply(std::span<const double> p, std::span<double> out) const {
    assert(p.size() == static_cast<size_t>(dim_) && out.size() == p.size());
    for (int i = 0; i < dim_; ++i)
        out[static_cast<size_t>(i)] = -exit_rate_[static_cast<size_t>(i)] * p[static_cast<size_t>(i)];
    for (const Channel& c : channels_)
        out[c.to_state] += c.rate * p[c.from_state];
}

double RateMatrix::max_exit_rate() const {
    double m = 0.0;
    for (double r : exit_rate_)
        m = std::max(m, r);
    return m;
}

std::vector<double> RateMatrix::to_dense() const {
    std::vector<double> dense(static_cast<size_t>(dim_) * static_cast<size_t>(dim_), 0.0);
    for (const Channel& c : channels_) {
        dense[static_cast<size_t>(c.to_state) * dim_ + c.from_state] += c.rate;
        dense[static_cast<size_t>(c.from_state) * dim_ + c.from_state] -= c.rate;
    }
    return dense;
}

} // namespace qcycle
