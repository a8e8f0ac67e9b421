#include "groupsketch/channel.hpp"

#include <stdexcept>

namespace groupsketch {

NoiseChannel::NoiseChannel(int alphabet_size, double eta0, double eta1,
                           double eta2)
    : alphabet_size_(alphabet_size), eta0_(eta0), eta1_(eta1), eta2_(eta2) {
    if (alphabet_size < 2) {
        throw std::invalid_argument("alphabet size must be at least 2");
    }
    const int k = alphabet_size;
    if (!(eta0 >= 0.0) || eta0 > 1.0 / (k - 1)) {
        throw std::invalid_argument("eta0 must lie in [0, 1/(|alphabet|-1)]");
    }
    if (!(eta1 >= 0.0) || eta1 > 1.0) {
        throw std::invalid_argument("eta1 must lie in [0, 1]");
    }
    if (!(eta2 >= 0.0) || eta1 + (k - 2) * eta2 > 1.0) {
        throw std::invalid_argument(
            "eta2 must be nonnegative with eta1 + (|alphabet|-2) eta2 <= 1");
    }
    w_.assign(static_cast<std::size_t>(k),
              std::vector<double>(static_cast<std::size_t>(k), 0.0));
    w_[0][0] = 1.0 - (k - 1) * eta0;
    for (int q = 1; q < k; ++q) w_[0][static_cast<std::size_t>(q)] = eta0;
    for (int x = 1; x < k; ++x) {
        auto& row = w_[static_cast<std::size_t>(x)];
        row[0] = eta1;
        for (int q = 1; q < k; ++q) {
            row[static_cast<std::size_t>(q)] = (q == x)
                ? 1.0 - eta1 - (k - 2) * eta2
                : eta2;
        }
    }
}

NoiseChannel NoiseChannel::binary(double eta0, double eta1) {
    return NoiseChannel(2, eta0, eta1, 0.0);
}

NoiseChannel NoiseChannel::symmetric(int alphabet_size, double eta0,
                                     double eta1, double eta2) {
    return NoiseChannel(alphabet_size, eta0, eta1, eta2);
}

NoiseChannel NoiseChannel::identity(int alphabet_size) {
    return NoiseChannel(alphabet_size, 0.0, 0.0, 0.0);
}

bool NoiseChannel::noiseless() const {
    return eta0_ == 0.0 && eta1_ == 0.0 && eta2_ == 0.0;
}

double NoiseChannel::operator()(int q, int x) const {
    if (q < 0 || q >= alphabet_size_ || x < 0 || x >= alphabet_size_) {
        throw std::out_of_range("symbol out of range");
    }
    return w_[static_cast<std::size_t>(x)][static_cast<std::size_t>(q)];
}

const std::vector<double>& NoiseChannel::row(int x) const {
    if (x < 0 || x >= alphabet_size_) {
        throw std::out_of_range("symbol out of range");
    }
    return w_[static_cast<std::size_t>(x)];
}

std::vector<double> query_marginal(const SourceModel& model,
                                   const NoiseChannel& channel) {
    if (model.alphabet_size() != channel.alphabet_size()) {
        throw std::invalid_argument("source and channel alphabets differ");
    }
    const int k = model.alphabet_size();
    std::vector<double> marginal(static_cast<std::size_t>(k), 0.0);
    for (int x = 0; x < k; ++x) {
        const double px = model.symbol_prob(x);
        const auto& row = channel.row(x);
        for (int q = 0; q < k; ++q) {
            marginal[static_cast<std::size_t>(q)] += px * row[static_cast<std::size_t>(q)];
        }
    }
    return marginal;
}

}  // namespace groupsketch
