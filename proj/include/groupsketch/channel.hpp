#pragma once

#include <vector>

#include "groupsketch/source_model.hpp"

namespace groupsketch {

// Memoryless query-noise channel W(q|x) over a common alphabet for the
// enrolled symbol x and the query symbol q. Symbol 0 is silent.
//
// eta0 is the probability that a silent symbol flips to one given active
// symbol; eta1 the probability that an active symbol is erased to silent;
// eta2 the probability that an active symbol flips to one given other active
// symbol. Diagonal entries absorb the remainder.
class NoiseChannel {
public:
    static NoiseChannel binary(double eta0, double eta1);
    static NoiseChannel symmetric(int alphabet_size, double eta0, double eta1,
                                  double eta2 = 0.0);
    static NoiseChannel identity(int alphabet_size);

    int alphabet_size() const { return alphabet_size_; }
    double eta0() const { return eta0_; }
    double eta1() const { return eta1_; }
    double eta2() const { return eta2_; }
    bool noiseless() const;

    // W(q | x).
    double operator()(int q, int x) const;
    const std::vector<double>& row(int x) const;

private:
    NoiseChannel(int alphabet_size, double eta0, double eta1, double eta2);

    int alphabet_size_;
    double eta0_;
    double eta1_;
    double eta2_;
    std::vector<std::vector<double>> w_;  // w_[x][q] = W(q|x)
};

// P(Q = q) when the queried symbol is drawn from the source and passed
// through the channel.
std::vector<double> query_marginal(const SourceModel& model,
                                   const NoiseChannel& channel);

}  // namespace groupsketch
