#pragma once

#include <cstddef>
#include <vector>

#include "groupsketch/channel.hpp"
#include "groupsketch/source_model.hpp"

namespace groupsketch {

// Second aggregation stage: a total map from type indices onto the reduced
// output alphabet {0, ..., output_symbols-1}.
class Surjection {
public:
    Surjection(std::size_t type_count, int output_symbols,
               std::vector<int> table);

    std::size_t type_count() const { return table_.size(); }
    int output_symbols() const { return output_symbols_; }
    const std::vector<int>& table() const { return table_; }

    int operator()(std::size_t type_index) const;

    // Composition: first this map, then outer over this map's outputs.
    Surjection then(const Surjection& outer) const;

private:
    int output_symbols_;
    std::vector<int> table_;
};

Surjection identity_surjection(std::size_t type_count);

// Binary types t in {0..n} to binary output: y = 1 iff t >= t_threshold.
Surjection threshold_surjection(int group_size, int t_threshold);

// y = 1 iff any enrolled symbol is active.
Surjection all_ones_surjection(int group_size);

// y = 1 iff at least half of the enrolled symbols are active.
Surjection majority_surjection(int group_size);

struct BestThreshold {
    int threshold;
    double v;
};

// Exhaustive scan over thresholds 1..n for the binary scheme with the given
// channel; ties resolved toward the smallest threshold. Accepts any
// activation probability in (0, 1).
BestThreshold best_threshold(double p, int group_size,
                             const NoiseChannel& channel);

// Iteratively merges the pair of output symbols whose merge loses the least
// verification information, until the output alphabet has target_size
// symbols. Ties merge the lexicographically smallest pair.
Surjection greedy_merge(const TypeModel& tm, const Surjection& r,
                        const NoiseChannel& channel, int target_size);

Surjection greedy_merge(const std::vector<std::vector<double>>& joint_xt,
                        const Surjection& r, const NoiseChannel& channel,
                        int target_size);

// Probabilistic relaxation over binary types: P(Y=1 | T=t) = theta[t].
struct GradientReport {
    std::vector<double> derivative;  // dV/dtheta_t, entries may be +-inf
    double k1;                       // h'(P(Y=1|X=0)) - h'(P(Y=1|X=1))
    double k2;                       // derivative sign flips at t = n*k2
    bool diverged;                   // some h' argument hit 0 or 1 exactly
};

// V = I(Y;Q) for the noiseless binary scheme with the probabilistic
// surjection theta (length n+1, entries in [0,1]).
double probabilistic_surjection_V(double p, int group_size,
                                  const std::vector<double>& theta);

// Analytic gradient of probabilistic_surjection_V in theta, noiseless case.
GradientReport surjection_gradient(double p, int group_size,
                                   const std::vector<double>& theta);

}  // namespace groupsketch
