#include "groupsketch/source_model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "groupsketch/errors.hpp"
#include "groupsketch/stats.hpp"

namespace groupsketch {

SourceModel::SourceModel(int alphabet_size, double activation_prob)
    : alphabet_size_(alphabet_size), activation_prob_(activation_prob) {
    if (alphabet_size < 2) {
        throw std::invalid_argument("alphabet size must be at least 2");
    }
    if (!(activation_prob > 0.0) ||
        activation_prob > 1.0 / static_cast<double>(alphabet_size)) {
        throw std::invalid_argument(
            "activation probability must lie in (0, 1/|alphabet|]");
    }
}

double SourceModel::symbol_prob(int x) const {
    if (x < 0 || x >= alphabet_size_) {
        throw std::out_of_range("symbol out of range");
    }
    if (x == 0) {
        return 1.0 - (alphabet_size_ - 1) * activation_prob_;
    }
    return activation_prob_;
}

std::vector<double> SourceModel::symbol_pmf() const {
    std::vector<double> pmf(static_cast<std::size_t>(alphabet_size_),
                            activation_prob_);
    pmf[0] = 1.0 - (alphabet_size_ - 1) * activation_prob_;
    return pmf;
}

double SourceModel::symbol_entropy() const {
    auto pmf = symbol_pmf();
    return stats::entropy(pmf);
}

TypeModel::TypeModel(SourceModel source, int group_size,
                     std::vector<std::vector<int>> types,
                     std::vector<double> pmf,
                     std::vector<std::vector<double>> joint_xt)
    : source_(std::move(source)),
      group_size_(group_size),
      types_(std::move(types)),
      pmf_(std::move(pmf)),
      joint_xt_(std::move(joint_xt)) {
    for (std::size_t i = 0; i < types_.size(); ++i) {
        index_.emplace(types_[i], i);
    }
}

std::size_t TypeModel::type_index(const std::vector<int>& counts) const {
    auto it = index_.find(counts);
    if (it == index_.end()) {
        throw std::out_of_range("unknown type");
    }
    return it->second;
}

std::size_t type_space_size(int alphabet_size, int group_size) {
    // C(n + K - 1, K - 1) with saturating integer arithmetic.
    std::size_t result = 1;
    const int k = alphabet_size - 1;
    for (int i = 1; i <= k; ++i) {
        const std::size_t num = static_cast<std::size_t>(group_size) + i;
        if (result > std::numeric_limits<std::size_t>::max() / num) {
            return std::numeric_limits<std::size_t>::max();
        }
        result = result * num / static_cast<std::size_t>(i);
    }
    return result;
}

namespace {

// Count vectors with a given sum in colexicographic order: the last
// coordinate varies slowest.
std::vector<std::vector<int>> enumerate_types(int alphabet_size, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> counts(static_cast<std::size_t>(alphabet_size), 0);
    // Positions 1..K-1 are free; position 0 absorbs the remainder.
    counts[0] = total;
    while (true) {
        out.push_back(counts);
        // Colex increment: bump the first free coordinate that still has
        // budget, clearing everything before it back into coordinate 0.
        int i = 1;
        for (; i < alphabet_size; ++i) {
            if (counts[0] > 0) {
                ++counts[static_cast<std::size_t>(i)];
                --counts[0];
                break;
            }
            counts[0] += counts[static_cast<std::size_t>(i)];
            counts[static_cast<std::size_t>(i)] = 0;
        }
        if (i == alphabet_size) {
            return out;
        }
    }
}

double multinomial_log_pmf(const std::vector<int>& counts,
                           const std::vector<double>& pmf) {
    int n = 0;
    for (int c : counts) n += c;
    double log_p = std::lgamma(n + 1.0);
    for (std::size_t s = 0; s < counts.size(); ++s) {
        log_p -= std::lgamma(counts[s] + 1.0);
        if (counts[s] > 0) {
            log_p += counts[s] * std::log(pmf[s]);
        }
    }
    return log_p;
}

}  // namespace

TypeModel build_type_model(const SourceModel& model, int group_size,
                           std::size_t max_types) {
    if (group_size < 1) {
        throw std::invalid_argument("group size must be positive");
    }
    const int k = model.alphabet_size();
    const std::size_t n_types = type_space_size(k, group_size);
    if (n_types > max_types) {
        throw EnumerationCapExceeded(
            "type space has " + std::to_string(n_types) +
            " elements, exceeding the cap of " + std::to_string(max_types));
    }

    if (k == 2) {
        const double p = model.activation_prob();
        std::vector<std::vector<int>> types;
        types.reserve(static_cast<std::size_t>(group_size) + 1);
        for (int t = 0; t <= group_size; ++t) {
            types.push_back({group_size - t, t});
        }
        return TypeModel(model, group_size, std::move(types),
                         binary_type_pmf(p, group_size),
                         binary_joint_xt(p, group_size));
    }

    const auto pmf_x = model.symbol_pmf();
    auto types = enumerate_types(k, group_size);
    std::vector<double> pmf(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) {
        pmf[i] = std::exp(multinomial_log_pmf(types[i], pmf_x));
    }

    // P(X_1 = x, T = t) = P(X = x) P(T' = t - e_x) where T' is the type of
    // the remaining n - 1 members.
    std::map<std::vector<int>, double> rest_pmf;
    for (const auto& t : enumerate_types(k, group_size - 1)) {
        rest_pmf.emplace(t, std::exp(multinomial_log_pmf(t, pmf_x)));
    }
    std::vector<std::vector<double>> joint(
        static_cast<std::size_t>(k), std::vector<double>(types.size(), 0.0));
    for (std::size_t i = 0; i < types.size(); ++i) {
        for (int x = 0; x < k; ++x) {
            if (types[i][static_cast<std::size_t>(x)] == 0) continue;
            auto rest = types[i];
            --rest[static_cast<std::size_t>(x)];
            joint[static_cast<std::size_t>(x)][i] =
                pmf_x[static_cast<std::size_t>(x)] * rest_pmf.at(rest);
        }
    }
    return TypeModel(model, group_size, std::move(types), std::move(pmf),
                     std::move(joint));
}

std::vector<double> binary_type_pmf(double p, int group_size) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("activation probability must lie in (0, 1)");
    }
    return stats::binomial_pmf(group_size, p);
}

std::vector<std::vector<double>> binary_joint_xt(double p, int group_size) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("activation probability must lie in (0, 1)");
    }
    if (group_size < 1) {
        throw std::invalid_argument("group size must be positive");
    }
    const int n = group_size;
    std::vector<std::vector<double>> joint(
        2, std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
    if (n == 1) {
        joint[0][0] = 1.0 - p;
        joint[1][1] = p;
        return joint;
    }
    const auto rest = stats::binomial_pmf(n - 1, p);
    for (int t = 0; t <= n - 1; ++t) {
        joint[0][static_cast<std::size_t>(t)] = (1.0 - p) * rest[static_cast<std::size_t>(t)];
    }
    for (int t = 1; t <= n; ++t) {
        joint[1][static_cast<std::size_t>(t)] = p * rest[static_cast<std::size_t>(t) - 1];
    }
    return joint;
}

}  // namespace groupsketch
