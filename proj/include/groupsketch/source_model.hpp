#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

namespace groupsketch {

// Memoryless source over the symbol alphabet {0, 1, ..., K-1}.
// Symbol 0 is the silent symbol; every other symbol is active with equal
// probability p, so P(X=0) = 1 - (K-1) p. Requiring p <= 1/K keeps the
// silent symbol at least as likely as any active one.
class SourceModel {
public:
    SourceModel(int alphabet_size, double activation_prob);

    int alphabet_size() const { return alphabet_size_; }
    double activation_prob() const { return activation_prob_; }

    // P(X = x).
    double symbol_prob(int x) const;
    std::vector<double> symbol_pmf() const;

    // H(X) in nats.
    double symbol_entropy() const;

private:
    int alphabet_size_;
    double activation_prob_;
};

// Distribution of the type (count vector) of n iid symbols. The type of a
// group (x_1, ..., x_n) is t = (t_0, ..., t_{K-1}) with t_s = #{i : x_i = s}.
class TypeModel {
public:
    TypeModel(SourceModel source, int group_size,
              std::vector<std::vector<int>> types, std::vector<double> pmf,
              std::vector<std::vector<double>> joint_xt);

    const SourceModel& source() const { return source_; }
    int group_size() const { return group_size_; }
    std::size_t type_count() const { return types_.size(); }

    // Count vectors in colexicographic order; pmf()[i] = P(T = types()[i]).
    const std::vector<std::vector<int>>& types() const { return types_; }
    const std::vector<double>& pmf() const { return pmf_; }

    // joint_xt()[x][i] = P(X_1 = x, T = types()[i]) for one designated member.
    const std::vector<std::vector<double>>& joint_xt() const { return joint_xt_; }

    // Index of a count vector in types(); throws std::out_of_range if absent.
    std::size_t type_index(const std::vector<int>& counts) const;

private:
    SourceModel source_;
    int group_size_;
    std::vector<std::vector<int>> types_;
    std::vector<double> pmf_;
    std::vector<std::vector<double>> joint_xt_;
    std::map<std::vector<int>, std::size_t> index_;
};

// Number of types, C(n + K - 1, K - 1), without enumerating them.
// Saturates at SIZE_MAX on overflow.
std::size_t type_space_size(int alphabet_size, int group_size);

// Enumerates the type space and its law. Throws EnumerationCapExceeded when
// the number of types exceeds max_types.
TypeModel build_type_model(const SourceModel& model, int group_size,
                           std::size_t max_types = 1000000);

// Binary fast path: P(X_1 = x, T = (n - t, t)) as a 2 x (n+1) matrix indexed
// [x][t]. Accepts any p in (0, 1); used by schemes that sweep the activation
// probability across the full range.
std::vector<std::vector<double>> binary_joint_xt(double p, int group_size);

// Binomial type law for a binary source with P(X=1) = p, any p in (0, 1).
std::vector<double> binary_type_pmf(double p, int group_size);

}  // namespace groupsketch
