#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace groupsketch {

// Random-projection quantizer: bit i of the sequence is [v . U_i > lambda]
// with U_i i.i.d. standard-normal d-vectors derived from the seed. Projection
// directions are generated per index, so sequences of different lengths share
// prefixes under the same seed.
struct EmbeddingConfig {
    int dim;
    int seq_length;
    double lambda_x;  // enrollment threshold
    double lambda_q;  // query threshold
    std::uint64_t seed;
};

class Embedding {
public:
    explicit Embedding(const EmbeddingConfig& cfg);

    const EmbeddingConfig& config() const { return cfg_; }

    std::vector<std::uint8_t> embed(std::span<const double> v,
                                    double threshold) const;
    std::vector<std::uint8_t> embed_enrolled(std::span<const double> v) const;
    std::vector<std::uint8_t> embed_query(std::span<const double> v) const;

private:
    double projection(int index, std::span<const double> v) const;

    EmbeddingConfig cfg_;
    std::vector<double> directions_;  // row-major cache, empty when streaming
};

// p = P(bit = 1) for a unit vector, 1 - Phi(lambda).
double activation_prob(double lambda);

// Inverse of activation_prob.
double threshold_for_activation(double p);

// Channel rates induced on one bit when the query vector has correlation c
// with the enrolled vector: eta0 = P(query bit 1 | enrolled bit 0), eta1 the
// converse. Exact limits at |c| = 1; quadrature otherwise.
double induced_eta0(double lambda_x, double lambda_q, double c);
double induced_eta1(double lambda_x, double lambda_q, double c);

struct CorrelatedPair {
    std::vector<double> enrolled;
    std::vector<double> query;
    double correlation;
};

// Uniform unit vector x and a query q = c x + sqrt(1-c^2) w with w uniform
// on the subsphere orthogonal to x, so q . x = c exactly.
CorrelatedPair sample_pair(double c, int dim, std::uint64_t seed);

// Uniform unit vector, for impostor queries.
std::vector<double> sample_unit_vector(int dim, std::uint64_t seed);

enum class SurjectionFamily { identity, majority, all_ones, best_threshold };

struct GridSearchResult {
    double lambda_x;
    double lambda_q;
    double v;
    double p;
    double eta0;
    double eta1;
    int threshold;  // 0 for the identity family
};

// Evaluates V over the (lambda_x, lambda_q) grid for the binary scheme the
// thresholds induce at correlation c, and returns the maximizer. Ties pick
// the smaller lambda_x, then the smaller lambda_q.
GridSearchResult grid_search(double c, int group_size, SurjectionFamily family,
                             std::span<const double> lambda_x_grid,
                             std::span<const double> lambda_q_grid);

// lambda in {-2.0, -1.9, ..., 2.0}.
std::vector<double> default_lambda_grid();

}  // namespace groupsketch
