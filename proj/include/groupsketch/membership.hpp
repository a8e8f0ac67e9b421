#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "groupsketch/channel.hpp"
#include "groupsketch/embedding.hpp"
#include "groupsketch/infometrics.hpp"
#include "groupsketch/source_model.hpp"
#include "groupsketch/surjection.hpp"

namespace groupsketch {

// Stand-in for log(0) when a query symbol is impossible under the member
// hypothesis: large enough to lose every comparison, finite so scores stay
// sortable and serializable.
inline constexpr double kHardReject = -1e300;

struct GroupRepresentation {
    std::vector<int> symbols;
    int output_symbols;
};

// Index-wise aggregation of n enrolled sequences: type, then surjection.
// Invariant under any permutation of the members.
GroupRepresentation enroll(
    const std::vector<std::vector<std::uint8_t>>& sequences,
    const TypeModel& tm, const Surjection& r);

// Binary fast path: the type of a column is its count of ones.
GroupRepresentation enroll_binary(
    const std::vector<std::vector<std::uint8_t>>& sequences, int group_size,
    const Surjection& r);

// Per-symbol log-likelihood-ratio table, llr[q][y] = log(p1/p0).
struct ScoreTable {
    std::vector<std::vector<double>> llr;
};

ScoreTable make_score_table(const SchemeDistributions& dist);

double score(std::span<const std::uint8_t> query,
             const GroupRepresentation& rep, const ScoreTable& table);

// Discrete-sequence mode: symbols drawn from the source, queries passed
// through the noise channel.
struct SequenceMode {
    int alphabet_size = 2;
    double activation_prob = 0.5;
    double eta0 = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
};

// Real-vector mode: templates on the unit sphere, quantized by the
// random-projection embedding; positives are fresh vectors at the given
// correlation with an enrolled member, negatives fresh uniform vectors.
struct VectorMode {
    int dim = 128;
    double lambda_x = 0.0;
    double lambda_q = 0.0;
    double correlation = 0.83;
};

struct SurjectionChoice {
    enum class Kind { identity, all_ones, majority, greedy } kind =
        Kind::identity;
    int greedy_target = 0;
};

struct SimulationConfig {
    int group_size = 16;
    int seq_length = 256;
    int group_count = 8;
    int positive_queries = 16;  // per group per run
    int negative_queries = 16;  // per group per run
    int runs = 20;
    std::uint64_t seed = 1;
    double operating_pfp = 0.05;
    SurjectionChoice surjection;
    std::optional<SequenceMode> sequence;
    std::optional<VectorMode> vector;
    // Vector mode only: enrolled templates taken round-robin from this pool
    // instead of being sampled; empty means synthesize. templates_path, when
    // set, fills the pool from a template matrix file at run time.
    std::vector<std::vector<double>> templates;
    std::string templates_path;
};

struct VerificationOutcome {
    std::vector<double> positive_scores;
    std::vector<double> negative_scores;
    double threshold_tau;
    double operating_pfp;
    double pfn_at_pfp;
    double achieved_pfp;  // fraction of negatives at or above tau
    Metrics scheme;       // per-index figures of merit of the scheme
};

// Builds the per-index scheme a config describes (source/channel as given,
// or induced by the embedding thresholds), including the resolved surjection.
struct ResolvedScheme {
    std::vector<std::vector<double>> joint_xt;
    Surjection surjection;
    NoiseChannel channel;
    SchemeDistributions dist;
    double activation_prob;
    // Present in sequence mode; vector mode is always binary and enrolls
    // through the count fast path.
    std::optional<TypeModel> type_model;
};

ResolvedScheme resolve_scheme(const SimulationConfig& cfg);

VerificationOutcome run_verification(const SimulationConfig& cfg);

// False-positive exponent estimate: thresholds fixed at a positive-score
// quantile (the recall), P_fp measured by reweighting the positive draws
// (P0(S >= tau) = E1[e^-S; S >= tau]), slope of -log P_fp against m
// compared with the bound V.
struct ExponentPoint {
    int m;
    double pfp_hat;
    double rate;  // -log(pfp_hat) / m
};

struct ExponentEstimate {
    std::vector<ExponentPoint> points;
    std::vector<int> excluded;  // m values whose P_fp estimate was zero
    double slope;
    double bound_v;
};

ExponentEstimate empirical_exponent(const SchemeDistributions& dist,
                                    std::span<const int> m_grid,
                                    int samples_per_m, double recall,
                                    std::uint64_t seed);

}  // namespace groupsketch
