#pragma once

#include <string>
#include <vector>

#include "groupsketch/channel.hpp"
#include "groupsketch/source_model.hpp"
#include "groupsketch/surjection.hpp"

namespace groupsketch {

// Joint laws of one query symbol Q and one group-representation symbol Y.
// p1 is the joint under the member hypothesis, p0 the independent product
// P(Q)P(Y) under the impostor hypothesis.
struct SchemeDistributions {
    std::vector<double> py;               // P(Y = y)
    std::vector<double> pq;               // P(Q = q)
    std::vector<std::vector<double>> p1;  // [q][y]
    std::vector<std::vector<double>> p0;  // [q][y]
    std::vector<std::vector<double>> pxy; // [x][y], enrolled symbol vs output
};

struct Metrics {
    double compactness;     // C = H(Y), nats
    double security;        // S = H(X|Y), nats
    double verification;    // V = I(Y;Q), nats
    double source_entropy;  // H(X), nats
};

// h(p) in nats with the 0 log 0 = 0 convention.
double binary_entropy(double p);

// Low-level construction from the joint law P(X1 = x, T = t); accepts any
// joint produced by binary_joint_xt or a TypeModel.
SchemeDistributions build_distributions(
    const std::vector<std::vector<double>>& joint_xt, const Surjection& r,
    const NoiseChannel& channel);

SchemeDistributions build_distributions(const TypeModel& tm,
                                        const Surjection& r,
                                        const NoiseChannel& channel);

// KL divergence of p1 from p0; the false-positive error exponent bound.
double verification_V(const SchemeDistributions& dist);

double compactness_C(const SchemeDistributions& dist);

// Equivocation H(X|Y) of one enrolled symbol given one output symbol.
double security_S(const SchemeDistributions& dist);
double security_S(const SchemeDistributions& dist, const SourceModel& model);

Metrics compute_metrics(const TypeModel& tm, const Surjection& r,
                        const NoiseChannel& channel);

// Smallest sequence length m with m >= -log(epsilon) / V.
long long required_length(double v_nats, double epsilon);

enum class AsymptoticSetup {
    dense_type,      // p = 1/2, identity surjection
    sparse_type,     // p = alpha/n, identity surjection
    dense_majority,  // p = 1/2, majority vote
    sparse_all1,     // p = log(2)/n, all-ones surjection
};

struct AsymptoticConstant {
    std::string p_rule;  // human-readable activation-probability rule
    double alpha;        // n*p constant where the rule is alpha/n, else NaN
    double kappa;        // limit of n*V
};

AsymptoticConstant asymptotic_kappa(AsymptoticSetup setup);

// Large-n approximations of H(T) for the identity surjection.
double dense_compactness_approx(int group_size);
double sparse_compactness_approx(double alpha, int series_terms = 50);

struct NoiseSensitivityPoint {
    double eta0;
    double v;
    double slope;  // one-sided forward difference in eta0
};

// V along an eta0 grid with eta1 held fixed, binary alphabet only.
std::vector<NoiseSensitivityPoint> noise_sensitivity(
    const TypeModel& tm, const Surjection& r,
    const std::vector<double>& eta0_grid, double eta1 = 0.0);

}  // namespace groupsketch
