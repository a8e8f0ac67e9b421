#include "groupsketch/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "groupsketch/channel.hpp"
#include "groupsketch/errors.hpp"
#include "groupsketch/infometrics.hpp"
#include "groupsketch/parallel.hpp"
#include "groupsketch/rng.hpp"
#include "groupsketch/source_model.hpp"
#include "groupsketch/stats.hpp"
#include "groupsketch/surjection.hpp"

namespace groupsketch {

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

// Cache the projection matrix only while it stays comfortably in memory;
// larger configurations regenerate rows from the counter stream on the fly.
constexpr std::size_t kDirectionCacheLimit = 8u << 20;

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

Embedding::Embedding(const EmbeddingConfig& cfg) : cfg_(cfg) {
    if (cfg.dim < 2) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    if (cfg.seq_length < 1) {
        throw std::invalid_argument("sequence length must be positive");
    }
    const std::size_t cells = static_cast<std::size_t>(cfg.dim) *
                              static_cast<std::size_t>(cfg.seq_length);
    if (cells <= kDirectionCacheLimit) {
        directions_.resize(cells);
        parallel_for(static_cast<std::size_t>(cfg.seq_length), [&](std::size_t i) {
            const std::uint64_t key = rng::derive(cfg_.seed, i);
            double* row = directions_.data() + i * static_cast<std::size_t>(cfg_.dim);
            for (int j = 0; j < cfg_.dim; ++j) {
                row[j] = rng::normal_at(key, static_cast<std::uint64_t>(j));
            }
        });
    }
}

double Embedding::projection(int index, std::span<const double> v) const {
    const auto d = static_cast<std::size_t>(cfg_.dim);
    double dot = 0.0;
    if (!directions_.empty()) {
        const double* row = directions_.data() + static_cast<std::size_t>(index) * d;
        for (std::size_t j = 0; j < d; ++j) dot += row[j] * v[j];
    } else {
        const std::uint64_t key =
            rng::derive(cfg_.seed, static_cast<std::uint64_t>(index));
        for (std::size_t j = 0; j < d; ++j) {
            dot += rng::normal_at(key, j) * v[j];
        }
    }
    return dot;
}

std::vector<std::uint8_t> Embedding::embed(std::span<const double> v,
                                           double threshold) const {
    if (v.size() != static_cast<std::size_t>(cfg_.dim)) {
        throw std::invalid_argument("vector dimension mismatch");
    }
    if (std::abs(norm(v) - 1.0) > 1e-6) {
        throw std::invalid_argument("vector must be unit-norm");
    }
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(cfg_.seq_length));
    for (int i = 0; i < cfg_.seq_length; ++i) {
        bits[static_cast<std::size_t>(i)] = projection(i, v) > threshold ? 1 : 0;
    }
    return bits;
}

std::vector<std::uint8_t> Embedding::embed_enrolled(
    std::span<const double> v) const {
    return embed(v, cfg_.lambda_x);
}

std::vector<std::uint8_t> Embedding::embed_query(
    std::span<const double> v) const {
    return embed(v, cfg_.lambda_q);
}

double activation_prob(double lambda) {
    return stats::normal_cdf_c(lambda);
}

double threshold_for_activation(double p) {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("activation probability must lie in (0, 1)");
    }
    return -stats::normal_quantile(p);
}

namespace {

double gaussian_density(double s) {
    return std::exp(-0.5 * s * s) / std::sqrt(kTwoPi);
}

void check_correlation(double c) {
    if (!(c >= -1.0) || !(c <= 1.0)) {
        throw std::invalid_argument("correlation must lie in [-1, 1]");
    }
}

}  // namespace

double induced_eta0(double lambda_x, double lambda_q, double c) {
    check_correlation(c);
    const double below = stats::normal_cdf(lambda_x);  // 1 - p
    if (below <= 0.0) {
        throw std::domain_error("enrollment threshold leaves no inactive bits");
    }
    if (c == 1.0) {
        if (lambda_q >= lambda_x) return 0.0;
        return (below - stats::normal_cdf(lambda_q)) / below;
    }
    if (c == -1.0) {
        return stats::normal_cdf(std::min(-lambda_q, lambda_x)) / below;
    }
    const double sigma = std::sqrt((1.0 - c) * (1.0 + c));
    const double lo = std::min(lambda_x, 0.0) - 40.0;
    // P(query bit = 1, enrolled bit = 0) with the query projection
    // conditionally N(c s, 1 - c^2); the complementary CDF keeps precision
    // when the rate is tiny.
    const double joint = stats::integrate(
        [&](double s) {
            return gaussian_density(s) *
                   stats::normal_cdf((c * s - lambda_q) / sigma);
        },
        lo, lambda_x, 1e-12, 1e-12);
    return std::clamp(joint / below, 0.0, 1.0);
}

double induced_eta1(double lambda_x, double lambda_q, double c) {
    check_correlation(c);
    const double above = stats::normal_cdf_c(lambda_x);  // p
    if (above <= 0.0) {
        throw std::domain_error("enrollment threshold leaves no active bits");
    }
    if (c == 1.0) {
        if (lambda_q <= lambda_x) return 0.0;
        return (stats::normal_cdf(lambda_q) - stats::normal_cdf(lambda_x)) / above;
    }
    if (c == -1.0) {
        return stats::normal_cdf_c(std::max(lambda_x, -lambda_q)) / above;
    }
    const double sigma = std::sqrt((1.0 - c) * (1.0 + c));
    const double hi = std::max(lambda_x, 0.0) + 40.0;
    const double joint = stats::integrate(
        [&](double s) {
            return gaussian_density(s) *
                   stats::normal_cdf((lambda_q - c * s) / sigma);
        },
        lambda_x, hi, 1e-12, 1e-12);
    return std::clamp(joint / above, 0.0, 1.0);
}

std::vector<double> sample_unit_vector(int dim, std::uint64_t seed) {
    if (dim < 2) {
        throw std::invalid_argument("dimension must be at least 2");
    }
    rng::Stream stream(seed);
    std::vector<double> v(static_cast<std::size_t>(dim));
    for (;;) {
        for (auto& x : v) x = stream.next_normal();
        const double r = norm(v);
        if (r > 1e-12) {
            for (auto& x : v) x /= r;
            return v;
        }
    }
}

CorrelatedPair sample_pair(double c, int dim, std::uint64_t seed) {
    check_correlation(c);
    CorrelatedPair pair;
    pair.correlation = c;
    pair.enrolled = sample_unit_vector(dim, rng::derive(seed, 1));
    if (c == 1.0 || c == -1.0) {
        pair.query = pair.enrolled;
        for (auto& x : pair.query) x *= c;
        return pair;
    }
    rng::Stream stream(rng::derive(seed, 2));
    const auto d = static_cast<std::size_t>(dim);
    std::vector<double> w(d);
    for (;;) {
        for (auto& x : w) x = stream.next_normal();
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += w[j] * pair.enrolled[j];
        for (std::size_t j = 0; j < d; ++j) w[j] -= dot * pair.enrolled[j];
        const double r = norm(w);
        if (r > 1e-12) {
            for (auto& x : w) x /= r;
            break;
        }
    }
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    pair.query.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        pair.query[j] = c * pair.enrolled[j] + s * w[j];
    }
    return pair;
}

GridSearchResult grid_search(double c, int group_size, SurjectionFamily family,
                             std::span<const double> lambda_x_grid,
                             std::span<const double> lambda_q_grid) {
    if (lambda_x_grid.empty() || lambda_q_grid.empty()) {
        throw std::invalid_argument("grid must be nonempty");
    }
    if (group_size < 1) {
        throw std::invalid_argument("group size must be positive");
    }
    std::vector<double> lxs(lambda_x_grid.begin(), lambda_x_grid.end());
    std::vector<double> lqs(lambda_q_grid.begin(), lambda_q_grid.end());
    std::sort(lxs.begin(), lxs.end());
    std::sort(lqs.begin(), lqs.end());

    const double quiet = std::numeric_limits<double>::quiet_NaN();
    std::vector<GridSearchResult> per_lx(
        lxs.size(), GridSearchResult{quiet, quiet,
                                     -std::numeric_limits<double>::infinity(),
                                     quiet, quiet, quiet, 0});
    parallel_for(lxs.size(), [&](std::size_t i) {
        const double lx = lxs[i];
        const double p = activation_prob(lx);
        if (!(p > 0.0) || !(p < 1.0)) return;  // grid point degenerate, skip
        const auto joint = binary_joint_xt(p, group_size);
        GridSearchResult best = per_lx[i];
        for (double lq : lqs) {
            const double e0 = induced_eta0(lx, lq, c);
            const double e1 = induced_eta1(lx, lq, c);
            const auto channel = NoiseChannel::binary(e0, e1);
            int threshold = 0;
            double v;
            // Extreme thresholds can underflow a joint cell to exact zero;
            // such points are unusable, not fatal for the whole sweep.
            try {
                switch (family) {
                    case SurjectionFamily::identity:
                        v = verification_V(build_distributions(
                            joint, identity_surjection(
                                       static_cast<std::size_t>(group_size) + 1),
                            channel));
                        break;
                    case SurjectionFamily::majority:
                        threshold = (group_size + 1) / 2;
                        v = verification_V(build_distributions(
                            joint, majority_surjection(group_size), channel));
                        break;
                    case SurjectionFamily::all_ones:
                        threshold = 1;
                        v = verification_V(build_distributions(
                            joint, all_ones_surjection(group_size), channel));
                        break;
                    case SurjectionFamily::best_threshold: {
                        const auto scan = best_threshold(p, group_size, channel);
                        threshold = scan.threshold;
                        v = scan.v;
                        break;
                    }
                    default:
                        throw std::invalid_argument("unknown surjection family");
                }
            } catch (const DistributionInconsistency&) {
                continue;
            }
            if (v > best.v) {
                best = {lx, lq, v, p, e0, e1, threshold};
            }
        }
        per_lx[i] = best;
    });

    GridSearchResult winner = per_lx[0];
    for (const auto& candidate : per_lx) {
        if (candidate.v > winner.v) winner = candidate;
    }
    if (!std::isfinite(winner.v)) {
        throw std::domain_error("no usable grid point");
    }
    return winner;
}

std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    grid.reserve(41);
    for (int k = -20; k <= 20; ++k) {
        grid.push_back(static_cast<double>(k) / 10.0);
    }
    return grid;
}

}  // namespace groupsketch
