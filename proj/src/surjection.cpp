#include "groupsketch/surjection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "groupsketch/infometrics.hpp"

namespace groupsketch {

Surjection::Surjection(std::size_t type_count, int output_symbols,
                       std::vector<int> table)
    : output_symbols_(output_symbols), table_(std::move(table)) {
    if (output_symbols < 1) {
        throw std::invalid_argument("output alphabet must be nonempty");
    }
    if (table_.size() != type_count) {
        throw std::invalid_argument("table must cover every type");
    }
    std::vector<char> hit(static_cast<std::size_t>(output_symbols), 0);
    for (int y : table_) {
        if (y < 0 || y >= output_symbols) {
            throw std::invalid_argument("table entry outside output alphabet");
        }
        hit[static_cast<std::size_t>(y)] = 1;
    }
    for (char h : hit) {
        if (!h) throw std::invalid_argument("map is not surjective");
    }
}

int Surjection::operator()(std::size_t type_index) const {
    if (type_index >= table_.size()) {
        throw std::out_of_range("type index out of range");
    }
    return table_[type_index];
}

Surjection Surjection::then(const Surjection& outer) const {
    if (outer.type_count() != static_cast<std::size_t>(output_symbols_)) {
        throw std::invalid_argument("composition dimension mismatch");
    }
    std::vector<int> composed(table_.size());
    for (std::size_t i = 0; i < table_.size(); ++i) {
        composed[i] = outer.table_[static_cast<std::size_t>(table_[i])];
    }
    return Surjection(table_.size(), outer.output_symbols_, std::move(composed));
}

Surjection identity_surjection(std::size_t type_count) {
    if (type_count < 1) {
        throw std::invalid_argument("type count must be positive");
    }
    std::vector<int> table(type_count);
    for (std::size_t i = 0; i < type_count; ++i) table[i] = static_cast<int>(i);
    return Surjection(type_count, static_cast<int>(type_count), std::move(table));
}

Surjection threshold_surjection(int group_size, int t_threshold) {
    if (group_size < 1) {
        throw std::invalid_argument("group size must be positive");
    }
    if (t_threshold < 1 || t_threshold > group_size) {
        throw std::invalid_argument("threshold must lie in [1, group size]");
    }
    std::vector<int> table(static_cast<std::size_t>(group_size) + 1);
    for (int t = 0; t <= group_size; ++t) {
        table[static_cast<std::size_t>(t)] = (t >= t_threshold) ? 1 : 0;
    }
    const std::size_t count = table.size();
    return Surjection(count, 2, std::move(table));
}

Surjection all_ones_surjection(int group_size) {
    return threshold_surjection(group_size, 1);
}

Surjection majority_surjection(int group_size) {
    return threshold_surjection(group_size, (group_size + 1) / 2);
}

BestThreshold best_threshold(double p, int group_size,
                             const NoiseChannel& channel) {
    if (channel.alphabet_size() != 2) {
        throw std::invalid_argument("threshold scan requires a binary channel");
    }
    const auto joint = binary_joint_xt(p, group_size);
    BestThreshold best{0, -std::numeric_limits<double>::infinity()};
    for (int t = 1; t <= group_size; ++t) {
        const double v = verification_V(build_distributions(
            joint, threshold_surjection(group_size, t), channel));
        if (v > best.v) {
            best = {t, v};
        }
    }
    return best;
}

Surjection greedy_merge(const TypeModel& tm, const Surjection& r,
                        const NoiseChannel& channel, int target_size) {
    return greedy_merge(tm.joint_xt(), r, channel, target_size);
}

Surjection greedy_merge(const std::vector<std::vector<double>>& joint_xt,
                        const Surjection& r, const NoiseChannel& channel,
                        int target_size) {
    if (target_size < 2) {
        throw std::invalid_argument("target alphabet must have at least 2 symbols");
    }
    if (target_size > r.output_symbols()) {
        throw std::invalid_argument("target alphabet larger than current one");
    }
    Surjection current = r;
    while (current.output_symbols() > target_size) {
        const int k = current.output_symbols();
        double best_v = -std::numeric_limits<double>::infinity();
        std::pair<int, int> best_pair{-1, -1};
        for (int a = 0; a < k; ++a) {
            for (int b = a + 1; b < k; ++b) {
                // Merge b into a; symbols above b shift down by one.
                std::vector<int> m(static_cast<std::size_t>(k));
                for (int y = 0; y < k; ++y) {
                    int out = (y == b) ? a : y;
                    if (out > b) --out;
                    m[static_cast<std::size_t>(y)] = out;
                }
                Surjection candidate = current.then(
                    Surjection(static_cast<std::size_t>(k), k - 1, std::move(m)));
                const double v = verification_V(
                    build_distributions(joint_xt, candidate, channel));
                if (v > best_v + 1e-12) {
                    best_v = v;
                    best_pair = {a, b};
                }
            }
        }
        std::vector<int> m(static_cast<std::size_t>(k));
        for (int y = 0; y < k; ++y) {
            int out = (y == best_pair.second) ? best_pair.first : y;
            if (out > best_pair.second) --out;
            m[static_cast<std::size_t>(y)] = out;
        }
        current = current.then(
            Surjection(static_cast<std::size_t>(k), k - 1, std::move(m)));
    }
    return current;
}

namespace {

// Derivative of the binary entropy, log((1-x)/x); +inf at 0, -inf at 1.
double entropy_slope(double x) {
    return std::log1p(-x) - std::log(x);
}

// a*b with the convention that a zero coefficient kills an infinite factor.
double guarded_product(double a, double b) {
    return (a == 0.0) ? 0.0 : a * b;
}

}  // namespace

double probabilistic_surjection_V(double p, int group_size,
                                  const std::vector<double>& theta) {
    if (theta.size() != static_cast<std::size_t>(group_size) + 1) {
        throw std::invalid_argument("theta must have one entry per type");
    }
    for (double th : theta) {
        if (!(th >= 0.0) || th > 1.0) {
            throw std::invalid_argument("theta entries must lie in [0, 1]");
        }
    }
    const auto joint = binary_joint_xt(p, group_size);
    // Noiseless: Q = X, so the member joint is P(X=x, Y=y).
    std::vector<std::vector<double>> p1(2, std::vector<double>(2, 0.0));
    for (int x = 0; x < 2; ++x) {
        double on = 0.0;
        double total = 0.0;
        for (int t = 0; t <= group_size; ++t) {
            on += joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(t)] *
                  theta[static_cast<std::size_t>(t)];
            total += joint[static_cast<std::size_t>(x)][static_cast<std::size_t>(t)];
        }
        p1[static_cast<std::size_t>(x)][1] = on;
        p1[static_cast<std::size_t>(x)][0] = total - on;
    }
    SchemeDistributions dist;
    dist.p1 = p1;
    dist.pq = {p1[0][0] + p1[0][1], p1[1][0] + p1[1][1]};
    dist.py = {p1[0][0] + p1[1][0], p1[0][1] + p1[1][1]};
    dist.p0 = {{dist.pq[0] * dist.py[0], dist.pq[0] * dist.py[1]},
               {dist.pq[1] * dist.py[0], dist.pq[1] * dist.py[1]}};
    dist.pxy = p1;
    return verification_V(dist);
}

GradientReport surjection_gradient(double p, int group_size,
                                   const std::vector<double>& theta) {
    if (theta.size() != static_cast<std::size_t>(group_size) + 1) {
        throw std::invalid_argument("theta must have one entry per type");
    }
    for (double th : theta) {
        if (!(th >= 0.0) || th > 1.0) {
            throw std::invalid_argument("theta entries must lie in [0, 1]");
        }
    }
    const int n = group_size;
    const auto joint = binary_joint_xt(p, n);

    double y_given_x0 = 0.0, y_given_x1 = 0.0, y_marginal = 0.0;
    for (int t = 0; t <= n; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        y_given_x0 += joint[0][ts] * theta[ts];
        y_given_x1 += joint[1][ts] * theta[ts];
    }
    y_marginal = y_given_x0 + y_given_x1;
    y_given_x0 /= (1.0 - p);
    y_given_x1 /= p;

    const double a = entropy_slope(y_given_x0);
    const double b = entropy_slope(y_given_x1);
    const double g = entropy_slope(y_marginal);

    GradientReport report;
    report.diverged =
        !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(g);
    report.derivative.resize(static_cast<std::size_t>(n) + 1);
    for (int t = 0; t <= n; ++t) {
        const auto ts = static_cast<std::size_t>(t);
        const double pt = joint[0][ts] + joint[1][ts];
        report.derivative[ts] = guarded_product(pt, g) -
                                guarded_product(joint[0][ts], a) -
                                guarded_product(joint[1][ts], b);
    }
    report.k1 = a - b;
    if (std::isinf(a) && std::isfinite(b)) {
        report.k2 = 1.0;
    } else if (std::isfinite(a) && std::isinf(b)) {
        report.k2 = 0.0;
    } else {
        report.k2 = (a - g) / report.k1;
    }
    return report;
}

}  // namespace groupsketch
