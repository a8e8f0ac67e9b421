#include "groupsketch/infometrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "groupsketch/errors.hpp"
#include "groupsketch/stats.hpp"

namespace groupsketch {

double binary_entropy(double p) {
    if (!(p >= 0.0) || p > 1.0) {
        throw std::invalid_argument("probability out of [0, 1]");
    }
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
    return h;
}

SchemeDistributions build_distributions(
    const std::vector<std::vector<double>>& joint_xt, const Surjection& r,
    const NoiseChannel& channel) {
    const auto kx = joint_xt.size();
    if (kx == 0 || kx != static_cast<std::size_t>(channel.alphabet_size())) {
        throw std::invalid_argument("enrolled alphabet does not match channel");
    }
    const auto n_types = joint_xt[0].size();
    if (r.type_count() != n_types) {
        throw std::invalid_argument("surjection does not cover the type space");
    }
    const auto ky = static_cast<std::size_t>(r.output_symbols());

    SchemeDistributions dist;
    dist.pxy.assign(kx, std::vector<double>(ky, 0.0));
    for (std::size_t x = 0; x < kx; ++x) {
        if (joint_xt[x].size() != n_types) {
            throw std::invalid_argument("ragged joint law");
        }
        for (std::size_t t = 0; t < n_types; ++t) {
            dist.pxy[x][static_cast<std::size_t>(r(t))] += joint_xt[x][t];
        }
    }
    dist.py.assign(ky, 0.0);
    for (std::size_t x = 0; x < kx; ++x) {
        for (std::size_t y = 0; y < ky; ++y) dist.py[y] += dist.pxy[x][y];
    }
    dist.p1.assign(kx, std::vector<double>(ky, 0.0));
    dist.pq.assign(kx, 0.0);
    for (std::size_t q = 0; q < kx; ++q) {
        for (std::size_t x = 0; x < kx; ++x) {
            const double w = channel(static_cast<int>(q), static_cast<int>(x));
            if (w == 0.0) continue;
            for (std::size_t y = 0; y < ky; ++y) {
                dist.p1[q][y] += dist.pxy[x][y] * w;
            }
        }
        for (std::size_t y = 0; y < ky; ++y) dist.pq[q] += dist.p1[q][y];
    }
    dist.p0.assign(kx, std::vector<double>(ky, 0.0));
    for (std::size_t q = 0; q < kx; ++q) {
        for (std::size_t y = 0; y < ky; ++y) {
            dist.p0[q][y] = dist.pq[q] * dist.py[y];
        }
    }
    return dist;
}

SchemeDistributions build_distributions(const TypeModel& tm,
                                        const Surjection& r,
                                        const NoiseChannel& channel) {
    return build_distributions(tm.joint_xt(), r, channel);
}

double verification_V(const SchemeDistributions& dist) {
    double v = 0.0;
    for (std::size_t q = 0; q < dist.p1.size(); ++q) {
        for (std::size_t y = 0; y < dist.p1[q].size(); ++y) {
            const double p1 = dist.p1[q][y];
            if (p1 == 0.0) continue;
            const double p0 = dist.p0[q][y];
            if (p0 == 0.0) {
                throw DistributionInconsistency(
                    "outcome possible under the member hypothesis but not the "
                    "impostor hypothesis");
            }
            v += p1 * std::log(p1 / p0);
        }
    }
    // Exact zero divergence can round to a tiny negative sum.
    return v < 0.0 && v > -1e-15 ? 0.0 : v;
}

double compactness_C(const SchemeDistributions& dist) {
    return stats::entropy(dist.py);
}

double security_S(const SchemeDistributions& dist, const SourceModel& model) {
    if (dist.pxy.size() != static_cast<std::size_t>(model.alphabet_size())) {
        throw std::invalid_argument("source does not match distributions");
    }
    return security_S(dist);
}

double security_S(const SchemeDistributions& dist) {
    // H(X|Y) as the equivocation sum over the joint law.
    double s = 0.0;
    for (std::size_t x = 0; x < dist.pxy.size(); ++x) {
        for (std::size_t y = 0; y < dist.pxy[x].size(); ++y) {
            const double pxy = dist.pxy[x][y];
            if (pxy == 0.0) continue;
            s += pxy * std::log(dist.py[y] / pxy);
        }
    }
    return s < 0.0 && s > -1e-15 ? 0.0 : s;
}

Metrics compute_metrics(const TypeModel& tm, const Surjection& r,
                        const NoiseChannel& channel) {
    const auto dist = build_distributions(tm, r, channel);
    return Metrics{compactness_C(dist), security_S(dist, tm.source()),
                   verification_V(dist), tm.source().symbol_entropy()};
}

long long required_length(double v_nats, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    }
    if (!(v_nats > 0.0)) {
        throw std::domain_error(
            "verification information is not positive; no length achieves the "
            "requirement");
    }
    const double bound = -std::log(epsilon) / v_nats;
    return static_cast<long long>(std::ceil(bound));
}

AsymptoticConstant asymptotic_kappa(AsymptoticSetup setup) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double log2 = std::log(2.0);
    switch (setup) {
        case AsymptoticSetup::dense_type:
            return {"p = 1/2", nan, 0.5};
        case AsymptoticSetup::sparse_type:
            return {"p = 1.338/n", 1.338, 0.580};
        case AsymptoticSetup::dense_majority:
            return {"p = 1/2", nan, 1.0 / std::acos(-1.0)};
        case AsymptoticSetup::sparse_all1:
            return {"p = log(2)/n", log2, log2 * log2};
    }
    throw std::invalid_argument("unknown asymptotic setup");
}

double dense_compactness_approx(int group_size) {
    const double pi = std::acos(-1.0);
    return 0.5 * std::log(pi * std::exp(1.0) * group_size / 2.0);
}

double sparse_compactness_approx(double alpha, int series_terms) {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("alpha must be positive");
    }
    // H(Poisson(alpha)) = alpha(1 - log alpha) + e^-alpha sum_j alpha^j log(j!)/j!
    // Terms decay like alpha^j/j! so truncation error is below the first
    // omitted term; series_terms = 50 puts it far under 1e-12 for alpha <= 5.
    double series = 0.0;
    double log_j_factorial = 0.0;
    double weight = 1.0;  // alpha^j / j!
    for (int j = 1; j <= series_terms; ++j) {
        log_j_factorial += std::log(static_cast<double>(j));
        weight *= alpha / j;
        series += weight * log_j_factorial;
    }
    return alpha * (1.0 - std::log(alpha)) + std::exp(-alpha) * series;
}

std::vector<NoiseSensitivityPoint> noise_sensitivity(
    const TypeModel& tm, const Surjection& r,
    const std::vector<double>& eta0_grid, double eta1) {
    if (tm.source().alphabet_size() != 2) {
        throw std::invalid_argument("noise sweep requires a binary alphabet");
    }
    std::vector<NoiseSensitivityPoint> out;
    out.reserve(eta0_grid.size());
    for (double eta0 : eta0_grid) {
        const double v = verification_V(
            build_distributions(tm, r, NoiseChannel::binary(eta0, eta1)));
        // One-sided step; the derivative can diverge at eta0 = 0, so a
        // symmetric difference is not available there.
        const double h = std::max(eta0 / 10.0, 1e-9);
        const double v_step = verification_V(
            build_distributions(tm, r, NoiseChannel::binary(eta0 + h, eta1)));
        out.push_back({eta0, v, (v_step - v) / h});
    }
    return out;
}

}  // namespace groupsketch
