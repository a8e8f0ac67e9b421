#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "groupsketch/embedding.hpp"
#include "groupsketch/stats.hpp"

using namespace groupsketch;

TEST_CASE("activation probability and its inverse") {
    CHECK(activation_prob(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(activation_prob(3.0) ==
          doctest::Approx(0.0013498980316301).epsilon(1e-11));
    for (double p : {0.001, 0.05, std::log(2.0) / 16.0, 0.5, 0.9}) {
        CHECK(activation_prob(threshold_for_activation(p)) ==
              doctest::Approx(p).epsilon(1e-11));
    }
    CHECK(threshold_for_activation(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(threshold_for_activation(0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold_for_activation(1.0), std::invalid_argument);
}

TEST_CASE("zero-threshold flip rate has the arccos closed form") {
    for (double c : {0.2, 0.5, 0.8, 0.95}) {
        const double expected = std::acos(c) / std::acos(-1.0);
        CHECK(std::abs(induced_eta0(0.0, 0.0, c) - expected) <= 1e-8);
        CHECK(std::abs(induced_eta1(0.0, 0.0, c) - expected) <= 1e-8);
    }
}

TEST_CASE("uncorrelated queries factorize the flip rates") {
    for (double lq : {-0.5, 0.2, 0.7}) {
        CHECK(induced_eta0(0.3, lq, 0.0) ==
              doctest::Approx(1.0 - stats::normal_cdf(lq)).epsilon(1e-9));
        CHECK(induced_eta1(0.3, lq, 0.0) ==
              doctest::Approx(stats::normal_cdf(lq)).epsilon(1e-9));
    }
}

TEST_CASE("perfect correlation with equal thresholds is noiseless") {
    CHECK(induced_eta0(0.4, 0.4, 1.0) == 0.0);
    CHECK(induced_eta1(0.4, 0.4, 1.0) == 0.0);
    CHECK(induced_eta0(0.0, 0.0, 0.999999) < 1e-3);
}

TEST_CASE("flip rates move monotonically with the query threshold") {
    double prev_eta0 = 1.0, prev_eta1 = -1.0;
    for (double lq : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
        const double e0 = induced_eta0(0.2, lq, 0.6);
        const double e1 = induced_eta1(0.2, lq, 0.6);
        CHECK(e0 < prev_eta0);
        CHECK(e1 > prev_eta1);
        prev_eta0 = e0;
        prev_eta1 = e1;
    }
}

TEST_CASE("correlated pairs have exact geometry") {
    for (double c : {0.0, 0.5, 0.83, 1.0}) {
        const auto pair = sample_pair(c, 64, 17);
        double nx = 0.0, nq = 0.0, dot = 0.0;
        for (int i = 0; i < 64; ++i) {
            nx += pair.enrolled[static_cast<std::size_t>(i)] *
                  pair.enrolled[static_cast<std::size_t>(i)];
            nq += pair.query[static_cast<std::size_t>(i)] *
                  pair.query[static_cast<std::size_t>(i)];
            dot += pair.enrolled[static_cast<std::size_t>(i)] *
                   pair.query[static_cast<std::size_t>(i)];
        }
        CHECK(std::abs(nx - 1.0) < 1e-9);
        CHECK(std::abs(nq - 1.0) < 1e-9);
        CHECK(std::abs(dot - c) < 1e-9);
    }
    const auto same = sample_pair(1.0, 16, 3);
    for (int i = 0; i < 16; ++i) {
        CHECK(same.query[static_cast<std::size_t>(i)] ==
              doctest::Approx(same.enrolled[static_cast<std::size_t>(i)])
                  .epsilon(1e-12));
    }
    CHECK_THROWS_AS(sample_pair(1.5, 8, 1), std::invalid_argument);
}

TEST_CASE("embedding is deterministic and shares prefixes across lengths") {
    const auto v = sample_unit_vector(32, 5);
    const Embedding short_cfg(EmbeddingConfig{32, 64, 0.0, 0.0, 9});
    const Embedding long_cfg(EmbeddingConfig{32, 128, 0.0, 0.0, 9});
    const auto a = short_cfg.embed_enrolled(v);
    const auto b = long_cfg.embed_enrolled(v);
    REQUIRE(a.size() == 64);
    REQUIRE(b.size() == 128);
    for (std::size_t i = 0; i < 64; ++i) CHECK(a[i] == b[i]);
    CHECK(a == short_cfg.embed_enrolled(v));

    const Embedding other_seed(EmbeddingConfig{32, 64, 0.0, 0.0, 10});
    CHECK(other_seed.embed_enrolled(v) != a);
}

TEST_CASE("embedding rejects non-unit vectors") {
    const Embedding e(EmbeddingConfig{8, 4, 0.0, 0.0, 1});
    std::vector<double> v(8, 0.5);  // norm sqrt(2)
    CHECK_THROWS_AS(e.embed_enrolled(v), std::invalid_argument);
    CHECK_THROWS_AS(e.embed_enrolled(std::vector<double>(4, 0.5)),
                    std::invalid_argument);
}

TEST_CASE("ones rate follows the threshold") {
    const int m = 1000000;
    const auto v = sample_unit_vector(2, 21);

    const Embedding balanced(EmbeddingConfig{2, m, 0.0, 0.0, 33});
    const auto bits = balanced.embed_enrolled(v);
    long long ones = 0;
    for (auto b : bits) ones += b;
    const double sigma = std::sqrt(0.25 / m);
    CHECK(std::abs(ones / static_cast<double>(m) - 0.5) <= 3.0 * sigma);

    const Embedding extreme(EmbeddingConfig{2, m, 10.0, 10.0, 33});
    const auto rare = extreme.embed_enrolled(v);
    long long hits = 0;
    for (auto b : rare) hits += b;
    CHECK(hits / static_cast<double>(m) <= 1e-6);
}

TEST_CASE("monte carlo flip rates match the quadrature") {
    const int m = 200000;
    const double c = 0.8;
    const auto pair = sample_pair(c, 24, 77);
    const Embedding e(EmbeddingConfig{24, m, 0.0, 0.0, 101});
    const auto ex = e.embed_enrolled(pair.enrolled);
    const auto eq = e.embed_query(pair.query);

    long long zeros = 0, zero_to_one = 0, ones = 0, one_to_zero = 0;
    for (int i = 0; i < m; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (ex[idx] == 0) {
            ++zeros;
            zero_to_one += eq[idx];
        } else {
            ++ones;
            one_to_zero += eq[idx] == 0 ? 1 : 0;
        }
    }
    const double eta0 = induced_eta0(0.0, 0.0, c);
    const double eta1 = induced_eta1(0.0, 0.0, c);
    const double rate0 = zero_to_one / static_cast<double>(zeros);
    const double rate1 = one_to_zero / static_cast<double>(ones);
    CHECK(std::abs(rate0 - eta0) <=
          3.0 * std::sqrt(eta0 * (1.0 - eta0) / zeros));
    CHECK(std::abs(rate1 - eta1) <=
          3.0 * std::sqrt(eta1 * (1.0 - eta1) / ones));
}

TEST_CASE("dense identity grid search peaks at zero thresholds") {
    const auto grid = default_lambda_grid();
    REQUIRE(grid.size() == 41);
    CHECK(grid.front() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(grid.back() == doctest::Approx(2.0).epsilon(1e-12));

    const auto best =
        grid_search(0.8, 15, SurjectionFamily::identity, grid, grid);
    CHECK(best.lambda_x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(best.lambda_q == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(best.p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(best.threshold == 0);
    CHECK(best.v > 0.0);
}

TEST_CASE("all-ones grid search goes sparse at high correlation") {
    const auto grid = default_lambda_grid();
    const auto best =
        grid_search(0.99, 15, SurjectionFamily::all_ones, grid, grid);
    CHECK(std::abs(best.p - 1.0 / 15.0) <= 0.03);
    CHECK(best.lambda_q >= best.lambda_x);
}

TEST_CASE("grid search degenerate cases") {
    const std::vector<double> point = {0.3};
    const auto fixed =
        grid_search(0.7, 8, SurjectionFamily::majority, point, point);
    CHECK(fixed.lambda_x == 0.3);
    CHECK(fixed.lambda_q == 0.3);
    CHECK(fixed.threshold >= 1);

    CHECK_THROWS_AS(grid_search(0.7, 8, SurjectionFamily::identity, {}, point),
                    std::invalid_argument);
    // The activation probability underflows to exact zero near lambda = 40,
    // so every grid point is degenerate and the scan has no usable result.
    const std::vector<double> hopeless = {40.0};
    CHECK_THROWS_AS(
        grid_search(0.7, 8, SurjectionFamily::identity, hopeless, hopeless),
        std::domain_error);
}

TEST_CASE("best-threshold family reports its threshold") {
    const std::vector<double> small = {-0.5, 0.0, 0.5};
    const auto best =
        grid_search(0.9, 9, SurjectionFamily::best_threshold, small, small);
    CHECK(best.threshold >= 1);
    CHECK(best.threshold <= 9);
    const auto identity =
        grid_search(0.9, 9, SurjectionFamily::identity, small, small);
    CHECK(best.v <= identity.v + 1e-12);
}
