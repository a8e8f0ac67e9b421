#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "groupsketch/channel.hpp"
#include "groupsketch/source_model.hpp"

using namespace groupsketch;

TEST_CASE("binary channel matrices by direct substitution") {
    const auto noiseless = NoiseChannel::binary(0.0, 0.0);
    CHECK(noiseless(0, 0) == 1.0);
    CHECK(noiseless(1, 0) == 0.0);
    CHECK(noiseless(0, 1) == 0.0);
    CHECK(noiseless(1, 1) == 1.0);
    CHECK(noiseless.noiseless());

    const auto null = NoiseChannel::binary(0.5, 0.5);
    for (int x = 0; x < 2; ++x) {
        CHECK(null(0, x) == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(null(1, x) == doctest::Approx(0.5).epsilon(1e-15));
    }

    const auto skew = NoiseChannel::binary(0.1, 0.2);
    CHECK(skew(0, 0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(skew(1, 0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(skew(0, 1) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(skew(1, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK_FALSE(skew.noiseless());
}

TEST_CASE("channel construction rejects out-of-range rates") {
    CHECK_THROWS_AS(NoiseChannel::binary(-0.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::binary(1.1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(NoiseChannel::binary(0.0, 1.5), std::invalid_argument);
    // eta0 spread across 3 active symbols cannot exceed 1/(|X|-1).
    CHECK_THROWS_AS(NoiseChannel::symmetric(4, 0.4, 0.0), std::invalid_argument);
    CHECK_NOTHROW(NoiseChannel::symmetric(4, 1.0 / 3.0, 0.0));
}

TEST_CASE("wide channel keeps the zero-symbol symmetry") {
    const auto chan = NoiseChannel::symmetric(4, 0.05, 0.1, 0.02);
    for (int s = 1; s < 4; ++s) {
        CHECK(chan(s, 0) == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(chan(0, s) == doctest::Approx(0.1).epsilon(1e-14));
    }
    for (int x = 0; x < 4; ++x) {
        double row = 0.0;
        for (int q = 0; q < 4; ++q) row += chan(q, x);
        CHECK(row == doctest::Approx(1.0).epsilon(1e-12));
    }
    // Cross errors between distinct active symbols.
    CHECK(chan(2, 1) == doctest::Approx(0.02).epsilon(1e-14));
    CHECK(chan(1, 3) == doctest::Approx(0.02).epsilon(1e-14));
}

TEST_CASE("identity channel is noiseless at any width") {
    const auto chan = NoiseChannel::identity(5);
    CHECK(chan.noiseless());
    for (int x = 0; x < 5; ++x) {
        for (int q = 0; q < 5; ++q) {
            CHECK(chan(q, x) == (q == x ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("query marginal hand cases") {
    const SourceModel dense(2, 0.5);
    const auto identity = query_marginal(dense, NoiseChannel::binary(0.0, 0.0));
    CHECK(identity[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(identity[1] == doctest::Approx(0.5).epsilon(1e-15));

    const auto balanced = query_marginal(dense, NoiseChannel::binary(0.1, 0.1));
    CHECK(balanced[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(balanced[1] == doctest::Approx(0.5).epsilon(1e-15));

    const SourceModel skew(2, 0.2);
    const auto mixed = query_marginal(skew, NoiseChannel::binary(0.1, 0.3));
    CHECK(mixed[0] == doctest::Approx(0.78).epsilon(1e-15));
    CHECK(mixed[1] == doctest::Approx(0.22).epsilon(1e-15));
}

TEST_CASE("query marginal is a distribution and noiseless passthrough") {
    const SourceModel m(4, 0.08);
    const auto chan = NoiseChannel::symmetric(4, 0.03, 0.2, 0.01);
    const auto pq = query_marginal(m, chan);
    double total = 0.0;
    for (double mass : pq) total += mass;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const auto clean = query_marginal(m, NoiseChannel::identity(4));
    for (int s = 0; s < 4; ++s) {
        CHECK(clean[static_cast<std::size_t>(s)] ==
              doctest::Approx(m.symbol_prob(s)).epsilon(1e-14));
    }
}

TEST_CASE("query marginal rejects mismatched alphabets") {
    const SourceModel m(3, 0.1);
    CHECK_THROWS_AS(query_marginal(m, NoiseChannel::binary(0.1, 0.1)),
                    std::invalid_argument);
}
