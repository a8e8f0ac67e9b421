#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "groupsketch/bloom.hpp"
#include "groupsketch/membership.hpp"
#include "groupsketch/surjection.hpp"

using namespace groupsketch;

namespace {

std::string item(int i) { return "item-" + std::to_string(i); }

}  // namespace

TEST_CASE("inserted items are always found") {
    BloomFilter filter(1024, 11, 1);
    CHECK_FALSE(filter.contains("a"));
    filter.insert("a");
    CHECK(filter.contains("a"));

    for (int i = 0; i < 500; ++i) filter.insert(item(i));
    for (int i = 0; i < 500; ++i) CHECK(filter.contains(item(i)));
}

TEST_CASE("hash positions are deterministic and in range") {
    const BloomFilter filter(257, 7, 9);
    const auto a = filter.indices("payload");
    CHECK(a == filter.indices("payload"));
    CHECK(a.size() == 7);
    for (auto idx : a) CHECK(idx < 257);

    const BloomFilter reseeded(257, 7, 10);
    CHECK(reseeded.indices("payload") != a);
}

TEST_CASE("filter construction rejects empty geometry") {
    CHECK_THROWS_AS(BloomFilter(0, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(BloomFilter(64, 0, 1), std::invalid_argument);
}

TEST_CASE("optimal hash count") {
    CHECK(optimal_k(1024, 64) == 11);
    CHECK(optimal_k(64, 64) == 1);
    CHECK(optimal_k(640, 64) == 6);
    CHECK_THROWS_AS(optimal_k(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(optimal_k(4, 0), std::invalid_argument);
}

TEST_CASE("false-positive rate matches the classic formula") {
    const std::size_t m = 1024;
    const int n = 64;
    const int k = optimal_k(m, static_cast<std::size_t>(n));
    const int probes = 100000;
    const double predicted =
        std::pow(1.0 - std::exp(-static_cast<double>(k) * n / m),
                 static_cast<double>(k));
    for (std::uint64_t seed : {1, 2}) {
        BloomFilter filter(m, k, seed);
        for (int i = 0; i < n; ++i) filter.insert(item(i));
        int hits = 0;
        for (int i = 0; i < probes; ++i) {
            hits += filter.contains("probe-" + std::to_string(i)) ? 1 : 0;
        }
        const double rate = hits / static_cast<double>(probes);
        const double sigma = std::sqrt(predicted * (1.0 - predicted) / probes);
        CHECK(std::abs(rate - predicted) <= 3.0 * sigma);
    }
}

TEST_CASE("enrolling indicator sequences reproduces the filter bit for bit") {
    const std::size_t m = 512;
    const int n = 32;
    BloomFilter filter(m, 9, 4);
    std::vector<std::vector<std::uint8_t>> indicators;
    for (int i = 0; i < n; ++i) {
        filter.insert(item(i));
        indicators.push_back(filter.indicator_sequence(item(i)));
    }
    const auto rep = enroll_binary(indicators, n, all_ones_surjection(n));
    REQUIRE(rep.symbols.size() == m);
    for (std::size_t i = 0; i < m; ++i) {
        CHECK(rep.symbols[i] == static_cast<int>(filter.bits()[i]));
    }
}

TEST_CASE("length bounds from both analyses coincide") {
    const auto report = equivalence_report(64, 0.05);
    CHECK_FALSE(report.degenerate);
    const double log2 = std::log(2.0);
    CHECK(report.bound ==
          doctest::Approx(-64.0 * std::log(0.05) / (log2 * log2))
              .epsilon(1e-12));
    CHECK(report.bloom_m == report.scheme_m);
    CHECK(report.bloom_m == 400);

    const auto unit = equivalence_report(1, 0.7);
    CHECK(unit.bloom_m == 1);
    CHECK(unit.scheme_m == 1);
}

TEST_CASE("certain-epsilon report degenerates to length zero") {
    const auto report = equivalence_report(64, 1.0);
    CHECK(report.degenerate);
    CHECK(report.bound == 0.0);
    CHECK(report.bloom_m == 0);
    CHECK(report.scheme_m == 0);
}

TEST_CASE("equivalence report validates inputs") {
    CHECK_THROWS_AS(equivalence_report(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(equivalence_report(8, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(equivalence_report(8, 1.5), std::invalid_argument);
}
