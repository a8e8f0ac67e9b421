#include "groupsketch/bloom.hpp"

#include <cmath>
#include <stdexcept>

#include "groupsketch/infometrics.hpp"
#include "groupsketch/rng.hpp"

namespace groupsketch {

namespace {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

BloomFilter::BloomFilter(std::size_t bit_count, int hash_count,
                         std::uint64_t seed)
    : hash_count_(hash_count), seed_(seed), bits_(bit_count, 0) {
    if (bit_count == 0) {
        throw std::invalid_argument("filter must have at least one bit");
    }
    if (hash_count < 1) {
        throw std::invalid_argument("need at least one hash function");
    }
}

std::vector<std::size_t> BloomFilter::indices(std::string_view item) const {
    // One independent keyed hash per slot: double hashing's arithmetic
    // progressions correlate probe coverage enough to drift visibly from
    // the (1 - e^(-kn/m))^k false-positive law at test scale.
    const std::uint64_t digest = fnv1a(item);
    std::vector<std::size_t> out(static_cast<std::size_t>(hash_count_));
    for (int j = 0; j < hash_count_; ++j) {
        const std::uint64_t key =
            rng::derive(seed_, static_cast<std::uint64_t>(j) + 1);
        out[static_cast<std::size_t>(j)] =
            static_cast<std::size_t>(rng::mix(key, digest) % bits_.size());
    }
    return out;
}

std::vector<std::uint8_t> BloomFilter::indicator_sequence(
    std::string_view item) const {
    std::vector<std::uint8_t> seq(bits_.size(), 0);
    for (std::size_t i : indices(item)) seq[i] = 1;
    return seq;
}

void BloomFilter::insert(std::string_view item) {
    for (std::size_t i : indices(item)) bits_[i] = 1;
}

bool BloomFilter::contains(std::string_view item) const {
    for (std::size_t i : indices(item)) {
        if (!bits_[i]) return false;
    }
    return true;
}

int optimal_k(std::size_t bit_count, std::size_t item_count) {
    if (bit_count == 0 || item_count == 0) {
        throw std::invalid_argument("counts must be positive");
    }
    const double k = std::floor(std::log(2.0) * static_cast<double>(bit_count) /
                                static_cast<double>(item_count));
    return k < 1.0 ? 1 : static_cast<int>(k);
}

EquivalenceReport equivalence_report(int item_count, double epsilon) {
    if (item_count < 1) {
        throw std::invalid_argument("item count must be positive");
    }
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    }
    if (epsilon == 1.0) {
        return {0.0, 0, 0, true};
    }
    const double log2 = std::log(2.0);
    const double bound = -item_count * std::log(epsilon) / (log2 * log2);
    const long long bloom_m = static_cast<long long>(std::ceil(bound));
    // Same bound reached through the aggregation scheme: the all-ones setup
    // at p = log(2)/n has n V -> log(2)^2, so m >= -log(eps)/V.
    const auto limit = asymptotic_kappa(AsymptoticSetup::sparse_all1);
    const long long scheme_m =
        required_length(limit.kappa / item_count, epsilon);
    return {bound, bloom_m, scheme_m, false};
}

}  // namespace groupsketch
