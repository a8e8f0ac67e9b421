#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace groupsketch {

// Classic Bloom filter with k seeded independent hashes. Enrollment sets k
// bits per item, which is exactly the all-ones aggregation of per-item
// indicator sequences; contains() never reports a false negative.
class BloomFilter {
public:
    BloomFilter(std::size_t bit_count, int hash_count, std::uint64_t seed);

    std::size_t bit_count() const { return bits_.size(); }
    int hash_count() const { return hash_count_; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    void insert(std::string_view item);
    bool contains(std::string_view item) const;

    // The k bit positions an item maps to.
    std::vector<std::size_t> indices(std::string_view item) const;

    // The item's length-m indicator sequence: bit i set iff i is one of the
    // item's hash positions.
    std::vector<std::uint8_t> indicator_sequence(std::string_view item) const;

private:
    int hash_count_;
    std::uint64_t seed_;
    std::vector<std::uint8_t> bits_;
};

// floor(log(2) m / n), clamped to at least one hash.
int optimal_k(std::size_t bit_count, std::size_t item_count);

// Required lengths from the shared bound -n log(epsilon) / log(2)^2, derived
// once from the filter analysis and once from the verification information of
// the matching aggregation scheme.
struct EquivalenceReport {
    double bound;  // real-valued length bound; 0 when degenerate
    long long bloom_m;
    long long scheme_m;
    bool degenerate;  // epsilon = 1 admits length 0
};

EquivalenceReport equivalence_report(int item_count, double epsilon);

}  // namespace groupsketch
