#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "groupsketch/membership.hpp"
#include "groupsketch/rng.hpp"

using namespace groupsketch;

namespace {

std::vector<std::vector<std::uint8_t>> random_sequences(int n, int m,
                                                        int alphabet,
                                                        std::uint64_t seed) {
    rng::Stream s(seed);
    std::vector<std::vector<std::uint8_t>> out(static_cast<std::size_t>(n));
    for (auto& seq : out) {
        seq.resize(static_cast<std::size_t>(m));
        for (auto& sym : seq) {
            sym = static_cast<std::uint8_t>(
                s.next_below(static_cast<std::uint64_t>(alphabet)));
        }
    }
    return out;
}

SimulationConfig sequence_config() {
    SimulationConfig cfg;
    cfg.group_size = 8;
    cfg.seq_length = 64;
    cfg.group_count = 8;
    cfg.positive_queries = 8;
    cfg.negative_queries = 8;
    cfg.runs = 10;
    cfg.seed = 42;
    cfg.sequence = SequenceMode{2, 0.5, 0.2, 0.2, 0.0};
    return cfg;
}

}  // namespace

TEST_CASE("single-member enrollment is the sequence itself") {
    const auto tm = build_type_model(SourceModel(2, 0.3), 1);
    const std::vector<std::vector<std::uint8_t>> seqs = {{0, 1, 1, 0}};
    const auto rep = enroll(seqs, tm, identity_surjection(2));
    CHECK(rep.symbols == std::vector<int>{0, 1, 1, 0});
    CHECK(rep.output_symbols == 2);
}

TEST_CASE("enrollment ignores member order") {
    const auto tm = build_type_model(SourceModel(3, 0.2), 5);
    auto seqs = random_sequences(5, 32, 3, 7);
    const auto r = greedy_merge(tm, identity_surjection(tm.type_count()),
                                NoiseChannel::identity(3), 6);
    const auto rep = enroll(seqs, tm, r);

    rng::Stream shuffler(99);
    for (int trial = 0; trial < 5; ++trial) {
        for (std::size_t i = seqs.size(); i > 1; --i) {
            std::swap(seqs[i - 1], seqs[shuffler.next_below(i)]);
        }
        const auto shuffled = enroll(seqs, tm, r);
        CHECK(shuffled.symbols == rep.symbols);
    }
}

TEST_CASE("all-ones aggregation fires on any active symbol") {
    const std::vector<std::vector<std::uint8_t>> seqs = {
        {1, 0, 0}, {0, 0, 0}, {1, 0, 1}};
    const auto rep = enroll_binary(seqs, 3, all_ones_surjection(3));
    CHECK(rep.symbols == std::vector<int>{1, 0, 1});
}

TEST_CASE("binary enrollment fast path matches the general one") {
    const auto tm = build_type_model(SourceModel(2, 0.4), 6);
    const auto seqs = random_sequences(6, 48, 2, 13);
    for (const auto& r : {identity_surjection(7), majority_surjection(6),
                          all_ones_surjection(6)}) {
        const auto general = enroll(seqs, tm, r);
        const auto fast = enroll_binary(seqs, 6, r);
        CHECK(general.symbols == fast.symbols);
        CHECK(general.output_symbols == fast.output_symbols);
    }
}

TEST_CASE("enrollment validates its inputs") {
    const auto tm = build_type_model(SourceModel(2, 0.4), 2);
    CHECK_THROWS_AS(enroll({}, tm, identity_surjection(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(enroll({{0, 1}, {0}}, tm, identity_surjection(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(enroll({{0, 2}, {0, 1}}, tm, identity_surjection(3)),
                    std::invalid_argument);
    CHECK_THROWS_AS(enroll_binary({{0, 1}}, 2, identity_surjection(3)),
                    std::invalid_argument);
}

TEST_CASE("score table for the two-member balanced scheme") {
    const auto dist = build_distributions(binary_joint_xt(0.5, 2),
                                          identity_surjection(3),
                                          NoiseChannel::binary(0.0, 0.0));
    const auto table = make_score_table(dist);
    REQUIRE(table.llr.size() == 2);
    REQUIRE(table.llr[0].size() == 3);
    const double log2 = std::log(2.0);
    CHECK(table.llr[0][0] == doctest::Approx(log2).epsilon(1e-14));
    CHECK(table.llr[0][1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(table.llr[0][2] == kHardReject);
    CHECK(table.llr[1][0] == kHardReject);
    CHECK(table.llr[1][1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(table.llr[1][2] == doctest::Approx(log2).epsilon(1e-14));
}

TEST_CASE("scores add over index blocks") {
    const auto dist = build_distributions(binary_joint_xt(0.3, 4),
                                          majority_surjection(4),
                                          NoiseChannel::binary(0.1, 0.05));
    const auto table = make_score_table(dist);
    const auto seqs = random_sequences(4, 10, 2, 3);
    const auto rep = enroll_binary(seqs, 4, majority_surjection(4));
    const auto query = random_sequences(1, 10, 2, 4)[0];

    const double whole = score(query, rep, table);
    const GroupRepresentation head{{rep.symbols.begin(), rep.symbols.begin() + 4},
                                   rep.output_symbols};
    const GroupRepresentation tail{{rep.symbols.begin() + 4, rep.symbols.end()},
                                   rep.output_symbols};
    const double split =
        score(std::span(query).subspan(0, 4), head, table) +
        score(std::span(query).subspan(4), tail, table);
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));

    CHECK_THROWS_AS(score(std::span(query).subspan(0, 4), rep, table),
                    std::invalid_argument);
}

TEST_CASE("uninformative schemes score everything at zero") {
    const auto dist = build_distributions(binary_joint_xt(0.5, 4),
                                          identity_surjection(5),
                                          NoiseChannel::binary(0.5, 0.5));
    const auto table = make_score_table(dist);
    const auto seqs = random_sequences(4, 100, 2, 5);
    const auto rep = enroll_binary(seqs, 4, identity_surjection(5));
    const auto query = random_sequences(1, 100, 2, 6)[0];
    CHECK(std::abs(score(query, rep, table)) < 1e-10);
}

TEST_CASE("verification runs are reproducible") {
    const auto cfg = sequence_config();
    const auto a = run_verification(cfg);
    const auto b = run_verification(cfg);
    CHECK(a.positive_scores == b.positive_scores);
    CHECK(a.negative_scores == b.negative_scores);
    CHECK(a.threshold_tau == b.threshold_tau);
    CHECK(a.pfn_at_pfp == b.pfn_at_pfp);

    auto reseeded = cfg;
    reseeded.seed = 43;
    const auto c = run_verification(reseeded);
    CHECK(c.positive_scores != a.positive_scores);
}

TEST_CASE("operating point is honoured within sampling error") {
    const auto outcome = run_verification(sequence_config());
    CHECK(outcome.operating_pfp == 0.05);
    CHECK(std::abs(outcome.achieved_pfp - 0.05) <= 0.01);
    CHECK(outcome.pfn_at_pfp >= 0.0);
    CHECK(outcome.pfn_at_pfp <= 1.0);
    CHECK(outcome.positive_scores.size() == 10 * 8 * 8);
    CHECK(outcome.negative_scores.size() == 10 * 8 * 8);
}

TEST_CASE("sparse any-active scheme never misses enrolled members") {
    SimulationConfig cfg;
    cfg.group_size = 16;
    cfg.seq_length = 512;
    cfg.group_count = 4;
    cfg.positive_queries = 8;
    cfg.negative_queries = 8;
    cfg.runs = 5;
    cfg.seed = 11;
    cfg.surjection.kind = SurjectionChoice::Kind::all_ones;
    cfg.sequence = SequenceMode{2, std::log(2.0) / 16.0, 0.0, 0.0, 0.0};
    const auto outcome = run_verification(cfg);
    CHECK(outcome.pfn_at_pfp == 0.0);
    for (double s : outcome.positive_scores) CHECK(s > kHardReject);
}

TEST_CASE("null channel separates nothing") {
    // eta = 1/2 makes p1 equal p0 up to roundoff, so scores collapse to
    // numerical noise on both sides and the threshold sits in that noise.
    SimulationConfig cfg = sequence_config();
    cfg.sequence->eta0 = 0.5;
    cfg.sequence->eta1 = 0.5;
    cfg.runs = 10;
    const auto outcome = run_verification(cfg);
    REQUIRE(!outcome.positive_scores.empty());
    for (double s : outcome.positive_scores) CHECK(std::abs(s) < 1e-10);
    for (double s : outcome.negative_scores) CHECK(std::abs(s) < 1e-10);
    CHECK(std::abs(outcome.threshold_tau) < 1e-10);
    CHECK(outcome.scheme.verification < 1e-12);
}

TEST_CASE("longer sketches reduce false negatives") {
    double previous = 1.1;
    for (int m : {32, 64, 128}) {
        auto cfg = sequence_config();
        cfg.seq_length = m;
        const auto outcome = run_verification(cfg);
        CHECK(outcome.pfn_at_pfp < previous);
        previous = outcome.pfn_at_pfp;
    }
}

TEST_CASE("vector mode reports the scheme induced by its thresholds") {
    SimulationConfig cfg;
    cfg.group_size = 8;
    cfg.seq_length = 256;
    cfg.group_count = 4;
    cfg.positive_queries = 8;
    cfg.negative_queries = 8;
    cfg.runs = 5;
    cfg.seed = 3;
    cfg.vector = VectorMode{32, 0.0, 0.0, 0.83};
    const auto outcome = run_verification(cfg);

    const double e0 = induced_eta0(0.0, 0.0, 0.83);
    const double e1 = induced_eta1(0.0, 0.0, 0.83);
    const auto dist = build_distributions(binary_joint_xt(0.5, 8),
                                          identity_surjection(9),
                                          NoiseChannel::binary(e0, e1));
    CHECK(outcome.scheme.verification ==
          doctest::Approx(verification_V(dist)).epsilon(1e-12));
    CHECK(outcome.pfn_at_pfp >= 0.0);
    CHECK(outcome.pfn_at_pfp <= 1.0);

    const auto again = run_verification(cfg);
    CHECK(again.positive_scores == outcome.positive_scores);
}

TEST_CASE("vector mode accepts an explicit template pool") {
    SimulationConfig cfg;
    cfg.group_size = 4;
    cfg.seq_length = 128;
    cfg.group_count = 2;
    cfg.positive_queries = 4;
    cfg.negative_queries = 16;
    cfg.runs = 2;
    cfg.seed = 5;
    cfg.vector = VectorMode{16, 0.0, 0.0, 0.8};
    for (int i = 0; i < 8; ++i) {
        cfg.templates.push_back(
            sample_unit_vector(16, static_cast<std::uint64_t>(i)));
    }
    const auto a = run_verification(cfg);
    const auto b = run_verification(cfg);
    CHECK(a.positive_scores == b.positive_scores);

    cfg.templates.back().pop_back();
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);
}

TEST_CASE("config validation rejects inconsistent setups") {
    SimulationConfig cfg = sequence_config();
    cfg.vector = VectorMode{};
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);

    cfg = sequence_config();
    cfg.sequence.reset();
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);

    cfg = sequence_config();
    cfg.operating_pfp = 0.0;
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);

    cfg = sequence_config();
    cfg.runs = 1;
    cfg.group_count = 1;
    cfg.negative_queries = 1;
    CHECK_THROWS_AS(run_verification(cfg), std::invalid_argument);
}

TEST_CASE("false-positive exponent stays under the information bound") {
    const auto dist = build_distributions(binary_joint_xt(0.5, 4),
                                          identity_surjection(5),
                                          NoiseChannel::binary(0.0, 0.0));
    const std::vector<int> grid = {64, 128, 256, 512};
    const auto est = empirical_exponent(dist, grid, 4000, 0.9, 7);
    REQUIRE(est.points.size() == 4);
    CHECK(est.excluded.empty());
    const double v = verification_V(dist);
    CHECK(est.bound_v == doctest::Approx(v).epsilon(1e-13));
    CHECK(est.slope >= 0.5 * v);
    CHECK(est.slope <= v);
    for (const auto& point : est.points) {
        CHECK(point.pfp_hat > 0.0);
        CHECK(point.rate > 0.0);
    }
}

TEST_CASE("useless schemes have zero exponent") {
    const auto dist = build_distributions(binary_joint_xt(0.5, 4),
                                          identity_surjection(5),
                                          NoiseChannel::binary(0.5, 0.5));
    const std::vector<int> grid = {32, 64, 128};
    const auto est = empirical_exponent(dist, grid, 500, 0.5, 3);
    CHECK(std::abs(est.slope) < 1e-9);
    for (const auto& point : est.points) {
        CHECK(point.pfp_hat == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("exponent estimation validates its grid") {
    const auto dist = build_distributions(binary_joint_xt(0.5, 4),
                                          identity_surjection(5),
                                          NoiseChannel::binary(0.0, 0.0));
    const std::vector<int> bad = {128, 64};
    CHECK_THROWS_AS(empirical_exponent(dist, bad, 100, 0.9, 1),
                    std::invalid_argument);
    const std::vector<int> grid = {32};
    CHECK_THROWS_AS(empirical_exponent(dist, grid, 1, 0.9, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(empirical_exponent(dist, grid, 100, 1.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(empirical_exponent(dist, {}, 100, 0.9, 1),
                    std::invalid_argument);
}
