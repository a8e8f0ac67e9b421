#pragma once

#include <string>

#include "json.hpp"

#include "groupsketch/membership.hpp"
#include "groupsketch/surjection.hpp"

namespace groupsketch {

// Surjection tables travel as plain JSON arrays, type index -> output symbol.
nlohmann::json surjection_to_json(const Surjection& r);
Surjection surjection_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SimulationConfig& cfg);
SimulationConfig config_from_json(const nlohmann::json& j);

struct ScoreHistogram {
    static constexpr int kBins = 256;
    double lo = 0.0;
    double hi = 0.0;
    long long hard_rejects = 0;
    long long total = 0;
    std::vector<long long> counts;  // kBins entries
};

// Histogram over the finite scores; hard rejects counted separately.
ScoreHistogram make_histogram(std::span<const double> scores, double lo,
                              double hi);

// Full outcome record with the config echoed back, so a run can be
// reproduced from its own output file.
nlohmann::json outcome_to_json(const VerificationOutcome& outcome,
                               const SimulationConfig& cfg);

}  // namespace groupsketch
