#include "groupsketch/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace groupsketch {

nlohmann::json surjection_to_json(const Surjection& r) {
    return nlohmann::json(r.table());
}

Surjection surjection_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("surjection table must be a nonempty array");
    }
    std::vector<int> table;
    table.reserve(j.size());
    int max_symbol = -1;
    for (const auto& entry : j) {
        if (!entry.is_number_integer()) {
            throw std::invalid_argument("surjection table entries must be integers");
        }
        const int y = entry.get<int>();
        table.push_back(y);
        max_symbol = std::max(max_symbol, y);
    }
    const std::size_t count = table.size();
    return Surjection(count, max_symbol + 1, std::move(table));
}

namespace {

std::string kind_name(SurjectionChoice::Kind kind) {
    switch (kind) {
        case SurjectionChoice::Kind::identity: return "identity";
        case SurjectionChoice::Kind::all_ones: return "all1";
        case SurjectionChoice::Kind::majority: return "majority";
        case SurjectionChoice::Kind::greedy: return "greedy";
    }
    throw std::invalid_argument("unknown surjection kind");
}

SurjectionChoice choice_from_string(const std::string& text) {
    SurjectionChoice choice;
    if (text == "identity") {
        choice.kind = SurjectionChoice::Kind::identity;
    } else if (text == "all1") {
        choice.kind = SurjectionChoice::Kind::all_ones;
    } else if (text == "majority") {
        choice.kind = SurjectionChoice::Kind::majority;
    } else if (text.rfind("greedy:", 0) == 0) {
        choice.kind = SurjectionChoice::Kind::greedy;
        try {
            choice.greedy_target = std::stoi(text.substr(7));
        } catch (const std::exception&) {
            throw std::invalid_argument("greedy surjection needs an integer target");
        }
    } else {
        throw std::invalid_argument("unknown surjection: " + text);
    }
    return choice;
}

}  // namespace

nlohmann::json config_to_json(const SimulationConfig& cfg) {
    nlohmann::json j = {
        {"schema", "groupsketch.simulation/1"},
        {"group_size", cfg.group_size},
        {"seq_length", cfg.seq_length},
        {"group_count", cfg.group_count},
        {"positive_queries", cfg.positive_queries},
        {"negative_queries", cfg.negative_queries},
        {"runs", cfg.runs},
        {"seed", cfg.seed},
        {"operating_pfp", cfg.operating_pfp},
    };
    std::string surjection = kind_name(cfg.surjection.kind);
    if (cfg.surjection.kind == SurjectionChoice::Kind::greedy) {
        surjection += ":" + std::to_string(cfg.surjection.greedy_target);
    }
    j["surjection"] = surjection;
    if (cfg.sequence) {
        j["sequence"] = {{"alphabet_size", cfg.sequence->alphabet_size},
                         {"activation_prob", cfg.sequence->activation_prob},
                         {"eta0", cfg.sequence->eta0},
                         {"eta1", cfg.sequence->eta1},
                         {"eta2", cfg.sequence->eta2}};
    }
    if (cfg.vector) {
        j["vector"] = {{"dim", cfg.vector->dim},
                       {"lambda_x", cfg.vector->lambda_x},
                       {"lambda_q", cfg.vector->lambda_q},
                       {"correlation", cfg.vector->correlation}};
    }
    if (!cfg.templates_path.empty()) {
        j["templates_path"] = cfg.templates_path;
    }
    return j;
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const char* name, T fallback) {
    if (!j.contains(name)) return fallback;
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw std::invalid_argument(std::string("config field has wrong type: ") +
                                    name);
    }
}

}  // namespace

SimulationConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }
    SimulationConfig cfg;
    cfg.group_size = field(j, "group_size", cfg.group_size);
    cfg.seq_length = field(j, "seq_length", cfg.seq_length);
    cfg.group_count = field(j, "group_count", cfg.group_count);
    cfg.positive_queries = field(j, "positive_queries", cfg.positive_queries);
    cfg.negative_queries = field(j, "negative_queries", cfg.negative_queries);
    cfg.runs = field(j, "runs", cfg.runs);
    cfg.seed = field(j, "seed", cfg.seed);
    cfg.operating_pfp = field(j, "operating_pfp", cfg.operating_pfp);
    cfg.surjection =
        choice_from_string(field<std::string>(j, "surjection", "identity"));
    if (j.contains("sequence")) {
        const auto& s = j.at("sequence");
        SequenceMode mode;
        mode.alphabet_size = field(s, "alphabet_size", mode.alphabet_size);
        mode.activation_prob = field(s, "activation_prob", mode.activation_prob);
        mode.eta0 = field(s, "eta0", mode.eta0);
        mode.eta1 = field(s, "eta1", mode.eta1);
        mode.eta2 = field(s, "eta2", mode.eta2);
        cfg.sequence = mode;
    }
    if (j.contains("vector")) {
        const auto& v = j.at("vector");
        VectorMode mode;
        mode.dim = field(v, "dim", mode.dim);
        mode.lambda_x = field(v, "lambda_x", mode.lambda_x);
        mode.lambda_q = field(v, "lambda_q", mode.lambda_q);
        mode.correlation = field(v, "correlation", mode.correlation);
        cfg.vector = mode;
    }
    cfg.templates_path = field(j, "templates_path", cfg.templates_path);
    return cfg;
}

ScoreHistogram make_histogram(std::span<const double> scores, double lo,
                              double hi) {
    ScoreHistogram hist;
    hist.lo = lo;
    hist.hi = hi;
    hist.counts.assign(ScoreHistogram::kBins, 0);
    hist.total = static_cast<long long>(scores.size());
    const double width = hi > lo ? hi - lo : 1.0;
    for (double s : scores) {
        if (s <= kHardReject) {
            ++hist.hard_rejects;
            continue;
        }
        int bin = static_cast<int>((s - lo) / width * ScoreHistogram::kBins);
        bin = std::clamp(bin, 0, ScoreHistogram::kBins - 1);
        ++hist.counts[static_cast<std::size_t>(bin)];
    }
    return hist;
}

namespace {

nlohmann::json histogram_to_json(const ScoreHistogram& hist) {
    return {{"bin_count", ScoreHistogram::kBins},
            {"lo", hist.lo},
            {"hi", hist.hi},
            {"hard_rejects", hist.hard_rejects},
            {"total", hist.total},
            {"counts", hist.counts}};
}

}  // namespace

nlohmann::json outcome_to_json(const VerificationOutcome& outcome,
                               const SimulationConfig& cfg) {
    double lo = 0.0, hi = 0.0;
    bool seen = false;
    const auto scan = [&](std::span<const double> scores) {
        for (double s : scores) {
            if (s <= kHardReject) continue;
            if (!seen) {
                lo = hi = s;
                seen = true;
            } else {
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
        }
    };
    scan(outcome.positive_scores);
    scan(outcome.negative_scores);

    return {{"schema", "groupsketch.outcome/1"},
            {"config", config_to_json(cfg)},
            {"pfn_at_pfp", outcome.pfn_at_pfp},
            {"threshold_tau", outcome.threshold_tau},
            {"operating_pfp", outcome.operating_pfp},
            {"achieved_pfp", outcome.achieved_pfp},
            {"scheme",
             {{"compactness", outcome.scheme.compactness},
              {"security", outcome.scheme.security},
              {"verification", outcome.scheme.verification},
              {"source_entropy", outcome.scheme.source_entropy}}},
            {"positives",
             histogram_to_json(make_histogram(outcome.positive_scores, lo, hi))},
            {"negatives",
             histogram_to_json(make_histogram(outcome.negative_scores, lo, hi))}};
}

}  // namespace groupsketch
