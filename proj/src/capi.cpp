#include "groupsketch.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "groupsketch/bloom.hpp"
#include "groupsketch/channel.hpp"
#include "groupsketch/embedding.hpp"
#include "groupsketch/errors.hpp"
#include "groupsketch/infometrics.hpp"
#include "groupsketch/membership.hpp"
#include "groupsketch/serialize.hpp"
#include "groupsketch/source_model.hpp"
#include "groupsketch/surjection.hpp"

namespace gs = groupsketch;

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

gs_status fail(gs_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

// Runs fn inside the exception-to-status translation shared by every entry
// point.
template <typename Fn>
gs_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const gs::EnumerationCapExceeded& e) {
        return fail(GS_ERR_CAP_EXCEEDED, e.what());
    } catch (const gs::DistributionInconsistency& e) {
        return fail(GS_ERR_INCONSISTENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(GS_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(GS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(GS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(GS_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception& e) {
        return fail(GS_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(GS_ERR_INTERNAL, "unknown error");
    }
}

gs_status require(bool ok, const char* message) {
    return ok ? GS_OK : fail(GS_ERR_INVALID_ARGUMENT, message);
}

}  // namespace

struct gs_scheme {
    gs::TypeModel type_model;
    gs::Surjection surjection;
    gs::NoiseChannel channel;
    gs::SchemeDistributions dist;
};

struct gs_bloom {
    gs::BloomFilter filter;
};

extern "C" {

const char* gs_version(void) { return "0.1.0"; }

const char* gs_last_error(void) { return g_last_error.c_str(); }

void gs_string_free(char* s) { delete[] s; }

gs_status gs_scheme_create(const gs_scheme_params* params, gs_scheme** out) {
    if (gs_status s = require(params && out, "null argument"); s != GS_OK) {
        return s;
    }
    return guarded([&] {
        const gs::SourceModel model(params->alphabet_size,
                                    params->activation_prob);
        const auto tm = gs::build_type_model(model, params->group_size);
        const auto channel = gs::NoiseChannel::symmetric(
            params->alphabet_size, params->eta0, params->eta1, params->eta2);

        const std::string spec =
            params->surjection ? params->surjection : "identity";
        if (params->alphabet_size != 2 && spec != "identity" &&
            spec.rfind("greedy:", 0) != 0) {
            throw std::invalid_argument(
                "threshold surjections require a binary alphabet");
        }
        std::optional<gs::Surjection> r;
        if (spec == "identity") {
            r = gs::identity_surjection(tm.type_count());
        } else if (spec == "all1") {
            r = gs::all_ones_surjection(params->group_size);
        } else if (spec == "majority") {
            r = gs::majority_surjection(params->group_size);
        } else if (spec.rfind("threshold:", 0) == 0) {
            r = gs::threshold_surjection(params->group_size,
                                         std::stoi(spec.substr(10)));
        } else if (spec == "best") {
            const auto scan = gs::best_threshold(params->activation_prob,
                                                 params->group_size, channel);
            r = gs::threshold_surjection(params->group_size, scan.threshold);
        } else if (spec.rfind("greedy:", 0) == 0) {
            r = gs::greedy_merge(tm, gs::identity_surjection(tm.type_count()),
                                 channel, std::stoi(spec.substr(7)));
        } else {
            throw std::invalid_argument("unknown surjection: " + spec);
        }

        auto dist = gs::build_distributions(tm, *r, channel);
        *out = new gs_scheme{tm, std::move(*r), channel, std::move(dist)};
        return GS_OK;
    });
}

void gs_scheme_free(gs_scheme* scheme) { delete scheme; }

gs_status gs_scheme_metrics(const gs_scheme* scheme, gs_metrics* out) {
    if (gs_status s = require(scheme && out, "null argument"); s != GS_OK) {
        return s;
    }
    return guarded([&] {
        out->compactness = gs::compactness_C(scheme->dist);
        out->security = gs::security_S(scheme->dist, scheme->type_model.source());
        out->verification = gs::verification_V(scheme->dist);
        out->source_entropy = scheme->type_model.source().symbol_entropy();
        return GS_OK;
    });
}

gs_status gs_scheme_output_symbols(const gs_scheme* scheme, int* out) {
    if (gs_status s = require(scheme && out, "null argument"); s != GS_OK) {
        return s;
    }
    *out = scheme->surjection.output_symbols();
    return GS_OK;
}

gs_status gs_scheme_surjection_json(const gs_scheme* scheme, char** out_json) {
    if (gs_status s = require(scheme && out_json, "null argument"); s != GS_OK) {
        return s;
    }
    return guarded([&] {
        *out_json = copy_string(gs::surjection_to_json(scheme->surjection).dump());
        return GS_OK;
    });
}

gs_status gs_required_length(double v_nats, double epsilon, long long* out_m) {
    if (gs_status s = require(out_m != nullptr, "null argument"); s != GS_OK) {
        return s;
    }
    return guarded([&] {
        *out_m = gs::required_length(v_nats, epsilon);
        return GS_OK;
    });
}

gs_status gs_best_threshold(double p, int group_size, double eta0, double eta1,
                            int* out_threshold, double* out_v) {
    if (gs_status s = require(out_threshold && out_v, "null argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        const auto scan = gs::best_threshold(
            p, group_size, gs::NoiseChannel::binary(eta0, eta1));
        *out_threshold = scan.threshold;
        *out_v = scan.v;
        return GS_OK;
    });
}

gs_status gs_surjection_gradient(double p, int group_size, const double* theta,
                                 int theta_len, double* out_derivative,
                                 double* out_k1, double* out_k2,
                                 int* out_diverged) {
    if (gs_status s = require(theta && out_derivative && out_k1 && out_k2 &&
                                  out_diverged,
                              "null argument");
        s != GS_OK) {
        return s;
    }
    if (gs_status s = require(theta_len == group_size + 1,
                              "theta must have group_size + 1 entries");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        const std::vector<double> th(theta, theta + theta_len);
        const auto report = gs::surjection_gradient(p, group_size, th);
        for (int t = 0; t < theta_len; ++t) {
            out_derivative[t] = report.derivative[static_cast<std::size_t>(t)];
        }
        *out_k1 = report.k1;
        *out_k2 = report.k2;
        *out_diverged = report.diverged ? 1 : 0;
        return GS_OK;
    });
}

gs_status gs_activation_prob(double lambda, double* out_p) {
    if (gs_status s = require(out_p != nullptr, "null argument"); s != GS_OK) {
        return s;
    }
    *out_p = gs::activation_prob(lambda);
    return GS_OK;
}

gs_status gs_threshold_for_activation(double p, double* out_lambda) {
    if (gs_status s = require(out_lambda != nullptr, "null argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        *out_lambda = gs::threshold_for_activation(p);
        return GS_OK;
    });
}

gs_status gs_induced_rates(double lambda_x, double lambda_q, double c,
                           double* out_eta0, double* out_eta1) {
    if (gs_status s = require(out_eta0 && out_eta1, "null argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        *out_eta0 = gs::induced_eta0(lambda_x, lambda_q, c);
        *out_eta1 = gs::induced_eta1(lambda_x, lambda_q, c);
        return GS_OK;
    });
}

gs_status gs_grid_search(double c, int group_size, const char* family,
                         const double* lambda_x_grid, int lambda_x_len,
                         const double* lambda_q_grid, int lambda_q_len,
                         gs_grid_result* out) {
    if (gs_status s = require(family && lambda_x_grid && lambda_q_grid && out &&
                                  lambda_x_len > 0 && lambda_q_len > 0,
                              "null or empty argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        const std::string name(family);
        gs::SurjectionFamily f;
        if (name == "identity") {
            f = gs::SurjectionFamily::identity;
        } else if (name == "majority") {
            f = gs::SurjectionFamily::majority;
        } else if (name == "all1") {
            f = gs::SurjectionFamily::all_ones;
        } else if (name == "best") {
            f = gs::SurjectionFamily::best_threshold;
        } else {
            throw std::invalid_argument("unknown surjection family: " + name);
        }
        const auto result = gs::grid_search(
            c, group_size, f,
            std::span<const double>(lambda_x_grid,
                                    static_cast<std::size_t>(lambda_x_len)),
            std::span<const double>(lambda_q_grid,
                                    static_cast<std::size_t>(lambda_q_len)));
        *out = gs_grid_result{result.lambda_x, result.lambda_q, result.v,
                              result.p,        result.eta0,     result.eta1,
                              result.threshold};
        return GS_OK;
    });
}

gs_status gs_simulate_json(const char* config_json, char** out_json) {
    if (gs_status s = require(config_json && out_json, "null argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        const auto parsed = nlohmann::json::parse(config_json);
        const auto cfg = gs::config_from_json(parsed);
        const auto outcome = gs::run_verification(cfg);
        *out_json = copy_string(gs::outcome_to_json(outcome, cfg).dump(2));
        return GS_OK;
    });
}

gs_status gs_bloom_create(long long bit_count, int hash_count, uint64_t seed,
                          gs_bloom** out) {
    if (gs_status s = require(out != nullptr, "null argument"); s != GS_OK) {
        return s;
    }
    if (gs_status s = require(bit_count > 0, "bit count must be positive");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        *out = new gs_bloom{gs::BloomFilter(
            static_cast<std::size_t>(bit_count), hash_count, seed)};
        return GS_OK;
    });
}

void gs_bloom_free(gs_bloom* filter) { delete filter; }

gs_status gs_bloom_insert(gs_bloom* filter, const void* data, size_t len) {
    if (gs_status s = require(filter && (data || len == 0), "null argument");
        s != GS_OK) {
        return s;
    }
    filter->filter.insert(
        std::string_view(static_cast<const char*>(data), len));
    return GS_OK;
}

gs_status gs_bloom_contains(const gs_bloom* filter, const void* data,
                            size_t len, int* out) {
    if (gs_status s = require(filter && out && (data || len == 0),
                              "null argument");
        s != GS_OK) {
        return s;
    }
    *out = filter->filter.contains(
                std::string_view(static_cast<const char*>(data), len))
               ? 1
               : 0;
    return GS_OK;
}

gs_status gs_bloom_optimal_k(long long bit_count, long long item_count,
                             int* out) {
    if (gs_status s = require(out != nullptr, "null argument"); s != GS_OK) {
        return s;
    }
    return guarded([&] {
        if (bit_count < 1 || item_count < 1) {
            throw std::invalid_argument("counts must be positive");
        }
        *out = gs::optimal_k(static_cast<std::size_t>(bit_count),
                             static_cast<std::size_t>(item_count));
        return GS_OK;
    });
}

gs_status gs_bloom_compare_json(int item_count, long long bit_count,
                                double epsilon, uint64_t seed, int probe_count,
                                char** out_json) {
    if (gs_status s = require(out_json != nullptr, "null argument");
        s != GS_OK) {
        return s;
    }
    return guarded([&] {
        if (item_count < 1) {
            throw std::invalid_argument("item count must be positive");
        }
        if (probe_count < 0) {
            throw std::invalid_argument("probe count must be nonnegative");
        }
        const auto report = gs::equivalence_report(item_count, epsilon);
        const long long m = bit_count > 0 ? bit_count : report.bloom_m;
        if (m < 1) {
            throw std::invalid_argument(
                "degenerate length bound; pass an explicit bit count");
        }
        const int k =
            gs::optimal_k(static_cast<std::size_t>(m),
                          static_cast<std::size_t>(item_count));
        gs::BloomFilter filter(static_cast<std::size_t>(m), k, seed);

        std::vector<std::vector<std::uint8_t>> sequences;
        sequences.reserve(static_cast<std::size_t>(item_count));
        int false_negatives = 0;
        for (int i = 0; i < item_count; ++i) {
            const std::string item = "item-" + std::to_string(i);
            filter.insert(item);
            sequences.push_back(filter.indicator_sequence(item));
        }
        for (int i = 0; i < item_count; ++i) {
            const std::string item = "item-" + std::to_string(i);
            if (!filter.contains(item)) ++false_negatives;
        }
        const auto rep = gs::enroll_binary(
            sequences, item_count, gs::all_ones_surjection(item_count));
        bool identical = true;
        for (std::size_t i = 0; i < filter.bits().size(); ++i) {
            if (static_cast<int>(filter.bits()[i]) != rep.symbols[i]) {
                identical = false;
                break;
            }
        }

        int hits = 0;
        for (int i = 0; i < probe_count; ++i) {
            if (filter.contains("probe-" + std::to_string(i))) ++hits;
        }
        const double fill =
            1.0 - std::exp(-static_cast<double>(k) * item_count /
                           static_cast<double>(m));
        const nlohmann::json j = {
            {"schema", "groupsketch.bloom-compare/1"},
            {"item_count", item_count},
            {"bit_count", m},
            {"hash_count", k},
            {"epsilon", epsilon},
            {"length_bound", report.bound},
            {"bloom_m", report.bloom_m},
            {"scheme_m", report.scheme_m},
            {"bounds_coincide", report.bloom_m == report.scheme_m},
            {"degenerate", report.degenerate},
            {"structural_identical", identical},
            {"false_negatives", false_negatives},
            {"probe_count", probe_count},
            {"fp_rate", probe_count > 0
                            ? static_cast<double>(hits) / probe_count
                            : 0.0},
            {"fp_expected", std::pow(fill, k)},
        };
        *out_json = copy_string(j.dump(2));
        return GS_OK;
    });
}

}  // extern "C"
