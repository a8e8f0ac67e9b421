#include "groupsketch/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "groupsketch/parallel.hpp"
#include "groupsketch/rng.hpp"
#include "groupsketch/stats.hpp"
#include "groupsketch/template_io.hpp"

namespace groupsketch {

namespace {

std::vector<int> column_counts(
    const std::vector<std::vector<std::uint8_t>>& sequences, std::size_t index,
    int alphabet_size) {
    std::vector<int> counts(static_cast<std::size_t>(alphabet_size), 0);
    for (const auto& seq : sequences) {
        const int x = seq[index];
        if (x < 0 || x >= alphabet_size) {
            throw std::invalid_argument("symbol outside the source alphabet");
        }
        ++counts[static_cast<std::size_t>(x)];
    }
    return counts;
}

void check_rectangular(const std::vector<std::vector<std::uint8_t>>& sequences) {
    if (sequences.empty()) {
        throw std::invalid_argument("need at least one sequence");
    }
    for (const auto& seq : sequences) {
        if (seq.size() != sequences[0].size()) {
            throw std::invalid_argument("sequences must share one length");
        }
    }
}

}  // namespace

GroupRepresentation enroll(
    const std::vector<std::vector<std::uint8_t>>& sequences,
    const TypeModel& tm, const Surjection& r) {
    check_rectangular(sequences);
    if (sequences.size() != static_cast<std::size_t>(tm.group_size())) {
        throw std::invalid_argument("group size mismatch");
    }
    if (r.type_count() != tm.type_count()) {
        throw std::invalid_argument("surjection does not cover the type space");
    }
    if (tm.source().alphabet_size() == 2) {
        return enroll_binary(sequences, tm.group_size(), r);
    }
    const std::size_t m = sequences[0].size();
    GroupRepresentation rep;
    rep.output_symbols = r.output_symbols();
    rep.symbols.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto counts =
            column_counts(sequences, i, tm.source().alphabet_size());
        rep.symbols[i] = r(tm.type_index(counts));
    }
    return rep;
}

GroupRepresentation enroll_binary(
    const std::vector<std::vector<std::uint8_t>>& sequences, int group_size,
    const Surjection& r) {
    check_rectangular(sequences);
    if (sequences.size() != static_cast<std::size_t>(group_size)) {
        throw std::invalid_argument("group size mismatch");
    }
    if (r.type_count() != static_cast<std::size_t>(group_size) + 1) {
        throw std::invalid_argument("surjection does not cover the type space");
    }
    const std::size_t m = sequences[0].size();
    GroupRepresentation rep;
    rep.output_symbols = r.output_symbols();
    rep.symbols.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        int t = 0;
        for (const auto& seq : sequences) {
            if (seq[i] > 1) {
                throw std::invalid_argument("symbol outside the binary alphabet");
            }
            t += seq[i];
        }
        rep.symbols[i] = r(static_cast<std::size_t>(t));
    }
    return rep;
}

ScoreTable make_score_table(const SchemeDistributions& dist) {
    ScoreTable table;
    table.llr.assign(dist.p1.size(), {});
    for (std::size_t q = 0; q < dist.p1.size(); ++q) {
        table.llr[q].resize(dist.p1[q].size());
        for (std::size_t y = 0; y < dist.p1[q].size(); ++y) {
            const double p1 = dist.p1[q][y];
            const double p0 = dist.p0[q][y];
            table.llr[q][y] =
                (p1 == 0.0) ? kHardReject : std::log(p1 / p0);
        }
    }
    return table;
}

double score(std::span<const std::uint8_t> query,
             const GroupRepresentation& rep, const ScoreTable& table) {
    if (query.size() != rep.symbols.size()) {
        throw std::invalid_argument("query length mismatch");
    }
    if (rep.output_symbols != static_cast<int>(table.llr.empty()
                                                   ? 0
                                                   : table.llr[0].size())) {
        throw std::invalid_argument("score table does not match the scheme");
    }
    const auto kq = table.llr.size();
    double s = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i) {
        if (query[i] >= kq) {
            throw std::invalid_argument("query symbol outside the alphabet");
        }
        s += table.llr[query[i]][static_cast<std::size_t>(rep.symbols[i])];
    }
    return s;
}

namespace {

int sample_from_pmf(std::span<const double> pmf, rng::Stream& stream) {
    const double u = stream.next_unit();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < pmf.size(); ++i) {
        cum += pmf[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(pmf.size()) - 1;
}

// Fresh unit vector at exact correlation c with x, using draws from stream.
std::vector<double> correlated_query(std::span<const double> x, double c,
                                     rng::Stream& stream) {
    const std::size_t d = x.size();
    std::vector<double> w(d);
    for (;;) {
        for (auto& e : w) e = stream.next_normal();
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += w[j] * x[j];
        for (std::size_t j = 0; j < d; ++j) w[j] -= dot * x[j];
        double r2 = 0.0;
        for (double e : w) r2 += e * e;
        if (r2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(r2);
            for (auto& e : w) e *= inv;
            break;
        }
    }
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    std::vector<double> q(d);
    for (std::size_t j = 0; j < d; ++j) q[j] = c * x[j] + s * w[j];
    return q;
}

std::vector<double> fresh_unit_vector(std::size_t d, rng::Stream& stream) {
    std::vector<double> v(d);
    for (;;) {
        for (auto& e : v) e = stream.next_normal();
        double r2 = 0.0;
        for (double e : v) r2 += e * e;
        if (r2 > 1e-24) {
            const double inv = 1.0 / std::sqrt(r2);
            for (auto& e : v) e *= inv;
            return v;
        }
    }
}

Surjection resolve_surjection(const SurjectionChoice& choice,
                              std::size_t type_count, int group_size,
                              int alphabet_size,
                              const std::vector<std::vector<double>>& joint_xt,
                              const NoiseChannel& channel) {
    switch (choice.kind) {
        case SurjectionChoice::Kind::identity:
            return identity_surjection(type_count);
        case SurjectionChoice::Kind::all_ones:
            if (alphabet_size != 2) {
                throw std::invalid_argument(
                    "all-ones surjection requires a binary alphabet");
            }
            return all_ones_surjection(group_size);
        case SurjectionChoice::Kind::majority:
            if (alphabet_size != 2) {
                throw std::invalid_argument(
                    "majority surjection requires a binary alphabet");
            }
            return majority_surjection(group_size);
        case SurjectionChoice::Kind::greedy:
            return greedy_merge(joint_xt, identity_surjection(type_count),
                                channel, choice.greedy_target);
    }
    throw std::invalid_argument("unknown surjection kind");
}

void validate_common(const SimulationConfig& cfg) {
    if (cfg.sequence.has_value() == cfg.vector.has_value()) {
        throw std::invalid_argument(
            "config must select exactly one of sequence or vector mode");
    }
    if (cfg.group_size < 1) throw std::invalid_argument("group size must be positive");
    if (cfg.seq_length < 1) throw std::invalid_argument("sequence length must be positive");
    if (cfg.group_count < 1) throw std::invalid_argument("need at least one group");
    if (cfg.runs < 1) throw std::invalid_argument("need at least one run");
    if (cfg.positive_queries < 0 || cfg.negative_queries < 0) {
        throw std::invalid_argument("query counts must be nonnegative");
    }
    if (!(cfg.operating_pfp > 0.0) || !(cfg.operating_pfp < 1.0)) {
        throw std::invalid_argument("operating false-positive rate must lie in (0, 1)");
    }
}

}  // namespace

ResolvedScheme resolve_scheme(const SimulationConfig& cfg) {
    validate_common(cfg);
    if (cfg.sequence) {
        const auto& sm = *cfg.sequence;
        const SourceModel model(sm.alphabet_size, sm.activation_prob);
        const auto tm = build_type_model(model, cfg.group_size);
        const auto channel = NoiseChannel::symmetric(sm.alphabet_size, sm.eta0,
                                                     sm.eta1, sm.eta2);
        auto r = resolve_surjection(cfg.surjection, tm.type_count(),
                                    cfg.group_size, sm.alphabet_size,
                                    tm.joint_xt(), channel);
        auto dist = build_distributions(tm, r, channel);
        return ResolvedScheme{tm.joint_xt(), std::move(r), channel,
                              std::move(dist), sm.activation_prob, tm};
    }
    const auto& vm = *cfg.vector;
    const double p = activation_prob(vm.lambda_x);
    if (!(p > 0.0) || !(p < 1.0)) {
        throw std::invalid_argument("enrollment threshold is degenerate");
    }
    const double e0 = induced_eta0(vm.lambda_x, vm.lambda_q, vm.correlation);
    const double e1 = induced_eta1(vm.lambda_x, vm.lambda_q, vm.correlation);
    const auto channel = NoiseChannel::binary(e0, e1);
    auto joint = binary_joint_xt(p, cfg.group_size);
    auto r = resolve_surjection(cfg.surjection, joint[0].size(),
                                cfg.group_size, 2, joint, channel);
    auto dist = build_distributions(joint, r, channel);
    return ResolvedScheme{std::move(joint), std::move(r), channel,
                          std::move(dist), p, std::nullopt};
}

VerificationOutcome run_verification(const SimulationConfig& raw_cfg) {
    SimulationConfig cfg = raw_cfg;
    if (cfg.templates.empty() && !cfg.templates_path.empty()) {
        const auto mat = read_templates(cfg.templates_path);
        cfg.templates.assign(mat.rows.begin(), mat.rows.end());
    }

    const auto scheme = resolve_scheme(cfg);
    const auto table = make_score_table(scheme.dist);

    const long long total_neg = static_cast<long long>(cfg.runs) *
                                cfg.group_count * cfg.negative_queries;
    if (total_neg * cfg.operating_pfp < 1.0) {
        throw std::invalid_argument(
            "too few negative queries to place the operating threshold");
    }
    const long long total_pos = static_cast<long long>(cfg.runs) *
                                cfg.group_count * cfg.positive_queries;

    const int n = cfg.group_size;
    const int m = cfg.seq_length;
    const int kx = static_cast<int>(scheme.joint_xt.size());

    // Source pmf recovered from the joint law, valid in both modes.
    std::vector<double> px(static_cast<std::size_t>(kx), 0.0);
    for (int x = 0; x < kx; ++x) {
        for (double v : scheme.joint_xt[static_cast<std::size_t>(x)]) {
            px[static_cast<std::size_t>(x)] += v;
        }
    }

    std::optional<Embedding> embedding;
    if (cfg.vector) {
        embedding.emplace(EmbeddingConfig{cfg.vector->dim, m,
                                          cfg.vector->lambda_x,
                                          cfg.vector->lambda_q, cfg.seed});
        for (const auto& t : cfg.templates) {
            if (t.size() != static_cast<std::size_t>(cfg.vector->dim)) {
                throw std::invalid_argument("template dimension mismatch");
            }
        }
    }

    VerificationOutcome out;
    out.positive_scores.resize(static_cast<std::size_t>(total_pos));
    out.negative_scores.resize(static_cast<std::size_t>(total_neg));
    out.operating_pfp = cfg.operating_pfp;
    out.scheme = Metrics{compactness_C(scheme.dist), security_S(scheme.dist),
                         verification_V(scheme.dist), stats::entropy(px)};

    parallel_for(static_cast<std::size_t>(cfg.runs), [&](std::size_t run) {
        for (int g = 0; g < cfg.group_count; ++g) {
            rng::Stream stream(rng::derive(cfg.seed, run,
                                           static_cast<std::uint64_t>(g), 0xC0));
            std::vector<std::vector<std::uint8_t>> sequences(
                static_cast<std::size_t>(n));
            std::vector<std::vector<double>> vectors;

            if (cfg.sequence) {
                for (auto& seq : sequences) {
                    seq.resize(static_cast<std::size_t>(m));
                    for (auto& sym : seq) {
                        sym = static_cast<std::uint8_t>(
                            sample_from_pmf(px, stream));
                    }
                }
            } else {
                vectors.reserve(static_cast<std::size_t>(n));
                const std::size_t d =
                    static_cast<std::size_t>(cfg.vector->dim);
                for (int k = 0; k < n; ++k) {
                    if (!cfg.templates.empty()) {
                        const std::size_t idx =
                            (run * static_cast<std::size_t>(cfg.group_count) *
                                 static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(g) *
                                 static_cast<std::size_t>(n) +
                             static_cast<std::size_t>(k)) %
                            cfg.templates.size();
                        vectors.push_back(cfg.templates[idx]);
                    } else {
                        vectors.push_back(fresh_unit_vector(d, stream));
                    }
                    sequences[static_cast<std::size_t>(k)] =
                        embedding->embed_enrolled(vectors.back());
                }
            }

            const auto rep =
                scheme.type_model
                    ? enroll(sequences, *scheme.type_model, scheme.surjection)
                    : enroll_binary(sequences, n, scheme.surjection);

            const std::size_t base =
                (run * static_cast<std::size_t>(cfg.group_count) +
                 static_cast<std::size_t>(g));
            std::size_t pos_at =
                base * static_cast<std::size_t>(cfg.positive_queries);
            for (int j = 0; j < cfg.positive_queries; ++j) {
                const int member = j % n;
                std::vector<std::uint8_t> query;
                if (cfg.sequence) {
                    const auto& seq = sequences[static_cast<std::size_t>(member)];
                    query.resize(seq.size());
                    for (std::size_t i = 0; i < seq.size(); ++i) {
                        query[i] = static_cast<std::uint8_t>(sample_from_pmf(
                            scheme.channel.row(seq[i]), stream));
                    }
                } else {
                    const auto qv = correlated_query(
                        vectors[static_cast<std::size_t>(member)],
                        cfg.vector->correlation, stream);
                    query = embedding->embed_query(qv);
                }
                out.positive_scores[pos_at++] = score(query, rep, table);
            }

            std::size_t neg_at =
                base * static_cast<std::size_t>(cfg.negative_queries);
            for (int j = 0; j < cfg.negative_queries; ++j) {
                std::vector<std::uint8_t> query;
                if (cfg.sequence) {
                    query.resize(static_cast<std::size_t>(m));
                    for (auto& sym : query) {
                        const int x = sample_from_pmf(px, stream);
                        sym = static_cast<std::uint8_t>(
                            sample_from_pmf(scheme.channel.row(x), stream));
                    }
                } else {
                    const auto qv = fresh_unit_vector(
                        static_cast<std::size_t>(cfg.vector->dim), stream);
                    query = embedding->embed_query(qv);
                }
                out.negative_scores[neg_at++] = score(query, rep, table);
            }
        }
    });

    std::vector<double> sorted_neg = out.negative_scores;
    std::sort(sorted_neg.begin(), sorted_neg.end());
    out.threshold_tau =
        stats::quantile_sorted(sorted_neg, 1.0 - cfg.operating_pfp);

    long long fn = 0;
    for (double s : out.positive_scores) {
        if (s < out.threshold_tau) ++fn;
    }
    out.pfn_at_pfp =
        total_pos == 0 ? 0.0
                       : static_cast<double>(fn) / static_cast<double>(total_pos);
    long long fp = 0;
    for (double s : out.negative_scores) {
        if (s >= out.threshold_tau) ++fp;
    }
    out.achieved_pfp =
        static_cast<double>(fp) / static_cast<double>(total_neg);
    return out;
}

ExponentEstimate empirical_exponent(const SchemeDistributions& dist,
                                    std::span<const int> m_grid,
                                    int samples_per_m, double recall,
                                    std::uint64_t seed) {
    if (m_grid.empty()) {
        throw std::invalid_argument("length grid must be nonempty");
    }
    for (std::size_t i = 1; i < m_grid.size(); ++i) {
        if (m_grid[i] <= m_grid[i - 1]) {
            throw std::invalid_argument("length grid must be increasing");
        }
    }
    if (m_grid[0] < 1) throw std::invalid_argument("lengths must be positive");
    if (samples_per_m < 2) {
        throw std::invalid_argument("need at least two samples per length");
    }
    if (!(recall > 0.0) || !(recall < 1.0)) {
        throw std::invalid_argument("recall must lie in (0, 1)");
    }

    // Flattened per-cell positive law for fast i.i.d. index sampling.
    std::vector<double> cdf1, llr;
    double c1 = 0.0;
    for (std::size_t q = 0; q < dist.p1.size(); ++q) {
        for (std::size_t y = 0; y < dist.p1[q].size(); ++y) {
            c1 += dist.p1[q][y];
            cdf1.push_back(c1);
            llr.push_back(dist.p1[q][y] == 0.0
                              ? kHardReject
                              : std::log(dist.p1[q][y] / dist.p0[q][y]));
        }
    }
    const auto draw = [&](const std::vector<double>& cdf, rng::Stream& st) {
        const double u = st.next_unit();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        return static_cast<std::size_t>(
            std::min<std::ptrdiff_t>(it - cdf.begin(),
                                     static_cast<std::ptrdiff_t>(cdf.size()) - 1));
    };

    struct Cell {
        double pfp;
        bool zero;
    };
    std::vector<Cell> cells(m_grid.size());
    parallel_for(m_grid.size(), [&](std::size_t gi) {
        const int m = m_grid[gi];
        rng::Stream pos_stream(rng::derive(seed, 0xE1, static_cast<std::uint64_t>(m), 1));
        std::vector<double> pos(static_cast<std::size_t>(samples_per_m));
        for (auto& s : pos) {
            double total = 0.0;
            for (int i = 0; i < m; ++i) total += llr[draw(cdf1, pos_stream)];
            s = total;
        }
        auto sorted = pos;
        std::sort(sorted.begin(), sorted.end());
        const double tau = stats::quantile_sorted(sorted, 1.0 - recall);
        // P0(S >= tau) = E1[e^-S; S >= tau], so reweighting the positive
        // draws measures false-positive rates far below 1/samples, which
        // direct negative sampling could never see at these lengths.
        double acc = 0.0;
        for (double s : pos) {
            if (s >= tau) acc += std::exp(-s);
        }
        const double pfp = acc / samples_per_m;
        cells[gi] = {pfp, !(pfp > 0.0)};
    });

    ExponentEstimate est;
    est.bound_v = verification_V(dist);
    std::vector<double> xs, ys;
    for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
        if (cells[gi].zero) {
            est.excluded.push_back(m_grid[gi]);
            continue;
        }
        const double neg_log = -std::log(cells[gi].pfp);
        est.points.push_back({m_grid[gi], cells[gi].pfp, neg_log / m_grid[gi]});
        xs.push_back(static_cast<double>(m_grid[gi]));
        ys.push_back(neg_log);
    }
    est.slope = xs.size() >= 2
                    ? stats::ols_slope(xs, ys)
                    : std::numeric_limits<double>::quiet_NaN();
    return est;
}

}  // namespace groupsketch
