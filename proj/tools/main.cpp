#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groupsketch.h"
#include "json.hpp"

using nlohmann::json;

namespace {

// shortest round-trip form so reruns produce byte-identical files
std::string num(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

int fail(gs_status st) {
    std::cerr << "error: " << gs_last_error() << "\n";
    return (st == GS_ERR_INVALID_ARGUMENT || st == GS_ERR_CAP_EXCEEDED) ? 2 : 3;
}

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 2;
}

std::string owned(char* s) {
    std::string out = s != nullptr ? s : "";
    gs_string_free(s);
    return out;
}

int write_output(const std::string& path, std::string body) {
    if (body.empty() || body.back() != '\n') body += '\n';
    if (path.empty()) {
        std::cout << body;
        return 0;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << body;
        f.flush();
        if (!f.good()) {
            std::cerr << "error: cannot write " << tmp << "\n";
            return 3;
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::cerr << "error: cannot move " << tmp << " into place\n";
        return 3;
    }
    return 0;
}

// C(n + alphabet - 1, alphabet - 1), the number of group types
long long type_count(int n, int alphabet) {
    long long r = 1;
    for (int i = 1; i < alphabet; ++i) r = r * (n + i) / i;
    return r;
}

/* ---- tradeoff ---- */

struct TradeoffOpts {
    int n = 16;
    int alphabet = 2;
    std::vector<double> p_grid;
    std::vector<double> alpha_grid;
    double eta0 = 0.0, eta1 = 0.0, eta2 = 0.0;
    std::vector<std::string> surjections;
    double epsilon = -1.0;
    std::string out;
};

int run_tradeoff(const TradeoffOpts& o) {
    std::vector<double> ps = o.p_grid;
    for (double a : o.alpha_grid) ps.push_back(a / o.n);
    if (ps.empty()) {
        for (int k = 1; k <= 10; ++k) {
            ps.push_back(static_cast<double>(k) / (10.0 * o.alphabet));
        }
    }
    std::vector<std::string> surjections = o.surjections;
    if (surjections.empty()) {
        surjections = o.alphabet == 2
                          ? std::vector<std::string>{"identity", "all1",
                                                     "majority", "best"}
                          : std::vector<std::string>{"identity"};
    }
    json cfg = {{"schema", "groupsketch.tradeoff/1"},
                {"group_size", o.n},
                {"alphabet_size", o.alphabet},
                {"p_grid", ps},
                {"eta0", o.eta0},
                {"eta1", o.eta1},
                {"eta2", o.eta2},
                {"surjections", surjections}};
    if (o.epsilon > 0.0) cfg["epsilon"] = o.epsilon;

    std::ostringstream csv;
    csv << "# " << cfg.dump() << "\n";
    csv << "p,surjection,output_symbols,compactness,security,verification,"
           "source_entropy,required_length\n";
    for (double p : ps) {
        for (const auto& name : surjections) {
            gs_scheme_params params{o.alphabet, p,      o.n,         o.eta0,
                                    o.eta1,     o.eta2, name.c_str()};
            gs_scheme* scheme = nullptr;
            if (gs_status st = gs_scheme_create(&params, &scheme); st != GS_OK) {
                return fail(st);
            }
            gs_metrics m{};
            int ys = 0;
            gs_status st = gs_scheme_metrics(scheme, &m);
            if (st == GS_OK) st = gs_scheme_output_symbols(scheme, &ys);
            gs_scheme_free(scheme);
            if (st != GS_OK) return fail(st);

            std::string need;
            if (o.epsilon > 0.0) {
                long long len = 0;
                if (gs_status st2 =
                        gs_required_length(m.verification, o.epsilon, &len);
                    st2 != GS_OK) {
                    return fail(st2);
                }
                need = std::to_string(len);
            }
            csv << num(p) << ',' << name << ',' << ys << ','
                << num(m.compactness) << ',' << num(m.security) << ','
                << num(m.verification) << ',' << num(m.source_entropy) << ','
                << need << "\n";
        }
    }
    return write_output(o.out, csv.str());
}

/* ---- sweep-correlation ---- */

struct SweepOpts {
    int n = 15;
    int dim = 256;
    std::vector<double> cs;
    std::vector<std::string> families;
    double lmin = -2.0, lmax = 2.0, lstep = 0.1;
    std::string out;
};

int run_sweep(const SweepOpts& o) {
    const auto cs = o.cs.empty()
                        ? std::vector<double>{0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}
                        : o.cs;
    const auto families =
        o.families.empty()
            ? std::vector<std::string>{"identity", "majority", "all1", "best"}
            : o.families;
    if (!(o.lstep > 0.0)) return usage_error("--lambda-step must be positive");
    std::vector<double> grid;
    for (int k = 0;; ++k) {
        const double v = o.lmin + k * o.lstep;
        if (v > o.lmax + 1e-9) break;
        grid.push_back(v);
    }
    if (grid.empty()) return usage_error("lambda grid is empty");

    const json cfg = {{"schema", "groupsketch.sweep-correlation/1"},
                      {"group_size", o.n},
                      {"dim", o.dim},
                      {"correlations", cs},
                      {"families", families},
                      {"lambda_min", o.lmin},
                      {"lambda_max", o.lmax},
                      {"lambda_step", o.lstep}};
    std::ostringstream csv;
    csv << "# " << cfg.dump() << "\n";
    csv << "c,family,lambda_x,lambda_q,activation_prob,eta0,eta1,threshold,"
           "verification,group_verification\n";
    for (double c : cs) {
        for (const auto& fam : families) {
            gs_grid_result r{};
            if (gs_status st = gs_grid_search(
                    c, o.n, fam.c_str(), grid.data(),
                    static_cast<int>(grid.size()), grid.data(),
                    static_cast<int>(grid.size()), &r);
                st != GS_OK) {
                return fail(st);
            }
            csv << num(c) << ',' << fam << ',' << num(r.lambda_x) << ','
                << num(r.lambda_q) << ',' << num(r.p) << ',' << num(r.eta0)
                << ',' << num(r.eta1) << ',' << r.threshold << ',' << num(r.v)
                << ',' << num(o.n * r.v) << "\n";
        }
    }
    return write_output(o.out, csv.str());
}

/* ---- shared scheme flags for simulate / reduce ---- */

struct ModeOpts {
    std::string mode;
    std::string preset;
    int alphabet = 2;
    double p = 0.5;
    double alpha = 0.0;
    double eta0 = 0.0, eta1 = 0.0, eta2 = 0.0;
    double c = 0.83;
    int dim = 128;
    double lambda_x = 0.0, lambda_q = 0.0;
    std::string templates;
};

void add_mode_flags(CLI::App* sub, ModeOpts& m) {
    sub->add_option("--mode", m.mode, "sequence or vector")
        ->check(CLI::IsMember({"sequence", "vector"}));
    sub->add_option("--preset", m.preset,
                    "vector presets: easy (c=0.83,d=128), medium (c=0.78,d=256), "
                    "hard (c=0.68,d=512)")
        ->check(CLI::IsMember({"easy", "medium", "hard"}));
    sub->add_option("--alphabet", m.alphabet, "source alphabet size (sequence)");
    sub->add_option("--p", m.p, "activation probability");
    sub->add_option("--alpha", m.alpha, "sparsity level, p = alpha/n");
    sub->add_option("--eta0", m.eta0, "flip rate inactive -> active (sequence)");
    sub->add_option("--eta1", m.eta1, "flip rate active -> inactive (sequence)");
    sub->add_option("--eta2", m.eta2, "cross rate among active symbols");
    sub->add_option("--c", m.c, "query/template correlation (vector)");
    sub->add_option("--d", m.dim, "template dimension (vector)");
    sub->add_option("--lambda-x", m.lambda_x, "enrollment threshold (vector)");
    sub->add_option("--lambda-q", m.lambda_q, "query threshold (vector)");
    sub->add_option("--templates", m.templates,
                    "template matrix file for enrollment (vector)");
}

struct Preset {
    double c;
    int dim;
};

bool preset_lookup(const std::string& name, Preset& out) {
    if (name == "easy") out = {0.83, 128};
    else if (name == "medium") out = {0.78, 256};
    else if (name == "hard") out = {0.68, 512};
    else return false;
    return true;
}

// Fills cfg["sequence"] or cfg["vector"] from the flags; 0 on success.
int build_mode_json(const CLI::App* sub, const ModeOpts& m, int n, json& cfg,
                    int& dim_out) {
    const bool vector_hint = sub->count("--preset") || sub->count("--c") ||
                             sub->count("--d") || sub->count("--lambda-x") ||
                             sub->count("--lambda-q") || sub->count("--templates");
    const bool sequence_hint = sub->count("--alphabet") || sub->count("--eta0") ||
                               sub->count("--eta1") || sub->count("--eta2");
    std::string mode = m.mode;
    if (mode.empty()) {
        if (vector_hint && sequence_hint) {
            return usage_error(
                "both sequence and vector flags given; pick one with --mode");
        }
        mode = sequence_hint ? "sequence" : "vector";
    }
    if (sub->count("--p") && sub->count("--alpha")) {
        return usage_error("--p and --alpha are exclusive");
    }

    dim_out = 0;
    if (mode == "sequence") {
        const double p = sub->count("--alpha") ? m.alpha / n : m.p;
        cfg["sequence"] = {{"alphabet_size", m.alphabet},
                           {"activation_prob", p},
                           {"eta0", m.eta0},
                           {"eta1", m.eta1},
                           {"eta2", m.eta2}};
        return 0;
    }

    Preset preset{m.c, m.dim};
    if (sub->count("--preset")) preset_lookup(m.preset, preset);
    const double c = sub->count("--c") ? m.c : preset.c;
    const int dim = sub->count("--d") ? m.dim : preset.dim;
    double lx = m.lambda_x;
    if (!sub->count("--lambda-x")) {
        if (sub->count("--p") || sub->count("--alpha")) {
            const double p = sub->count("--p") ? m.p : m.alpha / n;
            if (gs_status st = gs_threshold_for_activation(p, &lx); st != GS_OK) {
                return fail(st);
            }
        } else {
            lx = 0.0;
        }
    }
    const double lq = sub->count("--lambda-q") ? m.lambda_q : lx;
    cfg["vector"] = {{"dim", dim},
                     {"lambda_x", lx},
                     {"lambda_q", lq},
                     {"correlation", c}};
    if (!m.templates.empty()) cfg["templates_path"] = m.templates;
    dim_out = dim;
    return 0;
}

/* ---- simulate ---- */

struct SimulateOpts {
    ModeOpts mode;
    int n = 16;
    int m = 0;
    int groups = 8, pos = 16, neg = 16, runs = 20;
    std::uint64_t seed = 1;
    double pfp = 0.05;
    std::string surjection = "identity";
    double epsilon = -1.0;
    std::string out;
};

int run_simulate(const CLI::App* sub, const SimulateOpts& o) {
    json cfg;
    cfg["schema"] = "groupsketch.simulation/1";
    cfg["group_size"] = o.n;
    int dim = 0;
    if (int rc = build_mode_json(sub, o.mode, o.n, cfg, dim); rc != 0) return rc;
    cfg["seq_length"] =
        o.m > 0 ? o.m : (cfg.contains("vector") ? 8 * dim : 256);
    if (sub->count("--m") && o.m <= 0) {
        return usage_error("--m must be positive");
    }
    cfg["group_count"] = o.groups;
    cfg["positive_queries"] = o.pos;
    cfg["negative_queries"] = o.neg;
    cfg["runs"] = o.runs;
    cfg["seed"] = o.seed;
    cfg["operating_pfp"] = o.pfp;
    cfg["surjection"] = o.surjection;

    char* raw = nullptr;
    if (gs_status st = gs_simulate_json(cfg.dump().c_str(), &raw); st != GS_OK) {
        return fail(st);
    }
    const std::string text = owned(raw);
    const json outcome = json::parse(text);

    std::string need;
    if (o.epsilon > 0.0) {
        long long len = 0;
        if (gs_status st = gs_required_length(
                outcome["scheme"]["verification"].get<double>(), o.epsilon,
                &len);
            st != GS_OK) {
            return fail(st);
        }
        need = std::to_string(len);
    }

    if (o.out.empty()) return write_output("", text);
    if (int rc = write_output(o.out, text); rc != 0) return rc;
    std::cout << "pfn_at_pfp,achieved_pfp,threshold_tau,compactness,security,"
                 "verification,required_length\n"
              << num(outcome["pfn_at_pfp"].get<double>()) << ','
              << num(outcome["achieved_pfp"].get<double>()) << ','
              << num(outcome["threshold_tau"].get<double>()) << ','
              << num(outcome["scheme"]["compactness"].get<double>()) << ','
              << num(outcome["scheme"]["security"].get<double>()) << ','
              << num(outcome["scheme"]["verification"].get<double>()) << ','
              << need << "\n";
    return 0;
}

/* ---- reduce ---- */

struct ReduceOpts {
    ModeOpts mode;
    int n = 16;
    std::vector<int> m_grid;
    std::vector<int> y_grid;
    int groups = 8, pos = 16, neg = 16, runs = 20;
    std::uint64_t seed = 1;
    double pfp = 0.05;
    std::string out;
};

int run_reduce(const CLI::App* sub, const ReduceOpts& o) {
    auto m_grid = o.m_grid.empty() ? std::vector<int>{256, 512, 1024} : o.m_grid;
    std::sort(m_grid.begin(), m_grid.end());
    m_grid.erase(std::unique(m_grid.begin(), m_grid.end()), m_grid.end());
    auto y_grid = o.y_grid.empty() ? std::vector<int>{8, 4, 3, 2} : o.y_grid;
    std::sort(y_grid.begin(), y_grid.end(), std::greater<>());
    y_grid.erase(std::unique(y_grid.begin(), y_grid.end()), y_grid.end());
    const int base_m = m_grid.back();

    json base;
    base["schema"] = "groupsketch.simulation/1";
    base["group_size"] = o.n;
    int dim = 0;
    if (int rc = build_mode_json(sub, o.mode, o.n, base, dim); rc != 0) return rc;
    base["group_count"] = o.groups;
    base["positive_queries"] = o.pos;
    base["negative_queries"] = o.neg;
    base["runs"] = o.runs;
    base["seed"] = o.seed;
    base["operating_pfp"] = o.pfp;

    const long long identity_symbols =
        base.contains("vector") ? o.n + 1
                                : type_count(o.n, o.mode.alphabet);

    const json cfg_echo = {{"schema", "groupsketch.reduce/1"},
                           {"m_grid", m_grid},
                           {"y_grid", y_grid},
                           {"simulation", base}};
    std::ostringstream csv;
    csv << "# " << cfg_echo.dump() << "\n";
    csv << "series,seq_length,output_symbols,compactness,verification,"
           "budget_nats,pfn_at_pfp,achieved_pfp\n";

    const auto run_one = [&](const char* series, int m,
                             const std::string& surjection,
                             long long symbols) -> int {
        json cfg = base;
        cfg["seq_length"] = m;
        cfg["surjection"] = surjection;
        char* raw = nullptr;
        if (gs_status st = gs_simulate_json(cfg.dump().c_str(), &raw);
            st != GS_OK) {
            return fail(st);
        }
        const json outcome = json::parse(owned(raw));
        const double comp = outcome["scheme"]["compactness"].get<double>();
        csv << series << ',' << m << ',' << symbols << ',' << num(comp) << ','
            << num(outcome["scheme"]["verification"].get<double>()) << ','
            << num(comp * m) << ','
            << num(outcome["pfn_at_pfp"].get<double>()) << ','
            << num(outcome["achieved_pfp"].get<double>()) << "\n";
        return 0;
    };

    for (int m : m_grid) {
        if (int rc = run_one("length", m, "identity", identity_symbols); rc != 0)
            return rc;
    }
    for (int y : y_grid) {
        if (int rc = run_one("alphabet", base_m, "greedy:" + std::to_string(y),
                             y);
            rc != 0)
            return rc;
    }
    return write_output(o.out, csv.str());
}

/* ---- bloom-compare ---- */

struct BloomOpts {
    int n = 64;
    long long m = 0;
    double epsilon = 0.05;
    std::uint64_t seed = 1;
    int probes = 100000;
    std::string out;
};

int run_bloom(const BloomOpts& o) {
    char* raw = nullptr;
    if (gs_status st = gs_bloom_compare_json(o.n, o.m, o.epsilon, o.seed,
                                             o.probes, &raw);
        st != GS_OK) {
        return fail(st);
    }
    return write_output(o.out, owned(raw));
}

/* ---- optimize-surjection ---- */

struct OptimizeOpts {
    int n = 16;
    double p = 0.5;
    double alpha = 0.0;
    double eta0 = 0.0, eta1 = 0.0;
    int target = 2;
    std::string out;
};

int run_optimize(const CLI::App* sub, const OptimizeOpts& o) {
    if (sub->count("--p") && sub->count("--alpha")) {
        return usage_error("--p and --alpha are exclusive");
    }
    const double p = sub->count("--alpha") ? o.alpha / o.n : o.p;
    int t = 0;
    double tv = 0.0;
    if (gs_status st = gs_best_threshold(p, o.n, o.eta0, o.eta1, &t, &tv);
        st != GS_OK) {
        return fail(st);
    }

    const long long types = type_count(o.n, 2);
    if (o.target < 2 || o.target > types) {
        return usage_error("--target must lie in [2, n+1]");
    }
    json report = {{"schema", "groupsketch.optimize/1"},
                   {"config",
                    {{"group_size", o.n},
                     {"activation_prob", p},
                     {"eta0", o.eta0},
                     {"eta1", o.eta1},
                     {"target", o.target}}},
                   {"best_threshold",
                    {{"threshold", t}, {"verification", tv}}},
                   {"chain", json::array()}};
    for (long long y = types; y >= o.target; --y) {
        const std::string spec =
            y == types ? std::string("identity") : "greedy:" + std::to_string(y);
        gs_scheme_params params{2, p, o.n, o.eta0, o.eta1, 0.0, spec.c_str()};
        gs_scheme* scheme = nullptr;
        if (gs_status st = gs_scheme_create(&params, &scheme); st != GS_OK) {
            return fail(st);
        }
        gs_metrics metrics{};
        char* table_raw = nullptr;
        gs_status st = gs_scheme_metrics(scheme, &metrics);
        if (st == GS_OK) st = gs_scheme_surjection_json(scheme, &table_raw);
        gs_scheme_free(scheme);
        if (st != GS_OK) return fail(st);
        report["chain"].push_back({{"output_symbols", y},
                                   {"verification", metrics.verification},
                                   {"surjection", json::parse(owned(table_raw))}});
    }
    return write_output(o.out, report.dump(2));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"group membership sketches: tradeoffs, simulation, baselines"};
    app.set_version_flag("--version", gs_version());
    app.require_subcommand(1);
    int rc = 0;

    auto to = std::make_shared<TradeoffOpts>();
    auto* t = app.add_subcommand(
        "tradeoff", "sweep activation probability, report C/S/V per surjection");
    t->add_option("--n", to->n, "group size")->capture_default_str();
    t->add_option("--alphabet", to->alphabet, "source alphabet size")
        ->capture_default_str();
    t->add_option("--p", to->p_grid, "activation probabilities");
    t->add_option("--alpha", to->alpha_grid, "sparsity levels, p = alpha/n");
    t->add_option("--eta0", to->eta0, "flip rate inactive -> active");
    t->add_option("--eta1", to->eta1, "flip rate active -> inactive");
    t->add_option("--eta2", to->eta2, "cross rate among active symbols");
    t->add_option("--surjection", to->surjections,
                  "identity | all1 | majority | threshold:<t> | best | "
                  "greedy:<k>");
    t->add_option("--epsilon", to->epsilon,
                  "also report the sketch length needed for this error");
    t->add_option("--out", to->out, "output CSV path (default stdout)");
    t->callback([&rc, to] { rc = run_tradeoff(*to); });

    auto so = std::make_shared<SweepOpts>();
    auto* s = app.add_subcommand(
        "sweep-correlation",
        "per-correlation grid search of embedding thresholds");
    s->add_option("--n", so->n, "group size")->capture_default_str();
    s->add_option("--d", so->dim, "template dimension")->capture_default_str();
    s->add_option("--c", so->cs, "correlation values");
    s->add_option("--family", so->families,
                  "identity | majority | all1 | best");
    s->add_option("--lambda-min", so->lmin, "grid start")->capture_default_str();
    s->add_option("--lambda-max", so->lmax, "grid end")->capture_default_str();
    s->add_option("--lambda-step", so->lstep, "grid step")
        ->capture_default_str();
    s->add_option("--out", so->out, "output CSV path (default stdout)");
    s->callback([&rc, so] { rc = run_sweep(*so); });

    auto mo = std::make_shared<SimulateOpts>();
    auto* sim = app.add_subcommand(
        "simulate", "Monte-Carlo false-negative rate at a pinned "
                    "false-positive rate");
    sim->add_option("--n", mo->n, "group size")->capture_default_str();
    sim->add_option("--m", mo->m, "sketch length (default 8*d or 256)");
    add_mode_flags(sim, mo->mode);
    sim->add_option("--groups", mo->groups, "groups per run")
        ->capture_default_str();
    sim->add_option("--pos", mo->pos, "positive queries per group")
        ->capture_default_str();
    sim->add_option("--neg", mo->neg, "negative queries per group")
        ->capture_default_str();
    sim->add_option("--runs", mo->runs, "independent runs")
        ->capture_default_str();
    sim->add_option("--seed", mo->seed, "RNG seed")->capture_default_str();
    sim->add_option("--pfp", mo->pfp, "operating false-positive rate")
        ->capture_default_str();
    sim->add_option("--surjection", mo->surjection,
                    "identity | all1 | majority | greedy:<k>")
        ->capture_default_str();
    sim->add_option("--epsilon", mo->epsilon,
                    "also report the sketch length needed for this error");
    sim->add_option("--out", mo->out,
                    "outcome JSON path; prints a CSV summary to stdout");
    sim->callback([&rc, mo, sim] { rc = run_simulate(sim, *mo); });

    auto ro = std::make_shared<ReduceOpts>();
    auto* red = app.add_subcommand(
        "reduce", "shrinking the sketch vs coarsening the aggregate at "
                  "matched budgets");
    red->add_option("--n", ro->n, "group size")->capture_default_str();
    red->add_option("--m", ro->m_grid, "sketch lengths for the identity series");
    red->add_option("--y", ro->y_grid,
                    "aggregate alphabet sizes for the greedy series");
    add_mode_flags(red, ro->mode);
    red->add_option("--groups", ro->groups, "groups per run")
        ->capture_default_str();
    red->add_option("--pos", ro->pos, "positive queries per group")
        ->capture_default_str();
    red->add_option("--neg", ro->neg, "negative queries per group")
        ->capture_default_str();
    red->add_option("--runs", ro->runs, "independent runs")
        ->capture_default_str();
    red->add_option("--seed", ro->seed, "RNG seed")->capture_default_str();
    red->add_option("--pfp", ro->pfp, "operating false-positive rate")
        ->capture_default_str();
    red->add_option("--out", ro->out, "output CSV path (default stdout)");
    red->callback([&rc, ro, red] { rc = run_reduce(red, *ro); });

    auto bo = std::make_shared<BloomOpts>();
    auto* bl = app.add_subcommand(
        "bloom-compare",
        "Bloom filter vs all-ones aggregation at the same length bound");
    bl->add_option("--n", bo->n, "enrolled items")->capture_default_str();
    bl->add_option("--m", bo->m, "filter bits; 0 picks the bound's length")
        ->capture_default_str();
    bl->add_option("--epsilon", bo->epsilon, "false-positive target")
        ->capture_default_str();
    bl->add_option("--seed", bo->seed, "RNG seed")->capture_default_str();
    bl->add_option("--probes", bo->probes, "non-member probes")
        ->capture_default_str();
    bl->add_option("--out", bo->out, "output JSON path (default stdout)");
    bl->callback([&rc, bo] { rc = run_bloom(*bo); });

    auto oo = std::make_shared<OptimizeOpts>();
    auto* opt = app.add_subcommand(
        "optimize-surjection",
        "best single threshold plus the greedy merge chain");
    opt->add_option("--n", oo->n, "group size")->capture_default_str();
    opt->add_option("--p", oo->p, "activation probability")
        ->capture_default_str();
    opt->add_option("--alpha", oo->alpha, "sparsity level, p = alpha/n");
    opt->add_option("--eta0", oo->eta0, "flip rate inactive -> active");
    opt->add_option("--eta1", oo->eta1, "flip rate active -> inactive");
    opt->add_option("--target", oo->target, "smallest aggregate alphabet")
        ->capture_default_str();
    opt->add_option("--out", oo->out, "output JSON path (default stdout)");
    opt->callback([&rc, oo, opt] { rc = run_optimize(opt, *oo); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
