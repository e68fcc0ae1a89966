#include "thresholdlab/experiment.hpp"

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "thresholdlab/json_io.hpp"
#include "thresholdlab/stats.hpp"

namespace tlab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---- provenance-tagged numbers ----------------------------------------

json exact_value(double v) { return json{{"value", v}, {"provenance", "exact"}}; }
json formula_value(double v) { return json{{"value", v}, {"provenance", "formula"}}; }
json mc_value(double v, double half_width) {
    return json{{"value", v}, {"provenance", "monte-carlo"}, {"half_width", half_width}};
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---- config plumbing ---------------------------------------------------

[[noreturn]] void cfg_fail(const std::string& path, const std::string& what) {
    fail(errc::config_invalid, path + ": " + what);
}

struct ParamSchema {
    enum Kind { Int, Real, Str, Obj, Any, Flag } kind;
    bool required = false;
};

void validate_params(const json& params, const std::map<std::string, ParamSchema>& schema) {
    if (!params.is_object()) cfg_fail("params", "expected object");
    for (auto it = params.begin(); it != params.end(); ++it) {
        auto s = schema.find(it.key());
        if (s == schema.end()) cfg_fail("params." + it.key(), "unknown parameter");
        const json& v = it.value();
        switch (s->second.kind) {
            case ParamSchema::Int:
                if (!v.is_number_integer()) cfg_fail("params." + it.key(), "expected integer");
                break;
            case ParamSchema::Real:
                if (!v.is_number()) cfg_fail("params." + it.key(), "expected number");
                break;
            case ParamSchema::Str:
                if (!v.is_string()) cfg_fail("params." + it.key(), "expected string");
                break;
            case ParamSchema::Obj:
                if (!v.is_object() && !v.is_string())
                    cfg_fail("params." + it.key(), "expected object or string");
                break;
            case ParamSchema::Flag:
                if (!v.is_boolean()) cfg_fail("params." + it.key(), "expected boolean");
                break;
            case ParamSchema::Any:
                break;
        }
    }
    for (const auto& [key, s] : schema)
        if (s.required && !params.contains(key)) cfg_fail("params." + key, "missing");
}

int require_int(const json& params, const std::string& key) {
    if (!params.contains(key)) cfg_fail("params." + key, "missing");
    return params[key].get<int>();
}

double require_real(const json& params, const std::string& key) {
    if (!params.contains(key)) cfg_fail("params." + key, "missing");
    return params[key].get<double>();
}

std::uint64_t require_seed(const ExperimentConfig& cfg) {
    if (!cfg.seed_set)
        cfg_fail("master_seed", "missing; seeds are always explicit, never time-based");
    return cfg.master_seed;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) cfg_fail(path, "cannot open file");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        cfg_fail(path, std::string("JSON parse error: ") + e.what());
    }
    return j;
}

// family from params: builtin name + n, inline object, or file
MonotoneFamily family_from_params(const json& params) {
    if (params.contains("family_file")) return family_from_json(load_json_file(params["family_file"]));
    if (!params.contains("family")) cfg_fail("params.family", "missing");
    const json& f = params["family"];
    if (f.is_string()) {
        json spec{{"builtin", f.get<std::string>()}};
        if (params.contains("n")) spec["n"] = params["n"];
        return family_from_json(spec);
    }
    return family_from_json(f);
}

Graph graph_from_params(const json& params) {
    if (params.contains("graph_file")) {
        return graph_from_json(load_json_file(params["graph_file"]));
    }
    if (params.contains("graph")) return graph_from_json(params["graph"]);
    if (params.contains("shape")) {
        return graph_from_shape(params["shape"].get<std::string>(), params.value("n", 0),
                                params.value("m", 0), params.value("shape_seed", 0));
    }
    cfg_fail("params", "needs one of graph | graph_file | shape");
}

std::vector<Graph> graph_family_from_params(const json& params) {
    std::vector<Graph> out;
    if (params.contains("graphs_file")) {
        json j = load_json_file(params["graphs_file"]);
        if (!j.is_array()) cfg_fail("graphs_file", "expected a JSON array of graphs");
        for (const auto& g : j) out.push_back(graph_from_json(g));
        return out;
    }
    if (params.contains("graphs")) {
        for (const auto& g : params["graphs"]) out.push_back(graph_from_json(g));
        return out;
    }
    if (params.contains("shape")) {
        int count = params.value("count", 1);
        std::uint64_t shape_seed = params.value("shape_seed", 0);
        for (int i = 0; i < count; ++i)
            out.push_back(graph_from_shape(params["shape"].get<std::string>(),
                                           params.value("n", 0), params.value("m", 0),
                                           Rng::substream_seed(shape_seed, i)));
        return out;
    }
    cfg_fail("params", "needs one of graphs | graphs_file | shape");
}

// ---- CSV helpers --------------------------------------------------------

std::string csv_header(std::initializer_list<const char*> cols) {
    std::string out;
    bool first = true;
    for (const char* c : cols) {
        if (!first) out += ",";
        out += c;
        first = false;
    }
    out += "\n";
    return out;
}

// ---- handlers -----------------------------------------------------------

RunArtifacts handle_mu(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"family", {ParamSchema::Obj}},
                                 {"family_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int}},
                                 {"p", {ParamSchema::Real, true}},
                                 {"method", {ParamSchema::Str}}});
    auto family = family_from_params(cfg.params);
    double p = require_real(cfg.params, "p");
    std::string method = cfg.params.value("method", "auto");
    if (method == "auto") method = family.ground().size <= MAX_EXACT_GROUND ? "exact" : "mc";

    RunArtifacts out;
    out.summary["subcommand"] = "mu";
    out.summary["ground_size"] = family.ground().size;
    out.summary["direction"] = direction_name(family.direction());
    out.summary["p"] = p;
    if (method == "exact") {
        out.summary["mu"] = exact_value(mu_p_exact(family, p));
    } else if (method == "mc") {
        std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
        auto est = mu_p_monte_carlo(family, p, trials, require_seed(cfg));
        out.summary["mu"] = mc_value(est.estimate, est.half_width);
        out.summary["trials"] = trials;
        out.csv = csv_header({"trial", "member"});
        for (std::uint64_t t = 0; t < trials; ++t)
            out.csv += std::to_string(t) + "," + std::to_string(int(est.per_trial[t])) + "\n";
    } else {
        cfg_fail("params.method", "expected auto|exact|mc");
    }
    return out;
}

RunArtifacts handle_threshold(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"family", {ParamSchema::Obj}},
                                 {"family_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int}},
                                 {"tol", {ParamSchema::Real}},
                                 {"method", {ParamSchema::Str}}});
    auto family = family_from_params(cfg.params);
    std::string method = cfg.params.value("method", "auto");
    if (method == "auto") method = family.ground().size <= MAX_EXACT_GROUND ? "exact" : "mc";

    RunArtifacts out;
    out.summary["subcommand"] = "threshold";
    out.summary["ground_size"] = family.ground().size;
    out.summary["direction"] = direction_name(family.direction());
    out.summary["method"] = method;
    if (method == "exact") {
        double tol = cfg.params.value("tol", 1e-6);
        double pc = threshold_exact(family, tol);
        out.summary["p_c"] = exact_value(pc);
        out.summary["tol"] = tol;
    } else if (method == "mc") {
        double tol = cfg.params.value("tol", 1e-2);
        std::uint64_t trials = cfg.trials ? cfg.trials : 2000;
        auto res = threshold_monte_carlo(family, trials, require_seed(cfg), tol);
        out.summary["p_c"] = mc_value(res.p, res.mu_half_width);
        out.summary["bracket"] = json::array({res.bracket_lo, res.bracket_hi});
        out.summary["levels"] = res.levels;
        out.summary["ci_straddle"] = res.ci_straddle;
        out.summary["trials_per_level"] = trials;
        out.summary["tol"] = tol;
        out.csv = csv_header({"level", "trial", "p_probe", "member"});
        for (int l = 0; l < int(res.level_detail.size()); ++l) {
            const auto& ld = res.level_detail[l];
            for (std::uint64_t t = 0; t < ld.estimate.per_trial.size(); ++t)
                out.csv += std::to_string(l) + "," + std::to_string(t) + "," +
                           fmt_double(ld.p_probe) + "," +
                           std::to_string(int(ld.estimate.per_trial[t])) + "\n";
        }
    } else {
        cfg_fail("params.method", "expected auto|exact|mc");
    }
    return out;
}

RunArtifacts handle_qexact(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"family", {ParamSchema::Obj}},
                                 {"family_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int}},
                                 {"tol", {ParamSchema::Real}}});
    auto family = family_from_params(cfg.params);
    double tol = cfg.params.value("tol", 1e-6);
    auto res = q_exact(family, tol);
    RunArtifacts out;
    out.summary["subcommand"] = "qexact";
    out.summary["direction"] = direction_name(family.direction());
    out.summary["q"] = exact_value(res.p);
    out.summary["bracket"] = json::array({res.bracket_lo, res.bracket_hi});
    out.summary["witness"] = certificate_to_json(res.witness);
    out.summary["witness_verdict"] = [&] {
        auto v = evaluate_certificate(res.witness, family,
                                      family.direction() == Direction::Up ? res.bracket_lo
                                                                          : res.bracket_hi);
        return json{{"cost", exact_value(v.cost)}, {"covers", v.covers}, {"p_small", v.p_small}};
    }();
    return out;
}

RunArtifacts handle_qfrac(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"family", {ParamSchema::Obj}},
                                 {"family_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int}},
                                 {"tol", {ParamSchema::Real}}});
    auto family = family_from_params(cfg.params);
    double tol = cfg.params.value("tol", 1e-6);
    auto res = qf_exact(family, tol);
    RunArtifacts out;
    out.summary["subcommand"] = "qfrac";
    out.summary["direction"] = direction_name(family.direction());
    out.summary["q_f"] = exact_value(res.p);
    out.summary["bracket"] = json::array({res.bracket_lo, res.bracket_hi});
    out.summary["witness"] = fractional_certificate_to_json(res.witness);
    return out;
}

RunArtifacts handle_sandwich(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"family", {ParamSchema::Obj}},
                                 {"family_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int}},
                                 {"tol", {ParamSchema::Real}}});
    auto family = family_from_params(cfg.params);
    auto rep = verify_sandwich(family, cfg.params.value("tol", 1e-5));
    RunArtifacts out;
    out.summary["subcommand"] = "sandwich";
    out.summary["direction"] = direction_name(rep.direction);
    out.summary["p_c"] = exact_value(rep.p_c);
    out.summary["q_f"] = exact_value(rep.q_f);
    out.summary["q"] = exact_value(rep.q);
    out.summary["chain"] = rep.direction == Direction::Up ? "q <= q_f <= p_c" : "p_c <= q_f <= q";
    out.summary["pass"] = rep.pass;
    out.exit_code = rep.pass ? EXIT_PASS : EXIT_ASSERT_FAIL;
    return out;
}

json deviation_summary(const DeviationReport& rep) {
    json s;
    s["check"] = rep.check;
    s["trials"] = rep.trials;
    s["event_count"] = rep.event_count;
    s["estimate"] = mc_value(rep.estimate, rep.half_width);
    s["paper_bound"] = formula_value(rep.paper_bound);
    s["bound_kind"] = rep.bound_kind == BoundKind::moment ? "moment" : "probability";
    s["vacuous"] = rep.vacuous;
    s["asserted"] = rep.asserted;
    s["pass"] = rep.pass;
    s["n"] = rep.n;
    s["m"] = rep.m;
    s["p"] = rep.p;
    s["seed"] = rep.seed;
    return s;
}

RunArtifacts deviation_artifacts(const DeviationReport& rep) {
    RunArtifacts out;
    out.summary = deviation_summary(rep);
    out.csv = csv_header({"trial", "stat"});
    for (std::uint64_t t = 0; t < rep.per_trial.size(); ++t)
        out.csv += std::to_string(t) + "," + fmt_double(rep.per_trial[t]) + "\n";
    if (rep.vacuous)
        out.exit_code = EXIT_VACUOUS;
    else
        out.exit_code = rep.pass ? EXIT_PASS : EXIT_ASSERT_FAIL;
    return out;
}

const std::map<std::string, ParamSchema> GRAPH_PARAMS = {
    {"graph", {ParamSchema::Obj}},   {"graph_file", {ParamSchema::Str}},
    {"shape", {ParamSchema::Str}},   {"n", {ParamSchema::Int}},
    {"m", {ParamSchema::Int}},       {"shape_seed", {ParamSchema::Int}},
    {"p", {ParamSchema::Real, true}},
};

RunArtifacts handle_moment(const ExperimentConfig& cfg) {
    validate_params(cfg.params, GRAPH_PARAMS);
    Graph h = graph_from_params(cfg.params);
    double p = require_real(cfg.params, "p");
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
    return deviation_artifacts(moment_check(h, p, trials, require_seed(cfg)));
}

RunArtifacts handle_tail_dir(const ExperimentConfig& cfg) {
    validate_params(cfg.params, GRAPH_PARAMS);
    Graph h = graph_from_params(cfg.params);
    double p = require_real(cfg.params, "p");
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
    return deviation_artifacts(tail_check_directed(h, p, trials, require_seed(cfg)));
}

RunArtifacts handle_tail_undir(const ExperimentConfig& cfg) {
    auto schema = GRAPH_PARAMS;
    schema["degree_filter"] = {ParamSchema::Flag};
    validate_params(cfg.params, schema);
    Graph h = graph_from_params(cfg.params);
    double p = require_real(cfg.params, "p");
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
    TailOptions opts;
    opts.degree_filter = cfg.params.value("degree_filter", true);
    return deviation_artifacts(tail_check_undirected(h, p, trials, require_seed(cfg), opts));
}

RunArtifacts handle_hitting(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"graphs", {ParamSchema::Any}},
                                 {"graphs_file", {ParamSchema::Str}},
                                 {"shape", {ParamSchema::Str}},
                                 {"count", {ParamSchema::Int}},
                                 {"n", {ParamSchema::Int, true}},
                                 {"m", {ParamSchema::Int}},
                                 {"shape_seed", {ParamSchema::Int}},
                                 {"p", {ParamSchema::Real, true}}});
    auto family = graph_family_from_params(cfg.params);
    int n = require_int(cfg.params, "n");
    double p = require_real(cfg.params, "p");
    std::uint64_t runs = cfg.trials ? cfg.trials : 100;
    auto rep = hitting_experiment(family, n, p, runs, require_seed(cfg));

    RunArtifacts out;
    out.summary["subcommand"] = "hitting";
    out.summary["runs"] = rep.runs;
    out.summary["family_size"] = family.size();
    out.summary["z_count"] = rep.z_count;
    out.summary["all_hit_runs"] = rep.all_hit_runs;
    out.summary["implication_violations"] = rep.implication_violations;
    out.summary["decomposition_violations"] = rep.decomposition_violations;
    json per_h = json::array();
    for (std::size_t i = 0; i < family.size(); ++i) {
        per_h.push_back(json{
            {"hit_rate", mc_value(double(rep.hit_count[i]) / double(rep.runs),
                                  proportion_half_width(double(rep.hit_count[i]) / double(rep.runs),
                                                        rep.runs))},
            {"x_count", rep.x_count[i]},
            {"y_count", rep.y_count[i]},
        });
    }
    out.summary["per_h"] = per_h;
    out.csv = csv_header({"run", "h_index", "x", "y", "z", "hit"});
    for (std::uint64_t r = 0; r < rep.runs; ++r)
        for (std::size_t i = 0; i < family.size(); ++i) {
            const auto& run = rep.per_run[r];
            out.csv += std::to_string(r) + "," + std::to_string(i) + "," +
                       std::to_string(int(run.x[i])) + "," + std::to_string(int(run.y[i])) + "," +
                       std::to_string(int(run.z)) + "," + std::to_string(int(run.hit[i])) + "\n";
        }
    bool ok = rep.implication_violations == 0 && rep.decomposition_violations == 0;
    out.exit_code = ok ? EXIT_PASS : EXIT_ASSERT_FAIL;
    return out;
}

RunArtifacts handle_frac_hitting(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"wfamily", {ParamSchema::Any}},
                                 {"wfamily_file", {ParamSchema::Str}},
                                 {"n", {ParamSchema::Int, true}},
                                 {"p", {ParamSchema::Real, true}}});
    WeightedFamily wf = cfg.params.contains("wfamily_file")
                            ? weighted_family_from_json(load_json_file(cfg.params["wfamily_file"]))
                            : weighted_family_from_json(cfg.params.value("wfamily", json()));
    int n = require_int(cfg.params, "n");
    double p = require_real(cfg.params, "p");
    std::uint64_t runs = cfg.trials ? cfg.trials : 100;
    auto rep = fractional_hitting(wf, n, p, runs, require_seed(cfg));
    RunArtifacts out;
    out.summary["subcommand"] = "frac-hitting";
    out.summary["runs"] = rep.runs;
    out.summary["mean_missed_weight"] = mc_value(rep.mean_missed, 0.0);
    out.summary["min_missed_weight"] = exact_value(rep.min_missed);
    out.summary["max_missed_weight"] = exact_value(rep.max_missed);
    out.summary["fraction_below_one"] =
        mc_value(rep.fraction_below_one, proportion_half_width(rep.fraction_below_one, rep.runs));
    out.csv = csv_header({"run", "missed_weight"});
    for (std::uint64_t r = 0; r < rep.runs; ++r)
        out.csv += std::to_string(r) + "," + fmt_double(rep.per_run[r]) + "\n";
    return out;
}

RunArtifacts handle_condition(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"graphs", {ParamSchema::Any}},
                                 {"graphs_file", {ParamSchema::Str}},
                                 {"shape", {ParamSchema::Str}},
                                 {"count", {ParamSchema::Int}},
                                 {"m", {ParamSchema::Int}},
                                 {"shape_seed", {ParamSchema::Int}},
                                 {"wfamily_file", {ParamSchema::Str}},
                                 {"cliques_k", {ParamSchema::Int}},
                                 {"n", {ParamSchema::Int, true}},
                                 {"delta", {ParamSchema::Real}},
                                 {"epsilon", {ParamSchema::Real}},
                                 {"gamma", {ParamSchema::Real}}});
    int n = require_int(cfg.params, "n");
    double delta;
    if (cfg.params.contains("delta")) {
        delta = cfg.params["delta"].get<double>();
    } else if (cfg.params.contains("epsilon") && cfg.params.contains("gamma")) {
        delta = delta_budget(cfg.params["epsilon"].get<double>(), cfg.params["gamma"].get<double>());
    } else {
        cfg_fail("params.delta", "missing (or give epsilon and gamma)");
    }

    ConditionReport rep;
    std::string mode;
    if (cfg.params.contains("cliques_k")) {
        rep = clique_family_condition(n, cfg.params["cliques_k"].get<int>(), delta);
        mode = "cliques";
    } else if (cfg.params.contains("wfamily_file")) {
        rep = family_condition_check(weighted_family_from_json(load_json_file(cfg.params["wfamily_file"])),
                                     delta, n);
        mode = "weighted";
    } else {
        rep = family_condition_check(graph_family_from_params(cfg.params), delta, n);
        mode = "unweighted";
    }
    RunArtifacts out;
    out.summary["subcommand"] = "condition";
    out.summary["mode"] = mode;
    out.summary["delta"] = formula_value(delta);
    out.summary["log_sum"] = formula_value(rep.log_sum);
    out.summary["sum"] = formula_value(rep.sum);
    out.summary["satisfied"] = rep.satisfied;
    return out;
}

RunArtifacts handle_cover_gen(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"n", {ParamSchema::Int, true}}, {"k", {ParamSchema::Int, true}}});
    auto cover = ramsey_clique_cover(require_int(cfg.params, "n"), require_int(cfg.params, "k"));
    RunArtifacts out;
    out.summary["subcommand"] = "cover-gen";
    out.summary["n"] = cover.n;
    out.summary["m"] = cover.m;
    out.summary["size"] = cover.members.size();
    out.summary["m_in_f_range"] = cover.m_in_f_range();
    out.summary["cover"] = cover_to_json(cover);
    return out;
}

RunArtifacts handle_cover_check(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"cover", {ParamSchema::Any}},
                                 {"cover_file", {ParamSchema::Str}},
                                 {"relaxed", {ParamSchema::Flag}},
                                 {"n", {ParamSchema::Int}},
                                 {"k", {ParamSchema::Int}},
                                 {"mode", {ParamSchema::Str}}});
    RunArtifacts out;
    out.summary["subcommand"] = "cover-check";
    bool relaxed = cfg.params.value("relaxed", false);
    out.summary["relaxed_membership"] = relaxed; // non-paper ">=" edge-count mode
    if (cfg.params.contains("cover") || cfg.params.contains("cover_file")) {
        CoverFamily cover = cfg.params.contains("cover_file")
                                ? cover_from_json(load_json_file(cfg.params["cover_file"]), relaxed)
                                : cover_from_json(cfg.params["cover"], relaxed);
        auto res = cover_validity_exhaustive(cover);
        out.summary["mode"] = "exhaustive";
        out.summary["valid"] = res.valid;
        out.summary["graphs_checked"] = res.graphs_checked;
        out.summary["triangle_free_count"] = res.triangle_free_count;
        if (res.witness) {
            auto g = Graph::from_edge_mask(cover.n, SubsetMask(edge_count_complete(cover.n), *res.witness));
            out.summary["witness"] = graph_to_json(g);
        }
        return out;
    }
    // (n,k) route: validity of the clique cover via independence numbers
    int n = require_int(cfg.params, "n");
    int k = require_int(cfg.params, "k");
    std::string mode = cfg.params.value("mode", n <= 7 ? "exhaustive" : "sampled");
    AlphaCoverCheck res;
    if (mode == "exhaustive") {
        res = clique_cover_validity_exhaustive(n, k);
    } else if (mode == "sampled") {
        std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
        res = clique_cover_validity_sampled(n, k, trials, require_seed(cfg));
        out.summary["trials"] = trials;
    } else {
        cfg_fail("params.mode", "expected exhaustive|sampled");
    }
    out.summary["mode"] = mode;
    out.summary["exhaustive"] = res.exhaustive;
    if (res.exhaustive || res.counterexample_found) out.summary["valid"] = res.valid;
    out.summary["counterexample_found"] = res.counterexample_found;
    out.summary["inconclusive"] = res.inconclusive;
    if (res.counterexample) out.summary["counterexample"] = graph_to_json(*res.counterexample);
    if (res.inconclusive) out.exit_code = EXIT_VACUOUS;
    return out;
}

RunArtifacts handle_alpha(const ExperimentConfig& cfg) {
    auto schema = GRAPH_PARAMS;
    schema.erase("p");
    validate_params(cfg.params, schema);
    Graph g = graph_from_params(cfg.params);
    RunArtifacts out;
    out.summary["subcommand"] = "alpha";
    out.summary["n"] = g.vertex_count();
    out.summary["edges"] = g.edge_count();
    out.summary["alpha"] = exact_value(double(independence_number(g)));
    return out;
}

RunArtifacts handle_fbound(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"m", {ParamSchema::Int}},
                                 {"cover_size", {ParamSchema::Int}},
                                 {"n", {ParamSchema::Int, true}},
                                 {"k", {ParamSchema::Int}}});
    int n = require_int(cfg.params, "n");
    int m;
    double log_size; // log cover size; C(n,k) can dwarf any integer type
    RunArtifacts out;
    if (cfg.params.contains("k")) {
        int k = cfg.params["k"].get<int>();
        if (k < 2 || k > n) cfg_fail("params.k", "needs 2 <= k <= n");
        m = k * (k - 1) / 2;
        log_size = log_binomial(n, k);
        if (log_size < 42.0) out.summary["cover_size"] = std::uint64_t(std::llround(std::exp(log_size)));
    } else {
        m = require_int(cfg.params, "m");
        if (m < 1) cfg_fail("params.m", "needs m >= 1");
        auto size = cfg.params.contains("cover_size")
                        ? cfg.params["cover_size"].get<std::uint64_t>()
                        : (cfg_fail("params.cover_size", "missing"), 0);
        if (size < 1) cfg_fail("params.cover_size", "needs >= 1");
        log_size = std::log(double(size));
        out.summary["cover_size"] = size;
    }
    double bound = (std::log(2.0) + log_size) / double(m);
    out.summary["subcommand"] = "fbound";
    out.summary["m"] = m;
    out.summary["n"] = n;
    out.summary["log_cover_size"] = formula_value(log_size);
    out.summary["q_upper_bound"] = formula_value(bound);
    out.summary["vacuous"] = bound >= 1.0;
    // container-based route, exposed as a formula annotation only
    out.summary["container_bound_form"] = "exp(C * n^(3/2) * log n), C = C(c) for m = c*n^2, c < 1/4";
    return out;
}

RunArtifacts handle_bipartite_lb(const ExperimentConfig& cfg) {
    auto schema = GRAPH_PARAMS;
    schema.erase("p");
    validate_params(cfg.params, schema);
    Graph h = graph_from_params(cfg.params);
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
    auto rep = bipartite_lower_bound_experiment(h, trials, require_seed(cfg));
    RunArtifacts out;
    out.summary["subcommand"] = "bipartite-lb";
    out.summary["trials"] = rep.trials;
    out.summary["estimate"] = mc_value(rep.estimate, rep.half_width);
    out.summary["bound"] = formula_value(rep.bound);
    out.summary["forest_edges"] = rep.forest_edges;
    out.summary["pass"] = rep.pass;
    out.csv = csv_header({"trial", "contained"});
    for (std::uint64_t t = 0; t < rep.per_trial.size(); ++t)
        out.csv += std::to_string(t) + "," + std::to_string(int(rep.per_trial[t])) + "\n";
    out.exit_code = rep.pass ? EXIT_PASS : EXIT_ASSERT_FAIL;
    return out;
}

RunArtifacts handle_capture(const ExperimentConfig& cfg) {
    validate_params(cfg.params, {{"n", {ParamSchema::Int, true}}, {"p", {ParamSchema::Real, true}}});
    int n = require_int(cfg.params, "n");
    double p = require_real(cfg.params, "p");
    std::uint64_t trials = cfg.trials ? cfg.trials : 10000;
    auto rep = conditional_square_capture(n, p, require_seed(cfg), trials);
    RunArtifacts out;
    out.summary["subcommand"] = "capture";
    out.summary["trials"] = rep.trials;
    out.summary["min_frequency"] = mc_value(rep.min_frequency, 0.0);
    out.summary["pass"] = rep.pass;
    json classes = json::array();
    out.csv = csv_header({"multiplicity", "observations", "captured", "frequency"});
    for (const auto& c : rep.classes) {
        classes.push_back(json{{"multiplicity", c.multiplicity},
                               {"observations", c.observations},
                               {"captured", c.captured},
                               {"frequency", mc_value(c.frequency, Z95 * c.std_error)}});
        out.csv += std::to_string(c.multiplicity) + "," + std::to_string(c.observations) + "," +
                   std::to_string(c.captured) + "," + fmt_double(c.frequency) + "\n";
    }
    out.summary["classes"] = classes;
    out.exit_code = rep.pass ? EXIT_PASS : EXIT_ASSERT_FAIL;
    return out;
}

using Handler = RunArtifacts (*)(const ExperimentConfig&);

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> H = {
        {"mu", handle_mu},
        {"threshold", handle_threshold},
        {"qexact", handle_qexact},
        {"qfrac", handle_qfrac},
        {"sandwich", handle_sandwich},
        {"moment", handle_moment},
        {"tail-dir", handle_tail_dir},
        {"tail-undir", handle_tail_undir},
        {"hitting", handle_hitting},
        {"frac-hitting", handle_frac_hitting},
        {"condition", handle_condition},
        {"cover-gen", handle_cover_gen},
        {"cover-check", handle_cover_check},
        {"alpha", handle_alpha},
        {"fbound", handle_fbound},
        {"bipartite-lb", handle_bipartite_lb},
        {"capture", handle_capture},
    };
    return H;
}

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
    if (!j.is_object()) fail(errc::config_invalid, "config: expected object");
    ExperimentConfig cfg;
    if (!j.contains("subcommand") || !j["subcommand"].is_string())
        fail(errc::config_invalid, "config.subcommand: missing or not a string");
    cfg.subcommand = j["subcommand"].get<std::string>();
    cfg.params = j.value("params", json::object());
    if (j.contains("master_seed")) {
        cfg.master_seed = j["master_seed"].get<std::uint64_t>();
        cfg.seed_set = true;
    }
    cfg.trials = j.value("trials", std::uint64_t(0));
    cfg.output_path = j.value("output_path", "");
    cfg.format = j.value("format", "csv");
    if (cfg.format != "csv" && cfg.format != "json")
        fail(errc::config_invalid, "config.format: expected csv or json");
    return cfg;
}

json ExperimentConfig::to_json() const {
    json j{{"subcommand", subcommand}, {"params", params}, {"trials", trials}, {"format", format}};
    if (seed_set) j["master_seed"] = master_seed;
    if (!output_path.empty()) j["output_path"] = output_path;
    return j;
}

std::uint64_t ExperimentConfig::config_hash() const {
    json identity{{"subcommand", subcommand}, {"params", params}, {"trials", trials},
                  {"format", format}};
    if (seed_set) identity["master_seed"] = master_seed;
    std::string s = identity.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

RunArtifacts run_experiment(const ExperimentConfig& cfg) {
    auto it = handlers().find(cfg.subcommand);
    if (it == handlers().end())
        fail(errc::config_invalid, "unknown subcommand '" + cfg.subcommand + "'");
    return it->second(cfg);
}

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
    return buf;
}

json csv_as_json(const std::string& csv) {
    // cells stay raw strings so the json encoding is byte-stable
    json out{{"columns", json::array()}, {"rows", json::array()}};
    std::istringstream is(csv);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        json row = json::array();
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            row.push_back(line.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (first) {
            out["columns"] = row;
            first = false;
        } else {
            out["rows"].push_back(row);
        }
    }
    return out;
}

std::string trials_file_name(const ExperimentConfig& cfg) {
    return cfg.format == "json" ? "trials.json" : "trials.csv";
}

std::string trials_bytes(const ExperimentConfig& cfg, const RunArtifacts& art) {
    if (cfg.format == "json") return csv_as_json(art.csv).dump(2) + "\n";
    return art.csv;
}

std::string build_manifest(const ExperimentConfig& cfg, const std::string& started,
                           const std::string& finished, bool has_csv) {
    std::ostringstream os;
    os << "thresholdlab manifest v1\n";
    os << "config_hash: " << hash_hex(cfg.config_hash()) << "\n";
    os << "artifact_version: " << ARTIFACT_VERSION << "\n";
    os << "subcommand: " << cfg.subcommand << "\n";
    os << "started_utc: " << started << "\n";
    os << "finished_utc: " << finished << "\n";
    os << "modules: family-core=" << ARTIFACT_VERSION << " certificate-engine=" << ARTIFACT_VERSION
       << " graph-kit=" << ARTIFACT_VERSION << " random-models=" << ARTIFACT_VERSION
       << " deviation-lab=" << ARTIFACT_VERSION << " cover-constructions=" << ARTIFACT_VERSION
       << " cli-harness=" << ARTIFACT_VERSION << "\n";
    os << "data_files: summary.json" << (has_csv ? " " + trials_file_name(cfg) : "") << "\n";
    return os.str();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) fail(errc::config_invalid, "cannot write " + p.string());
    out << content;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) fail(errc::config_invalid, "cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string summary_bytes(const json& summary) { return summary.dump(2) + "\n"; }

// first differing line, 1-based, for replay diagnostics
std::string first_diff(const std::string& a, const std::string& b) {
    std::istringstream sa(a), sb(b);
    std::string la, lb;
    int line = 1;
    while (true) {
        bool ga = bool(std::getline(sa, la));
        bool gb = bool(std::getline(sb, lb));
        if (!ga && !gb) return "identical";
        if (ga != gb || la != lb)
            return "line " + std::to_string(line) + ": '" + (ga ? la : "<eof>") + "' vs '" +
                   (gb ? lb : "<eof>") + "'";
        ++line;
    }
}

} // namespace

TimedRun run_timed(const ExperimentConfig& cfg) {
    TimedRun run;
    run.started_utc = utc_now();
    run.artifacts = run_experiment(cfg); // throws before any file is touched
    run.finished_utc = utc_now();
    return run;
}

void write_artifacts(const ExperimentConfig& cfg, const TimedRun& run) {
    if (cfg.output_path.empty()) return;
    const RunArtifacts& art = run.artifacts;
    fs::path dir(cfg.output_path);
    fs::create_directories(dir);
    write_file(dir / "config.json", cfg.to_json().dump(2) + "\n");
    write_file(dir / "summary.json", summary_bytes(art.summary));
    if (!art.csv.empty()) write_file(dir / trials_file_name(cfg), trials_bytes(cfg, art));
    write_file(dir / "manifest.txt",
               build_manifest(cfg, run.started_utc, run.finished_utc, !art.csv.empty()));
}

int run_and_write(const ExperimentConfig& cfg) {
    TimedRun run = run_timed(cfg);
    write_artifacts(cfg, run);
    return run.artifacts.exit_code;
}

int replay(const std::string& manifest_path) {
    fs::path mpath(manifest_path);
    std::string manifest = read_file(mpath);
    fs::path dir = mpath.parent_path();

    std::string recorded_hash;
    {
        std::istringstream is(manifest);
        std::string line;
        while (std::getline(is, line)) {
            if (line.rfind("config_hash: ", 0) == 0) recorded_hash = line.substr(13);
        }
    }
    if (recorded_hash.empty()) fail(errc::config_invalid, "manifest has no config_hash");

    auto cfg = ExperimentConfig::from_json(json::parse(read_file(dir / "config.json")));
    if (hash_hex(cfg.config_hash()) != recorded_hash)
        fail(errc::config_invalid, "config hash mismatch: config.json was modified after the run");

    RunArtifacts art = run_experiment(cfg);
    std::string stored_summary = read_file(dir / "summary.json");
    std::string fresh_summary = summary_bytes(art.summary);
    if (stored_summary != fresh_summary)
        fail(errc::replay_mismatch, "summary.json: " + first_diff(stored_summary, fresh_summary));
    fs::path tfile = dir / trials_file_name(cfg);
    if (fs::exists(tfile)) {
        std::string stored = read_file(tfile);
        std::string fresh = trials_bytes(cfg, art);
        if (stored != fresh)
            fail(errc::replay_mismatch, tfile.filename().string() + ": " + first_diff(stored, fresh));
    }
    return EXIT_PASS;
}

} // namespace tlab
