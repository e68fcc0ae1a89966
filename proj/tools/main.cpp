#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "thresholdlab/error.hpp"
#include "thresholdlab/experiment.hpp"
#include "thresholdlab/parallel.hpp"

using nlohmann::json;

namespace {

enum class ParamType { Int, Real, Str, FlagTrue, FlagFalse };

struct ParamFlag {
    const char* flag;
    const char* key;
    ParamType type;
    const char* help;
};

struct SubSpec {
    const char* name;
    const char* help;
    std::vector<ParamFlag> flags;
};

std::vector<ParamFlag> family_flags(std::initializer_list<ParamFlag> extra) {
    std::vector<ParamFlag> out = {
        {"--family", "family", ParamType::Str, "builtin family name (triangle-free)"},
        {"--family-file", "family_file", ParamType::Str, "family config JSON file"},
        {"--n", "n", ParamType::Int, "parameter n for builtin families"},
    };
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

std::vector<ParamFlag> graph_flags(std::initializer_list<ParamFlag> extra) {
    std::vector<ParamFlag> out = {
        {"--shape", "shape", ParamType::Str,
         "matching|star|cycle|path|complete|random-bipartite|random|petersen|wagner"},
        {"--graph-file", "graph_file", ParamType::Str, "graph JSON file {n, edges}"},
        {"--n", "n", ParamType::Int, "vertex count for shapes"},
        {"--m", "m", ParamType::Int, "shape size (edges, leaves, pairs)"},
        {"--shape-seed", "shape_seed", ParamType::Int, "seed for randomized shapes"},
    };
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

std::vector<SubSpec> subcommand_specs() {
    return {
        {"mu", "mu_p of a monotone family (exact or Monte Carlo)",
         family_flags({{"--p", "p", ParamType::Real, "element probability"},
                       {"--method", "method", ParamType::Str, "auto|exact|mc"}})},
        {"threshold", "threshold p_c of a monotone family",
         family_flags({{"--tol", "tol", ParamType::Real, "bracket tolerance"},
                       {"--method", "method", ParamType::Str, "auto|exact|mc"}})},
        {"qexact", "expectation-threshold q via exact cover search (N <= 4)",
         family_flags({{"--tol", "tol", ParamType::Real, "bracket tolerance"}})},
        {"qfrac", "fractional expectation-threshold q_f via LP (N <= 5)",
         family_flags({{"--tol", "tol", ParamType::Real, "bracket tolerance"}})},
        {"sandwich", "verify the p_c / q_f / q chain (N <= 4)",
         family_flags({{"--tol", "tol", ParamType::Real, "chain tolerance"}})},
        {"moment", "exponential-moment inequality for e(H[U])",
         graph_flags({{"--p", "p", ParamType::Real, "vertex probability"}})},
        {"tail-dir", "directed tail inequality for e(H in hat D)",
         graph_flags({{"--p", "p", ParamType::Real, "arc probability"}})},
        {"tail-undir", "undirected tail inequality for e(H in Gamma^2)",
         graph_flags({{"--p", "p", ParamType::Real, "edge probability"},
                      {"--no-degree-filter", "degree_filter", ParamType::FlagFalse,
                       "diagnostic: drop the max-degree condition"}})},
        {"hitting", "maximal triangle-free hitting experiment",
         graph_flags({{"--p", "p", ParamType::Real, "edge probability"},
                      {"--count", "count", ParamType::Int, "number of shaped graphs"},
                      {"--graphs-file", "graphs_file", ParamType::Str, "JSON array of graphs"}})},
        {"frac-hitting", "weighted (fractional) hitting experiment",
         {{"--wfamily-file", "wfamily_file", ParamType::Str, "weighted family JSON"},
          {"--n", "n", ParamType::Int, "vertex count"},
          {"--p", "p", ParamType::Real, "edge probability"}}},
        {"condition", "sum of a(H) exp(-delta e(H)/sqrt n) against 1/2",
         graph_flags({{"--count", "count", ParamType::Int, "number of shaped graphs"},
                      {"--graphs-file", "graphs_file", ParamType::Str, "JSON array of graphs"},
                      {"--wfamily-file", "wfamily_file", ParamType::Str, "weighted family JSON"},
                      {"--cliques-k", "cliques_k", ParamType::Int,
                       "symbolic all-cliques-of-size-k family"},
                      {"--delta", "delta", ParamType::Real, "exponent constant"},
                      {"--epsilon", "epsilon", ParamType::Real, "derive delta via the budget"},
                      {"--gamma", "gamma", ParamType::Real, "derive delta via the budget"}})},
        {"cover-gen", "clique-complement cover {K_n - K_B : |B| = k}",
         {{"--n", "n", ParamType::Int, "vertex count"},
          {"--k", "k", ParamType::Int, "clique size"}}},
        {"cover-check", "cover validity against all triangle-free graphs",
         {{"--cover-file", "cover_file", ParamType::Str, "cover JSON file"},
          {"--n", "n", ParamType::Int, "clique-cover route: vertex count"},
          {"--k", "k", ParamType::Int, "clique-cover route: clique size"},
          {"--mode", "mode", ParamType::Str, "exhaustive|sampled"},
          {"--relaxed", "relaxed", ParamType::FlagTrue, "non-paper >= edge-count membership"}}},
        {"alpha", "exact independence number (n <= 40)",
         {{"--shape", "shape", ParamType::Str, "graph shape"},
          {"--graph-file", "graph_file", ParamType::Str, "graph JSON file"},
          {"--n", "n", ParamType::Int, "vertex count"},
          {"--m", "m", ParamType::Int, "shape size"},
          {"--shape-seed", "shape_seed", ParamType::Int, "shape seed"}}},
        {"fbound", "q upper bound log(2 f)/m from a cover",
         {{"--n", "n", ParamType::Int, "vertex count"},
          {"--m", "m", ParamType::Int, "common non-edge count"},
          {"--cover-size", "cover_size", ParamType::Int, "cover size"},
          {"--k", "k", ParamType::Int, "derive m and size from the clique cover"}}},
        {"bipartite-lb", "random complete bipartite containment bound",
         {{"--shape", "shape", ParamType::Str, "graph shape"},
          {"--graph-file", "graph_file", ParamType::Str, "graph JSON file"},
          {"--n", "n", ParamType::Int, "vertex count"},
          {"--m", "m", ParamType::Int, "shape size"},
          {"--shape-seed", "shape_seed", ParamType::Int, "shape seed"}}},
        {"capture", "conditional square-capture frequencies of the coupling",
         {{"--n", "n", ParamType::Int, "vertex count"},
          {"--p", "p", ParamType::Real, "edge probability"}}},
    };
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"thresholdlab: thresholds, expectation-thresholds and covers of monotone families"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    int threads = 0;
    std::string out_path, format = "csv";
    json params = json::object();

    std::vector<CLI::Option*> seed_opts, thread_opts;
    auto add_globals = [&](CLI::App* sub) {
        seed_opts.push_back(
            sub->add_option("--seed", seed, "master seed (explicit; no time defaults)"));
        sub->add_option("--trials", trials, "trial / run count");
        thread_opts.push_back(
            sub->add_option("--threads", threads, "worker threads (or THRESHOLDLAB_THREADS)"));
        sub->add_option("--out", out_path, "artifact directory");
        sub->add_option("--format", format, "per-trial table encoding: csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    tlab::ExperimentConfig cfg;
    for (const auto& spec : subcommand_specs()) {
        CLI::App* sub = app.add_subcommand(spec.name, spec.help);
        add_globals(sub);
        for (const auto& pf : spec.flags) {
            std::string key = pf.key;
            switch (pf.type) {
                case ParamType::Int:
                    sub->add_option_function<std::int64_t>(
                        pf.flag, [&params, key](const std::int64_t& v) { params[key] = v; },
                        pf.help);
                    break;
                case ParamType::Real:
                    sub->add_option_function<double>(
                        pf.flag, [&params, key](const double& v) { params[key] = v; }, pf.help);
                    break;
                case ParamType::Str:
                    sub->add_option_function<std::string>(
                        pf.flag, [&params, key](const std::string& v) { params[key] = v; },
                        pf.help);
                    break;
                case ParamType::FlagTrue:
                    sub->add_flag_callback(pf.flag, [&params, key] { params[key] = true; }, pf.help);
                    break;
                case ParamType::FlagFalse:
                    sub->add_flag_callback(pf.flag, [&params, key] { params[key] = false; }, pf.help);
                    break;
            }
        }
        sub->callback([&cfg, name = std::string(spec.name)] { cfg.subcommand = name; });
    }

    CLI::App* run_sub = app.add_subcommand("run", "run an experiment from a config JSON file");
    std::string config_file;
    run_sub->add_option("--config", config_file, "ExperimentConfig JSON")->required();
    add_globals(run_sub);

    CLI::App* replay_sub = app.add_subcommand("replay", "rerun a manifest and byte-compare outputs");
    std::string manifest_path;
    replay_sub->add_option("manifest", manifest_path, "path to manifest.txt")->required();
    thread_opts.push_back(replay_sub->add_option("--threads", threads, "worker threads"));

    CLI11_PARSE(app, argc, argv);

    bool seed_given = false;
    for (auto* o : seed_opts) seed_given |= o->count() > 0;
    bool threads_given = false;
    for (auto* o : thread_opts) threads_given |= o->count() > 0;

    // worker pool: --threads beats THRESHOLDLAB_THREADS beats single-threaded
    if (threads_given) {
        tlab::set_worker_threads(threads);
    } else if (const char* env = std::getenv("THRESHOLDLAB_THREADS")) {
        tlab::set_worker_threads(std::atoi(env));
    } else {
        tlab::set_worker_threads(1);
    }

    try {
        if (replay_sub->parsed()) {
            int code = tlab::replay(manifest_path);
            std::cout << "{\"replay\": \"pass\"}" << std::endl;
            return code;
        }
        if (run_sub->parsed()) {
            std::ifstream in(config_file);
            if (!in) tlab::fail(tlab::errc::config_invalid, "cannot open " + config_file);
            json j;
            in >> j;
            cfg = tlab::ExperimentConfig::from_json(j);
            if (!out_path.empty()) cfg.output_path = out_path;
        } else {
            cfg.params = params;
            cfg.master_seed = seed;
            cfg.seed_set = seed_given;
            cfg.trials = trials;
            cfg.output_path = out_path;
            cfg.format = format;
        }
        tlab::TimedRun run = tlab::run_timed(cfg);
        std::cout << run.artifacts.summary.dump(2) << std::endl;
        tlab::write_artifacts(cfg, run);
        return run.artifacts.exit_code;
    } catch (const tlab::Error& e) {
        std::cerr << e.what() << std::endl;
        switch (e.code()) {
            case tlab::errc::inconclusive: return tlab::EXIT_VACUOUS;
            case tlab::errc::replay_mismatch: return tlab::EXIT_ASSERT_FAIL;
            default: return tlab::EXIT_ERROR;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return tlab::EXIT_ERROR;
    }
}
