#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace tlab {

inline constexpr const char* ARTIFACT_VERSION = "0.1.0";

// exit-status taxonomy shared by the CLI and the harness
inline constexpr int EXIT_PASS = 0;
inline constexpr int EXIT_ERROR = 1;      // config/usage errors
inline constexpr int EXIT_ASSERT_FAIL = 2;
inline constexpr int EXIT_VACUOUS = 3;    // inconclusive or vacuous bound

struct ExperimentConfig {
    std::string subcommand;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t master_seed = 0;
    bool seed_set = false;
    std::uint64_t trials = 0; // 0 = subcommand default
    std::string output_path;  // empty = print summary only
    std::string format = "csv"; // per-trial table encoding: csv | json

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    // FNV-1a over the canonical dump of {subcommand, params, seed, trials};
    // the output path and worker count are runtime concerns, not identity
    std::uint64_t config_hash() const;
};

struct RunArtifacts {
    int exit_code = EXIT_PASS;
    nlohmann::json summary;
    std::string csv; // per-trial table; empty when the op has no trials
};

// Validates the config against the subcommand schema and executes it.
// Deterministic given (config, master seed) regardless of worker threads.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

struct TimedRun {
    RunArtifacts artifacts;
    std::string started_utc;
    std::string finished_utc;
};

TimedRun run_timed(const ExperimentConfig& cfg);

// config.json / summary.json / trials.{csv,json} / manifest.txt under
// cfg.output_path; no-op when the path is empty.
void write_artifacts(const ExperimentConfig& cfg, const TimedRun& run);

// run + write; returns the exit code
int run_and_write(const ExperimentConfig& cfg);

// Reruns the experiment recorded by a manifest and byte-compares the data
// files. Returns EXIT_PASS or throws (config_invalid on hash mismatch,
// replay_mismatch naming the first differing record).
int replay(const std::string& manifest_path);

} // namespace tlab
