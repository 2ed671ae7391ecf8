#pragma once

#include <cstdint>
#include <string>

#include "csg/synth.hpp"

#include "json.hpp"

namespace csg {

// Fully resolved run configuration. Every command writes it back out as
// run.json so a run can be replayed exactly.
struct RunConfig {
    std::string command; // summarize | extract | classify | synth | report

    // ingestion
    std::string group_a, group_b; // manifest paths
    bool timeseries = false;
    double threshold_percentile = 80.0;
    std::string atlas;

    // contrast
    std::string alpha = "80";  // AlphaSpec::parse syntax
    std::string alpha_b;       // B-minus-A direction; empty = same as alpha
    bool symmetric = false;
    std::string summary_mode = "fraction";
    double binary_tau = 0.5;

    // solver
    std::string method = "sdp+local-search";
    int restarts = 10;
    int local_search_max_passes = 100;
    int sdp_rank = 0;
    int sdp_max_iters = 500;
    double sdp_tol = 1e-7;
    int rounding_samples = 50;
    std::uint64_t seed = 0;

    // classification
    std::string scheme = "p1"; // p1 | p2
    int repetitions = 5;
    bool fixed_contrast = false;
    bool no_standardize = false;
    bool quadratic = false;

    // reporting
    double edge_display_threshold = 0.1;
    std::string result_path; // report: ContrastResult JSON to re-render

    // synthesis
    PlantedSpec planted;

    std::string out = "cs-out";

    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
};

// Each command returns a JSON object of data-dependent resolved values
// (e.g. the effective alpha); run_command folds it into run.json.
nlohmann::json cmd_summarize(const RunConfig& cfg);
nlohmann::json cmd_extract(const RunConfig& cfg);
nlohmann::json cmd_classify(const RunConfig& cfg);
nlohmann::json cmd_synth(const RunConfig& cfg);
nlohmann::json cmd_report(const RunConfig& cfg);

// Dispatches on cfg.command and writes <out>/run.json.
void run_command(const RunConfig& cfg);

RunConfig load_run_config(const std::string& run_json_path);

} // namespace csg
