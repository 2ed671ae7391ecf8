#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "csg/commands.hpp"
#include "csg/error.hpp"

namespace {

void add_ingest_options(CLI::App* cmd, csg::RunConfig& cfg) {
    cmd->add_option("--group-a", cfg.group_a, "Manifest (TSV) for the first group")->required();
    cmd->add_option("--group-b", cfg.group_b, "Manifest (TSV) for the second group")->required();
    cmd->add_flag("--timeseries", cfg.timeseries,
                  "Manifest paths are ROI time-series CSVs, converted via Pearson correlation");
    cmd->add_option("--threshold-percentile", cfg.threshold_percentile,
                    "Correlation threshold percentile for --timeseries")
        ->check(CLI::Range(0.0 + 1e-9, 100.0 - 1e-9));
    cmd->add_option("--atlas", cfg.atlas, "Vertex names, one per line");
    cmd->add_option("--summary-mode", cfg.summary_mode,
                    "Summary aggregation: fraction | weighted-mean | binary");
    cmd->add_option("--binary-tau", cfg.binary_tau, "Threshold for binary summary mode");
}

void add_solver_options(CLI::App* cmd, csg::RunConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha,
                    "Size penalty: 0.8 raw, 80 percent, p80 percentile of positive diffs");
    cmd->add_option("--alpha-b", cfg.alpha_b, "Distinct alpha for the B-minus-A direction");
    cmd->add_option("--method", cfg.method, "local-search | sdp | sdp+local-search");
    cmd->add_option("--restarts", cfg.restarts, "Solver restarts")->check(CLI::PositiveNumber);
    cmd->add_option("--max-passes", cfg.local_search_max_passes,
                    "Local search pass bound")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--sdp-rank", cfg.sdp_rank, "Factorization rank (0 = auto)");
    cmd->add_option("--sdp-max-iters", cfg.sdp_max_iters, "Ascent iteration cap");
    cmd->add_option("--sdp-tol", cfg.sdp_tol, "Relative improvement stop tolerance");
    cmd->add_option("--rounding-samples", cfg.rounding_samples, "Hyperplane draws per restart");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contrast subgraph extraction and two-feature graph classification"};
    app.require_subcommand(1);

    csg::RunConfig cfg;
    std::string replay_path;

    auto* summarize = app.add_subcommand(
        "summarize", "Group summary matrices, signed difference, weighted degrees");
    add_ingest_options(summarize, cfg);
    summarize->add_option("--out", cfg.out, "Output directory");

    auto* extract = app.add_subcommand(
        "extract", "Contrast subgraphs for both directions (or --symmetric)");
    add_ingest_options(extract, cfg);
    add_solver_options(extract, cfg);
    extract->add_flag("--symmetric", cfg.symmetric, "Single subgraph over |w^A - w^B|");
    extract->add_option("--edge-display-threshold", cfg.edge_display_threshold,
                        "Minimum difference weight for the display edge list");
    extract->add_option("--out", cfg.out, "Output directory");

    auto* classify = app.add_subcommand(
        "classify", "Two-feature classification with repeated 80/20 evaluation");
    add_ingest_options(classify, cfg);
    add_solver_options(classify, cfg);
    classify->add_option("--scheme", cfg.scheme, "p1 (edge counts) | p2 (L1 distances)");
    classify->add_option("--repetitions", cfg.repetitions, "Evaluation repetitions")
        ->check(CLI::PositiveNumber);
    classify->add_flag("--fixed-contrast", cfg.fixed_contrast,
                       "Extract once on all data instead of per training split");
    classify->add_flag("--no-standardize", cfg.no_standardize, "Skip feature standardization");
    classify->add_flag("--quadratic", cfg.quadratic, "Quadratic feature expansion");
    classify->add_option("--out", cfg.out, "Output directory");

    auto* synth = app.add_subcommand("synth", "Generate a planted-contrast cohort on disk");
    synth->add_option("--n", cfg.planted.n, "Vertices");
    synth->add_option("--k", cfg.planted.k, "Planted set size (vertices 0..k-1)");
    synth->add_option("--group-size-a", cfg.planted.group_size_a, "Subjects in class A");
    synth->add_option("--group-size-b", cfg.planted.group_size_b, "Subjects in class B");
    synth->add_option("--p-in-a", cfg.planted.p_in_a, "Planted edge probability, class A");
    synth->add_option("--p-in-b", cfg.planted.p_in_b, "Planted edge probability, class B");
    synth->add_option("--p-bg", cfg.planted.p_bg, "Background edge probability");
    synth->add_option("--seed", cfg.seed, "RNG seed");
    synth->add_option("--out", cfg.out, "Output directory");

    auto* report = app.add_subcommand("report", "Re-render display artifacts for a stored result");
    add_ingest_options(report, cfg);
    report->add_option("--result", cfg.result_path, "ContrastResult JSON")->required();
    report->add_option("--edge-display-threshold", cfg.edge_display_threshold,
                       "Minimum difference weight for the display edge list");
    report->add_option("--out", cfg.out, "Output directory");

    auto* replay = app.add_subcommand("replay", "Re-run a command from its emitted run.json");
    replay->add_option("run_json", replay_path, "Path to run.json")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (replay->parsed()) {
            csg::run_command(csg::load_run_config(replay_path));
            return 0;
        }
        cfg.command = app.get_subcommands().front()->get_name();
        csg::run_command(cfg);
        return 0;
    } catch (const csg::Error& e) {
        std::cerr << "error[" << e.code() << "] " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error[internal] " << e.what() << "\n";
        return 1;
    }
}
