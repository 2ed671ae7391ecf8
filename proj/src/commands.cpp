#include "csg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>

#include "csg/contrast.hpp"
#include "csg/correlation.hpp"
#include "csg/error.hpp"
#include "csg/io.hpp"
#include "csg/pipeline.hpp"
#include "csg/summary.hpp"

namespace fsys = std::filesystem;
using nlohmann::json;

namespace csg {

namespace {

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json trace_to_json(const SolverTrace& t) {
    json j;
    j["method"] = t.method;
    j["best_value"] = t.best_value;
    j["restart_values"] = t.restart_values;
    j["iterations_used"] = t.iterations_used;
    j["seed"] = t.seed;
    return j;
}

json contrast_to_json(const ContrastResult& r, const std::vector<std::string>* atlas) {
    json j;
    j["variant"] = to_string(r.variant);
    j["vertices"] = r.vertices;
    if (atlas) {
        std::vector<std::string> names;
        for (int v : r.vertices) names.push_back((*atlas)[static_cast<std::size_t>(v)]);
        j["vertex_names"] = names;
    }
    j["objective"] = r.objective;
    j["alpha_resolved"] = r.alpha_resolved;
    j["groups"] = {{"a", {{"label", r.label_a}, {"size", r.size_a}}},
                   {"b", {{"label", r.label_b}, {"size", r.size_b}}}};
    j["trace"] = trace_to_json(r.trace);
    return j;
}

ContrastResult contrast_from_json(const json& j) {
    ContrastResult r;
    r.variant = contrast_variant_from_string(j.at("variant").get<std::string>());
    r.vertices = j.at("vertices").get<std::vector<int>>();
    r.objective = j.at("objective").get<double>();
    r.alpha_resolved = j.at("alpha_resolved").get<double>();
    r.label_a = j.at("groups").at("a").at("label").get<std::string>();
    r.size_a = j.at("groups").at("a").at("size").get<int>();
    r.label_b = j.at("groups").at("b").at("label").get<std::string>();
    r.size_b = j.at("groups").at("b").at("size").get<int>();
    return r;
}

SolverConfig solver_config(const RunConfig& cfg) {
    SolverConfig s;
    s.restarts = cfg.restarts;
    s.local_search_max_passes = cfg.local_search_max_passes;
    s.sdp_rank = cfg.sdp_rank;
    s.sdp_max_iters = cfg.sdp_max_iters;
    s.sdp_tol = cfg.sdp_tol;
    s.rounding_samples = cfg.rounding_samples;
    s.rng_seed = cfg.seed;
    s.method = solve_method_from_string(cfg.method);
    return s;
}

SummaryOptions summary_options(const RunConfig& cfg) {
    return {summary_mode_from_string(cfg.summary_mode), cfg.binary_tau};
}

GraphGroup load_group_cfg(const RunConfig& cfg, const std::string& manifest) {
    if (manifest.empty()) throw Error(errc::config, "missing group manifest");
    return cfg.timeseries ? io::load_group_timeseries(manifest, cfg.threshold_percentile)
                          : io::load_group(manifest);
}

std::vector<std::string> load_atlas_checked(const RunConfig& cfg, int n) {
    if (cfg.atlas.empty()) return {};
    auto names = io::read_atlas(cfg.atlas);
    if (static_cast<int>(names.size()) < n)
        throw Error(errc::config, "atlas has " + std::to_string(names.size()) +
                                      " names but the cohort has n=" + std::to_string(n));
    return names;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    return (fsys::path(cfg.out) / name).string();
}

AlphaSpec alpha_of(const std::string& text) { return AlphaSpec::parse(text); }

AlphaSpec alpha_b_of(const RunConfig& cfg) {
    return AlphaSpec::parse(cfg.alpha_b.empty() ? cfg.alpha : cfg.alpha_b);
}

// Induced pairs whose difference weight clears the display threshold.
// signed_diff is the A-minus-B matrix; the variant fixes the orientation.
void write_display_edges_for(const RunConfig& cfg, const ContrastResult& r,
                             const SquareMatrix& signed_diff,
                             const std::vector<std::string>& atlas, const std::string& path) {
    const bool sym = r.variant == ContrastVariant::symmetric;
    std::string out = sym ? "u,v,weight,side" : "u,v,weight";
    if (!atlas.empty()) out += ",u_name,v_name";
    out += "\n";
    for (std::size_t i = 0; i < r.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < r.vertices.size(); ++j) {
            const int u = r.vertices[i], v = r.vertices[j];
            const double raw = signed_diff(u, v);
            const double w = sym                                        ? std::abs(raw)
                             : r.variant == ContrastVariant::b_minus_a ? -raw
                                                                        : raw;
            if (w < cfg.edge_display_threshold) continue;
            out += std::to_string(u) + "," + std::to_string(v) + "," + io::fmt_double(w);
            if (sym) out += raw >= 0.0 ? ",A" : ",B";
            if (!atlas.empty())
                out += "," + atlas[static_cast<std::size_t>(u)] + "," +
                       atlas[static_cast<std::size_t>(v)];
            out += "\n";
        }
    io::write_text_atomic(path, out);
}

} // namespace

json RunConfig::to_json() const {
    json j;
    j["command"] = command;
    j["group_a"] = group_a;
    j["group_b"] = group_b;
    j["timeseries"] = timeseries;
    j["threshold_percentile"] = threshold_percentile;
    j["atlas"] = atlas;
    j["alpha"] = alpha;
    j["alpha_b"] = alpha_b;
    j["symmetric"] = symmetric;
    j["summary_mode"] = summary_mode;
    j["binary_tau"] = binary_tau;
    j["method"] = method;
    j["restarts"] = restarts;
    j["local_search_max_passes"] = local_search_max_passes;
    j["sdp_rank"] = sdp_rank;
    j["sdp_max_iters"] = sdp_max_iters;
    j["sdp_tol"] = sdp_tol;
    j["rounding_samples"] = rounding_samples;
    j["seed"] = seed;
    j["scheme"] = scheme;
    j["repetitions"] = repetitions;
    j["fixed_contrast"] = fixed_contrast;
    j["no_standardize"] = no_standardize;
    j["quadratic"] = quadratic;
    j["edge_display_threshold"] = edge_display_threshold;
    j["result_path"] = result_path;
    j["planted"] = {{"n", planted.n},
                    {"k", planted.k},
                    {"group_size_a", planted.group_size_a},
                    {"group_size_b", planted.group_size_b},
                    {"p_in_a", planted.p_in_a},
                    {"p_in_b", planted.p_in_b},
                    {"p_bg", planted.p_bg}};
    j["out"] = out;
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.group_a = j.value("group_a", c.group_a);
    c.group_b = j.value("group_b", c.group_b);
    c.timeseries = j.value("timeseries", c.timeseries);
    c.threshold_percentile = j.value("threshold_percentile", c.threshold_percentile);
    c.atlas = j.value("atlas", c.atlas);
    c.alpha = j.value("alpha", c.alpha);
    c.alpha_b = j.value("alpha_b", c.alpha_b);
    c.symmetric = j.value("symmetric", c.symmetric);
    c.summary_mode = j.value("summary_mode", c.summary_mode);
    c.binary_tau = j.value("binary_tau", c.binary_tau);
    c.method = j.value("method", c.method);
    c.restarts = j.value("restarts", c.restarts);
    c.local_search_max_passes = j.value("local_search_max_passes", c.local_search_max_passes);
    c.sdp_rank = j.value("sdp_rank", c.sdp_rank);
    c.sdp_max_iters = j.value("sdp_max_iters", c.sdp_max_iters);
    c.sdp_tol = j.value("sdp_tol", c.sdp_tol);
    c.rounding_samples = j.value("rounding_samples", c.rounding_samples);
    c.seed = j.value("seed", c.seed);
    c.scheme = j.value("scheme", c.scheme);
    c.repetitions = j.value("repetitions", c.repetitions);
    c.fixed_contrast = j.value("fixed_contrast", c.fixed_contrast);
    c.no_standardize = j.value("no_standardize", c.no_standardize);
    c.quadratic = j.value("quadratic", c.quadratic);
    c.edge_display_threshold = j.value("edge_display_threshold", c.edge_display_threshold);
    c.result_path = j.value("result_path", c.result_path);
    if (j.contains("planted")) {
        const json& p = j.at("planted");
        c.planted.n = p.value("n", c.planted.n);
        c.planted.k = p.value("k", c.planted.k);
        c.planted.group_size_a = p.value("group_size_a", c.planted.group_size_a);
        c.planted.group_size_b = p.value("group_size_b", c.planted.group_size_b);
        c.planted.p_in_a = p.value("p_in_a", c.planted.p_in_a);
        c.planted.p_in_b = p.value("p_in_b", c.planted.p_in_b);
        c.planted.p_bg = p.value("p_bg", c.planted.p_bg);
    }
    c.out = j.value("out", c.out);
    return c;
}

json cmd_summarize(const RunConfig& cfg) {
    const GraphGroup a = load_group_cfg(cfg, cfg.group_a);
    const GraphGroup b = load_group_cfg(cfg, cfg.group_b);
    if (a.n != b.n)
        throw Error(errc::dimension, "group dimension mismatch: n=" + std::to_string(a.n) +
                                         " vs n=" + std::to_string(b.n));
    const auto atlas = load_atlas_checked(cfg, a.n);
    const SummaryOptions sopt = summary_options(cfg);

    const SummaryGraph sa = build_summary(a, sopt.mode, sopt.binary_tau);
    const SummaryGraph sb = build_summary(b, sopt.mode, sopt.binary_tau);
    const DifferenceGraph d = build_difference(sa, sb, DiffMode::signed_diff);

    io::write_matrix_csv(sa.w, out_path(cfg, "summary_a.csv"));
    io::write_matrix_csv(sb.w, out_path(cfg, "summary_b.csv"));
    dump_difference_matrix(d, out_path(cfg, "difference.csv"));

    const std::vector<double> da = weighted_degrees(sa);
    const std::vector<double> db = weighted_degrees(sb);
    std::string degrees = atlas.empty() ? "vertex,degree_A,degree_B\n"
                                        : "vertex,atlas_name,degree_A,degree_B\n";
    for (int v = 0; v < a.n; ++v) {
        degrees += std::to_string(v);
        if (!atlas.empty()) degrees += "," + atlas[static_cast<std::size_t>(v)];
        degrees += "," + io::fmt_double(da[static_cast<std::size_t>(v)]) + "," +
                   io::fmt_double(db[static_cast<std::size_t>(v)]) + "\n";
    }
    io::write_text_atomic(out_path(cfg, "degrees.csv"), degrees);
    return json::object();
}

json cmd_extract(const RunConfig& cfg) {
    const GraphGroup a = load_group_cfg(cfg, cfg.group_a);
    const GraphGroup b = load_group_cfg(cfg, cfg.group_b);
    const auto atlas = load_atlas_checked(cfg, a.n);
    const SolverConfig scfg = solver_config(cfg);
    const SummaryOptions sopt = summary_options(cfg);

    const SummaryGraph sa = build_summary(a, sopt.mode, sopt.binary_tau);
    const SummaryGraph sb = build_summary(b, sopt.mode, sopt.binary_tau);
    const DifferenceGraph signed_d = build_difference(sa, sb, DiffMode::signed_diff);

    const std::vector<std::string>* names = atlas.empty() ? nullptr : &atlas;
    if (cfg.symmetric) {
        ContrastResult res = extract_symmetric(a, b, alpha_of(cfg.alpha), scfg, sopt);
        io::write_text_atomic(out_path(cfg, "contrast_symmetric.json"),
                              dump_json(contrast_to_json(res, names)));
        write_display_edges_for(cfg, res, signed_d.d, atlas,
                                out_path(cfg, "display_edges_symmetric.csv"));
        return json{{"alpha_resolved", res.alpha_resolved}};
    }

    ContrastResult res_ab = extract(a, b, alpha_of(cfg.alpha), scfg, sopt);
    ContrastResult res_ba = extract(b, a, alpha_b_of(cfg), scfg, sopt);
    res_ba.variant = ContrastVariant::b_minus_a;
    io::write_text_atomic(out_path(cfg, "contrast_a_minus_b.json"),
                          dump_json(contrast_to_json(res_ab, names)));
    io::write_text_atomic(out_path(cfg, "contrast_b_minus_a.json"),
                          dump_json(contrast_to_json(res_ba, names)));
    write_display_edges_for(cfg, res_ab, signed_d.d, atlas,
                            out_path(cfg, "display_edges_a_minus_b.csv"));
    write_display_edges_for(cfg, res_ba, signed_d.d, atlas,
                            out_path(cfg, "display_edges_b_minus_a.csv"));
    return json{{"alpha_resolved", res_ab.alpha_resolved},
                {"alpha_b_resolved", res_ba.alpha_resolved}};
}

json cmd_synth(const RunConfig& cfg) {
    PlantedSpec spec = cfg.planted;
    spec.rng_seed = cfg.seed;
    const auto [a, b] = planted_dataset(spec);

    fsys::create_directories(fsys::path(cfg.out) / "subjects");
    std::vector<io::ManifestRow> rows_a, rows_b;
    for (const auto& g : a.members) {
        io::write_edge_list(g, out_path(cfg, "subjects/" + g.subject_id + ".edges"));
        rows_a.push_back({g.subject_id, "subjects/" + g.subject_id + ".edges", "A"});
    }
    for (const auto& g : b.members) {
        io::write_edge_list(g, out_path(cfg, "subjects/" + g.subject_id + ".edges"));
        rows_b.push_back({g.subject_id, "subjects/" + g.subject_id + ".edges", "B"});
    }
    io::write_manifest(rows_a, out_path(cfg, "manifest_a.tsv"));
    io::write_manifest(rows_b, out_path(cfg, "manifest_b.tsv"));

    std::vector<int> planted_vertices;
    for (int v = 0; v < spec.k; ++v) planted_vertices.push_back(v);
    json gt;
    gt["planted_vertices"] = planted_vertices;
    gt["seed"] = spec.rng_seed;
    gt["spec"] = {{"n", spec.n},
                  {"k", spec.k},
                  {"group_size_a", spec.group_size_a},
                  {"group_size_b", spec.group_size_b},
                  {"p_in_a", spec.p_in_a},
                  {"p_in_b", spec.p_in_b},
                  {"p_bg", spec.p_bg}};
    io::write_text_atomic(out_path(cfg, "ground_truth.json"), dump_json(gt));
    return json::object();
}

namespace {

struct ContrastSets {
    std::vector<int> s_ab, s_ba, s_sym;
    SummaryGraph sum_a, sum_b;
    ContrastResult res_ab, res_ba, res_sym;
};

// Contrast machinery derived from the given (sub)groups only.
ContrastSets derive_contrast(const RunConfig& cfg, const GraphGroup& a, const GraphGroup& b,
                             const SolverConfig& scfg) {
    const SummaryOptions sopt = summary_options(cfg);
    ContrastSets cs;
    cs.sum_a = build_summary(a, sopt.mode, sopt.binary_tau);
    cs.sum_b = build_summary(b, sopt.mode, sopt.binary_tau);
    if (cfg.scheme == "p2") {
        cs.res_sym = extract_symmetric(a, b, alpha_of(cfg.alpha), scfg, sopt);
        cs.s_sym = cs.res_sym.vertices;
    } else {
        cs.res_ab = extract(a, b, alpha_of(cfg.alpha), scfg, sopt);
        cs.res_ba = extract(b, a, alpha_b_of(cfg), scfg, sopt);
        cs.res_ba.variant = ContrastVariant::b_minus_a;
        cs.s_ab = cs.res_ab.vertices;
        cs.s_ba = cs.res_ba.vertices;
    }
    return cs;
}

FeatureTable table_from_sets(const RunConfig& cfg,
                             const std::vector<const ObservationGraph*>& subjects,
                             const ContrastSets& cs, const std::string& class_a,
                             const std::string& class_b) {
    if (cfg.scheme == "p2") return features_p2(subjects, cs.s_sym, cs.sum_a, cs.sum_b);
    return features_p1(subjects, cs.s_ab, cs.s_ba, class_a, class_b);
}

GraphGroup subset_group(const GraphGroup& g, const std::vector<std::size_t>& picked) {
    GraphGroup out;
    out.label = g.label;
    out.n = g.n;
    for (std::size_t i : picked) out.members.push_back(g.members[i]);
    return out;
}

} // namespace

json cmd_classify(const RunConfig& cfg) {
    if (cfg.scheme != "p1" && cfg.scheme != "p2")
        throw Error(errc::config, "scheme must be p1 or p2, got '" + cfg.scheme + "'");
    const GraphGroup a = load_group_cfg(cfg, cfg.group_a);
    const GraphGroup b = load_group_cfg(cfg, cfg.group_b);
    if (a.label == b.label)
        throw Error(errc::config, "the two groups carry the same label '" + a.label + "'");
    const auto atlas = load_atlas_checked(cfg, a.n);
    const std::vector<std::string>* names = atlas.empty() ? nullptr : &atlas;
    const SolverConfig scfg = solver_config(cfg);

    std::vector<const ObservationGraph*> subjects;
    for (const auto& g : a.members) subjects.push_back(&g);
    for (const auto& g : b.members) subjects.push_back(&g);
    std::vector<std::string> labels;
    for (const auto* g : subjects) labels.push_back(g->label);

    TrainEvalOptions opt;
    opt.repetitions = cfg.repetitions;
    opt.rng_seed = cfg.seed;
    opt.standardize = !cfg.no_standardize;
    opt.quadratic = cfg.quadratic;

    // descriptive artifacts (scatter data, rules, boundary) come from the
    // full-cohort contrast; held-out evaluation below re-extracts per split
    // unless --fixed-contrast
    const ContrastSets full = derive_contrast(cfg, a, b, scfg);
    const FeatureTable table = table_from_sets(cfg, subjects, full, a.label, b.label);
    write_feature_csv(table, out_path(cfg, "features.csv"));
    if (cfg.scheme == "p2") {
        io::write_text_atomic(out_path(cfg, "contrast_symmetric.json"),
                              dump_json(contrast_to_json(full.res_sym, names)));
    } else {
        io::write_text_atomic(out_path(cfg, "contrast_a_minus_b.json"),
                              dump_json(contrast_to_json(full.res_ab, names)));
        io::write_text_atomic(out_path(cfg, "contrast_b_minus_a.json"),
                              dump_json(contrast_to_json(full.res_ba, names)));
    }

    const auto rules = extract_rules(table);
    std::string rules_text;
    for (const auto& r : rules)
        rules_text += "[" + r.kind + "] accuracy=" + io::fmt_double(r.accuracy) + " :: " +
                      r.sentence + "\n";
    io::write_text_atomic(out_path(cfg, "rules.txt"), rules_text);

    EvalReport report;
    std::string protocol;
    if (cfg.fixed_contrast) {
        protocol = "fixed-contrast";
        report = train_eval(table, opt);
    } else {
        protocol = "leak-free";
        if (table.rows.size() < 10)
            throw Error(errc::invariant, "need at least 10 subjects for evaluation");
        for (int rep = 0; rep < opt.repetitions; ++rep) {
            const std::uint64_t rep_seed = derive_seed(opt.rng_seed, static_cast<std::uint64_t>(rep));
            Rng rng(rep_seed);
            const SplitIndices split = stratified_split(labels, a.label, opt.train_fraction, rng);
            std::vector<std::size_t> train_a, train_b;
            for (std::size_t i : split.train) {
                if (i < a.members.size()) train_a.push_back(i);
                else train_b.push_back(i - a.members.size());
            }
            SolverConfig rep_scfg = scfg;
            rep_scfg.rng_seed = derive_seed(rep_seed, 2);
            const ContrastSets cs =
                derive_contrast(cfg, subset_group(a, train_a), subset_group(b, train_b), rep_scfg);
            const FeatureTable rep_table = table_from_sets(cfg, subjects, cs, a.label, b.label);
            const RepetitionOutcome outcome =
                evaluate_split(rep_table, split, opt, derive_seed(rep_seed, 1));
            report.accuracies.push_back(outcome.accuracy);
            report.per_repetition_seeds.push_back(rep_seed);
            report.chosen_hyper_c.push_back(outcome.chosen_c);
        }
        double mean = 0.0;
        for (double x : report.accuracies) mean += x;
        mean /= static_cast<double>(report.accuracies.size());
        double var = 0.0;
        for (double x : report.accuracies) var += (x - mean) * (x - mean);
        var /= static_cast<double>(report.accuracies.size());
        report.mean = mean;
        report.stdev = std::sqrt(var);
    }

    json ev;
    ev["accuracies"] = report.accuracies;
    ev["mean"] = report.mean;
    ev["stdev"] = report.stdev;
    ev["per_repetition_seeds"] = report.per_repetition_seeds;
    ev["chosen_hyper_c"] = report.chosen_hyper_c;
    ev["protocol"] = protocol;
    ev["scheme"] = cfg.scheme;
    ev["repetitions"] = cfg.repetitions;
    io::write_text_atomic(out_path(cfg, "eval.json"), dump_json(ev));

    // reporting model on the full table: most frequently chosen C, ties to
    // the smallest
    std::map<double, int> c_votes;
    for (double c : report.chosen_hyper_c) c_votes[c]++;
    double best_c = report.chosen_hyper_c.empty() ? 1.0 : c_votes.begin()->first;
    int best_votes = 0;
    for (const auto& [c, votes] : c_votes)
        if (votes > best_votes) {
            best_votes = votes;
            best_c = c;
        }
    std::vector<std::array<double, 2>> feats;
    std::vector<int> ys;
    for (const auto& r : table.rows) {
        feats.push_back({r.x, r.y});
        ys.push_back(r.label == a.label ? 1 : -1);
    }
    const ClassifierModel model = train_svm(feats, ys, best_c, a.label, b.label,
                                            opt.standardize, opt.quadratic, opt.epochs);

    double min_x = table.rows.front().x, max_x = min_x;
    double min_y = table.rows.front().y, max_y = min_y;
    for (const auto& r : table.rows) {
        min_x = std::min(min_x, r.x);
        max_x = std::max(max_x, r.x);
        min_y = std::min(min_y, r.y);
        max_y = std::max(max_y, r.y);
    }
    auto pad = [](double lo, double hi) {
        const double p = hi > lo ? 0.05 * (hi - lo) : 1.0;
        return std::pair<double, double>{lo - p, hi + p};
    };
    const auto [x_lo, x_hi] = pad(min_x, max_x);
    const auto [y_lo, y_hi] = pad(min_y, max_y);
    constexpr int grid = 200;
    std::string bnd = "x,y,score\n";
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j) {
            const double x = x_lo + (x_hi - x_lo) * i / (grid - 1);
            const double y = y_lo + (y_hi - y_lo) * j / (grid - 1);
            bnd += io::fmt_double(x) + "," + io::fmt_double(y) + "," +
                   io::fmt_double(model.score(x, y)) + "\n";
        }
    io::write_text_atomic(out_path(cfg, "boundary.csv"), bnd);

    json resolved;
    if (cfg.scheme == "p2") {
        resolved["alpha_resolved"] = full.res_sym.alpha_resolved;
    } else {
        resolved["alpha_resolved"] = full.res_ab.alpha_resolved;
        resolved["alpha_b_resolved"] = full.res_ba.alpha_resolved;
    }
    resolved["boundary_hyper_c"] = best_c;
    return resolved;
}

json cmd_report(const RunConfig& cfg) {
    if (cfg.result_path.empty())
        throw Error(errc::config, "report needs --result pointing at a contrast JSON");
    const ContrastResult res = contrast_from_json(json::parse(io::read_text(cfg.result_path)));
    const GraphGroup a = load_group_cfg(cfg, cfg.group_a);
    const GraphGroup b = load_group_cfg(cfg, cfg.group_b);
    const auto atlas = load_atlas_checked(cfg, a.n);
    const SummaryOptions sopt = summary_options(cfg);
    const SummaryGraph sa = build_summary(a, sopt.mode, sopt.binary_tau);
    const SummaryGraph sb = build_summary(b, sopt.mode, sopt.binary_tau);
    const DifferenceGraph d = build_difference(sa, sb, DiffMode::signed_diff);

    write_display_edges_for(cfg, res, d.d, atlas, out_path(cfg, "display_edges.csv"));

    // per-vertex weighted degree within the displayed subgraph of the
    // difference graph; plotting tools scale node size by this
    std::string table = atlas.empty() ? "vertex,degree_in_difference\n"
                                      : "vertex,atlas_name,degree_in_difference\n";
    for (int u : res.vertices) {
        double deg = 0.0;
        for (int v : res.vertices) {
            if (u == v) continue;
            const double raw = d.d(u, v);
            deg += res.variant == ContrastVariant::symmetric ? std::abs(raw)
                   : res.variant == ContrastVariant::b_minus_a ? -raw
                                                               : raw;
        }
        table += std::to_string(u);
        if (!atlas.empty()) table += "," + atlas[static_cast<std::size_t>(u)];
        table += "," + io::fmt_double(deg) + "\n";
    }
    io::write_text_atomic(out_path(cfg, "vertices.csv"), table);
    return json::object();
}

void run_command(const RunConfig& cfg) {
    fsys::create_directories(cfg.out);
    json resolved;
    if (cfg.command == "summarize") resolved = cmd_summarize(cfg);
    else if (cfg.command == "extract") resolved = cmd_extract(cfg);
    else if (cfg.command == "classify") resolved = cmd_classify(cfg);
    else if (cfg.command == "synth") resolved = cmd_synth(cfg);
    else if (cfg.command == "report") resolved = cmd_report(cfg);
    else throw Error(errc::config, "unknown command '" + cfg.command + "'");
    json run = cfg.to_json();
    if (!resolved.empty()) run["resolved"] = resolved;
    io::write_text_atomic((fsys::path(cfg.out) / "run.json").string(), dump_json(run));
}

RunConfig load_run_config(const std::string& run_json_path) {
    return RunConfig::from_json(json::parse(io::read_text(run_json_path)));
}

} // namespace csg
