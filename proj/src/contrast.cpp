#include "csg/contrast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "csg/correlation.hpp"
#include "csg/error.hpp"
#include "csg/io.hpp"

namespace csg {

AlphaSpec AlphaSpec::parse(const std::string& text) {
    std::string t = text;
    AlphaKind kind = AlphaKind::raw;
    bool explicit_kind = false;
    auto strip_prefix = [&](const std::string& p) {
        if (t.rfind(p, 0) == 0) {
            t = t.substr(p.size());
            return true;
        }
        return false;
    };
    if (strip_prefix("percentile:")) {
        kind = AlphaKind::percentile;
        explicit_kind = true;
    } else if (strip_prefix("percent:")) {
        kind = AlphaKind::percent;
        explicit_kind = true;
    } else if (strip_prefix("raw:")) {
        kind = AlphaKind::raw;
        explicit_kind = true;
    } else if (strip_prefix("p")) {
        kind = AlphaKind::percentile;
        explicit_kind = true;
    }
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw Error(errc::config, "cannot parse alpha '" + text + "'");
    // bare values above 1 read as percentages: 70 -> 0.70
    if (!explicit_kind) kind = v > 1.0 ? AlphaKind::percent : AlphaKind::raw;
    AlphaSpec spec{kind, v};
    spec.validate();
    return spec;
}

void AlphaSpec::validate() const {
    switch (kind) {
        case AlphaKind::raw:
            if (!(value > 0.0)) throw Error(errc::config, "alpha must be positive");
            break;
        case AlphaKind::percent:
            if (!(value > 0.0 && value <= 100.0))
                throw Error(errc::config, "percent alpha must lie in (0,100]");
            break;
        case AlphaKind::percentile:
            if (!(value > 0.0 && value < 100.0))
                throw Error(errc::config, "percentile alpha must lie in (0,100)");
            break;
    }
    if (!std::isfinite(value)) throw Error(errc::config, "alpha must be finite");
}

std::string AlphaSpec::to_string() const {
    switch (kind) {
        case AlphaKind::raw: return "raw:" + io::fmt_double(value);
        case AlphaKind::percent: return "percent:" + io::fmt_double(value);
        case AlphaKind::percentile: return "percentile:" + io::fmt_double(value);
    }
    return "?";
}

std::string to_string(ContrastVariant v) {
    switch (v) {
        case ContrastVariant::a_minus_b: return "A-minus-B";
        case ContrastVariant::b_minus_a: return "B-minus-A";
        case ContrastVariant::symmetric: return "symmetric";
    }
    return "?";
}

ContrastVariant contrast_variant_from_string(const std::string& s) {
    if (s == "A-minus-B") return ContrastVariant::a_minus_b;
    if (s == "B-minus-A") return ContrastVariant::b_minus_a;
    if (s == "symmetric") return ContrastVariant::symmetric;
    throw Error(errc::config, "unknown contrast variant '" + s + "'");
}

double resolve_alpha(const AlphaSpec& spec, const DifferenceGraph& d) {
    spec.validate();
    switch (spec.kind) {
        case AlphaKind::raw: return spec.value;
        case AlphaKind::percent: return spec.value / 100.0;
        case AlphaKind::percentile: {
            std::vector<double> positives;
            for (int u = 0; u < d.n; ++u)
                for (int v = u + 1; v < d.n; ++v)
                    if (d.d(u, v) > 0.0) positives.push_back(d.d(u, v));
            if (positives.empty())
                throw Error(errc::alpha_bound,
                            "difference graph has no positive entries; percentile alpha undefined");
            return percentile_nearest_rank(std::move(positives), spec.value);
        }
    }
    throw Error(errc::config, "bad alpha kind");
}

namespace {

ContrastResult run_extract(const GraphGroup& a, const GraphGroup& b, const AlphaSpec& alpha,
                           const SolverConfig& cfg, const SummaryOptions& sopt, DiffMode dmode,
                           ContrastVariant variant) {
    if (a.members.empty() || b.members.empty())
        throw Error(errc::invariant, "empty group");
    if (a.n != b.n)
        throw Error(errc::dimension, "group dimension mismatch: n=" + std::to_string(a.n) +
                                         " vs n=" + std::to_string(b.n));

    const SummaryGraph sa = build_summary(a, sopt.mode, sopt.binary_tau);
    const SummaryGraph sb = build_summary(b, sopt.mode, sopt.binary_tau);
    const DifferenceGraph d = build_difference(sa, sb, dmode);

    const double alpha_resolved = resolve_alpha(alpha, d);
    const double max_pair = a.n >= 2 ? d.d.max_offdiag() : 0.0;
    if (!(alpha_resolved > 0.0 && alpha_resolved < max_pair))
        throw Error(errc::alpha_bound,
                    "alpha " + io::fmt_double(alpha_resolved) + " outside (0, " +
                        io::fmt_double(max_pair) +
                        "): every pair of vertices is detrimental to the objective");

    const GoqcInstance inst = GoqcInstance::constant_alpha(d.d, alpha_resolved);
    SolveResult sol = solve(inst, cfg);

    ContrastResult res;
    res.vertices = std::move(sol.vertices);
    res.objective = sol.value;
    res.alpha_resolved = alpha_resolved;
    res.variant = variant;
    res.trace = std::move(sol.trace);
    res.label_a = a.label;
    res.label_b = b.label;
    res.size_a = static_cast<int>(a.size());
    res.size_b = static_cast<int>(b.size());
    return res;
}

} // namespace

ContrastResult extract(const GraphGroup& a, const GraphGroup& b, const AlphaSpec& alpha,
                       const SolverConfig& cfg, const SummaryOptions& sopt) {
    return run_extract(a, b, alpha, cfg, sopt, DiffMode::signed_diff, ContrastVariant::a_minus_b);
}

ContrastResult extract_symmetric(const GraphGroup& a, const GraphGroup& b, const AlphaSpec& alpha,
                                 const SolverConfig& cfg, const SummaryOptions& sopt) {
    return run_extract(a, b, alpha, cfg, sopt, DiffMode::absolute, ContrastVariant::symmetric);
}

} // namespace csg
