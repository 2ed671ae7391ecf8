#pragma once

#include <string>
#include <vector>

#include "csg/goqc.hpp"
#include "csg/graph.hpp"
#include "csg/summary.hpp"

namespace csg {

enum class AlphaKind { raw, percent, percentile };

// raw: used as-is. percent: value/100 (the CLI maps bare numbers > 1 here).
// percentile: nearest-rank percentile of the strictly positive difference
// entries, so the effective alpha adapts to the instance.
struct AlphaSpec {
    AlphaKind kind = AlphaKind::raw;
    double value = 0.0;

    // "0.8" -> raw, "80" -> percent, "p80" / "percentile:80" -> percentile.
    static AlphaSpec parse(const std::string& text);
    std::string to_string() const;
    void validate() const;
};

enum class ContrastVariant { a_minus_b, b_minus_a, symmetric };

std::string to_string(ContrastVariant v);
ContrastVariant contrast_variant_from_string(const std::string& s);

struct ContrastResult {
    std::vector<int> vertices;
    double objective = 0.0;
    double alpha_resolved = 0.0;
    ContrastVariant variant = ContrastVariant::a_minus_b;
    SolverTrace trace;
    std::string label_a, label_b; // groups in argument order
    int size_a = 0, size_b = 0;
};

struct SummaryOptions {
    SummaryMode mode = SummaryMode::fraction;
    double binary_tau = 0.5;
};

double resolve_alpha(const AlphaSpec& spec, const DifferenceGraph& d);

// Builds summaries, forms the signed difference w^A - w^B, resolves alpha,
// and solves the resulting quasi-clique instance. The objective is not
// symmetric: the B-minus-A direction is extract(b, a, ...).
ContrastResult extract(const GraphGroup& a, const GraphGroup& b, const AlphaSpec& alpha,
                       const SolverConfig& cfg, const SummaryOptions& sopt = {});

// Same pipeline over the absolute difference |w^A - w^B|; one result serves
// both directions.
ContrastResult extract_symmetric(const GraphGroup& a, const GraphGroup& b,
                                 const AlphaSpec& alpha, const SolverConfig& cfg,
                                 const SummaryOptions& sopt = {});

} // namespace csg
