#pragma once

#include <string>
#include <vector>

#include "csg/graph.hpp"
#include "csg/matrix.hpp"

namespace csg {

enum class SummaryMode { fraction, weighted_mean, binary };
enum class DiffMode { signed_diff, absolute };

// Per-group aggregate over a shared vertex set. In fraction mode w(u,v) is
// the fraction of member graphs containing the edge, so every entry lies in
// [0,1] and is an integer multiple of 1/group_size.
struct SummaryGraph {
    int n = 0;
    SquareMatrix w;
    std::string group_label;
    int group_size = 0;
    SummaryMode mode = SummaryMode::fraction;
};

struct DifferenceGraph {
    int n = 0;
    SquareMatrix d;
    DiffMode mode = DiffMode::signed_diff;
};

// binary_tau only applies in binary mode: entry = 1 iff fraction > tau (strict).
SummaryGraph build_summary(const GraphGroup& group, SummaryMode mode, double binary_tau = 0.5);

DifferenceGraph build_difference(const SummaryGraph& a, const SummaryGraph& b, DiffMode mode);

// degree(u) = sum_v w(u,v)
std::vector<double> weighted_degrees(const SummaryGraph& s);

// Full n-by-n matrix as CSV, rows/columns in vertex-id order.
void dump_difference_matrix(const DifferenceGraph& d, const std::string& path);

std::string to_string(SummaryMode m);
std::string to_string(DiffMode m);
SummaryMode summary_mode_from_string(const std::string& s);

} // namespace csg
