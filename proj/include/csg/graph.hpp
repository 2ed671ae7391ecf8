#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csg/matrix.hpp"

namespace csg {

using VertexId = int;

// One subject's undirected graph over the shared vertex set [0, n).
// Edges are stored as sorted unique pairs with u < v. An empty weight
// vector means the graph is unweighted (every edge has weight 1).
struct ObservationGraph {
    int n = 0;
    std::string subject_id;
    std::string label;
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;

    bool weighted() const { return !weights.empty(); }
    double weight_at(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }
    bool has_edge(int u, int v) const;

    // Throws on self-loops, out-of-range endpoints, duplicate edges,
    // or non-finite weights.
    void validate() const;
};

// Normalizes edge orientation to u < v, sorts, and validates.
ObservationGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                            std::string subject_id = {}, std::string label = {},
                            std::vector<double> weights = {});

// Number of edges of g with both endpoints in s.
long long edge_count_induced(const ObservationGraph& g, std::span<const int> s);

// 0/1 adjacency indicator of g as a dense matrix.
SquareMatrix adjacency_indicator(const ObservationGraph& g);

struct GraphGroup {
    std::string label;
    int n = 0;
    std::vector<ObservationGraph> members;

    std::size_t size() const { return members.size(); }
};

struct TimeSeriesMatrix {
    int n_rois = 0;
    int n_samples = 0;
    std::vector<double> values; // row-major, n_rois x n_samples
    std::string subject_id;

    double at(int roi, int sample) const {
        return values[static_cast<std::size_t>(roi) * n_samples + sample];
    }
};

} // namespace csg
