#include "csg/graph.hpp"

#include <algorithm>
#include <cmath>

#include "csg/error.hpp"

namespace csg {

bool ObservationGraph::has_edge(int u, int v) const {
    if (u == v) return false;
    if (u > v) std::swap(u, v);
    const std::pair<int, int> key{u, v};
    return std::binary_search(edges.begin(), edges.end(), key);
}

void ObservationGraph::validate() const {
    if (!weights.empty() && weights.size() != edges.size())
        throw Error(errc::invariant, "weight count does not match edge count for subject '" +
                                         subject_id + "'");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        if (u == v)
            throw Error(errc::invariant,
                        "self-loop at vertex " + std::to_string(u) + " in subject '" + subject_id + "'");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw Error(errc::invariant, "edge endpoint out of range [0," + std::to_string(n) +
                                             ") in subject '" + subject_id + "'");
        if (!weights.empty() && !std::isfinite(weights[i]))
            throw Error(errc::invariant, "non-finite edge weight in subject '" + subject_id + "'");
        if (i > 0 && edges[i] == edges[i - 1])
            throw Error(errc::invariant, "duplicate edge (" + std::to_string(u) + "," +
                                             std::to_string(v) + ") in subject '" + subject_id + "'");
    }
}

ObservationGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                            std::string subject_id, std::string label,
                            std::vector<double> weights) {
    for (auto& [u, v] : edges)
        if (u > v) std::swap(u, v);
    if (weights.empty()) {
        std::sort(edges.begin(), edges.end());
    } else {
        // keep edge->weight pairing through the sort
        std::vector<std::size_t> order(edges.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
        std::vector<std::pair<int, int>> se(edges.size());
        std::vector<double> sw(weights.size());
        for (std::size_t i = 0; i < order.size(); ++i) {
            se[i] = edges[order[i]];
            sw[i] = weights[order[i]];
        }
        edges = std::move(se);
        weights = std::move(sw);
    }
    ObservationGraph g{n, std::move(subject_id), std::move(label), std::move(edges),
                       std::move(weights)};
    g.validate();
    return g;
}

long long edge_count_induced(const ObservationGraph& g, std::span<const int> s) {
    std::vector<char> in(static_cast<std::size_t>(g.n), 0);
    for (int v : s) {
        if (v < 0 || v >= g.n)
            throw Error(errc::invariant,
                        "vertex " + std::to_string(v) + " out of range [0," + std::to_string(g.n) + ")");
        in[static_cast<std::size_t>(v)] = 1;
    }
    long long count = 0;
    for (const auto& [u, v] : g.edges)
        if (in[static_cast<std::size_t>(u)] && in[static_cast<std::size_t>(v)]) ++count;
    return count;
}

SquareMatrix adjacency_indicator(const ObservationGraph& g) {
    SquareMatrix m(g.n, 0.0);
    for (const auto& [u, v] : g.edges) m.set_sym(u, v, 1.0);
    return m;
}

} // namespace csg
