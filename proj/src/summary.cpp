#include "csg/summary.hpp"

#include <cmath>

#include "csg/error.hpp"
#include "csg/io.hpp"

namespace csg {

std::string to_string(SummaryMode m) {
    switch (m) {
        case SummaryMode::fraction: return "fraction";
        case SummaryMode::weighted_mean: return "weighted-mean";
        case SummaryMode::binary: return "binary";
    }
    return "?";
}

std::string to_string(DiffMode m) {
    return m == DiffMode::signed_diff ? "signed" : "absolute";
}

SummaryMode summary_mode_from_string(const std::string& s) {
    if (s == "fraction") return SummaryMode::fraction;
    if (s == "weighted-mean") return SummaryMode::weighted_mean;
    if (s == "binary") return SummaryMode::binary;
    throw Error(errc::config, "unknown summary mode '" + s + "'");
}

SummaryGraph build_summary(const GraphGroup& group, SummaryMode mode, double binary_tau) {
    if (group.members.empty()) throw Error(errc::invariant, "empty group '" + group.label + "'");
    const int n = group.n;
    const auto r = static_cast<double>(group.size());

    SummaryGraph s;
    s.n = n;
    s.group_label = group.label;
    s.group_size = static_cast<int>(group.size());
    s.mode = mode;
    s.w = SquareMatrix(n, 0.0);

    if (mode == SummaryMode::weighted_mean) {
        for (const auto& g : group.members)
            if (!g.weighted())
                throw Error(errc::invariant, "weighted-mean summary requested but subject '" +
                                                 g.subject_id + "' is unweighted");
    }

    // integer edge counts first; the single final division keeps fraction
    // entries exact multiples of 1/r
    SquareMatrix acc(n, 0.0);
    for (const auto& g : group.members) {
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const auto [u, v] = g.edges[i];
            const double contrib = mode == SummaryMode::weighted_mean ? g.weights[i] : 1.0;
            acc(u, v) += contrib;
            acc(v, u) += contrib;
        }
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            const double frac = acc(u, v) / r;
            double val = frac;
            if (mode == SummaryMode::binary) val = frac > binary_tau ? 1.0 : 0.0;
            s.w.set_sym(u, v, val);
        }
    return s;
}

DifferenceGraph build_difference(const SummaryGraph& a, const SummaryGraph& b, DiffMode mode) {
    if (a.n != b.n)
        throw Error(errc::dimension, "summary dimension mismatch: " + std::to_string(a.n) +
                                         " vs " + std::to_string(b.n));
    DifferenceGraph d;
    d.n = a.n;
    d.mode = mode;
    d.d = SquareMatrix(a.n, 0.0);
    for (int u = 0; u < a.n; ++u)
        for (int v = u + 1; v < a.n; ++v) {
            const double x = a.w(u, v) - b.w(u, v);
            d.d.set_sym(u, v, mode == DiffMode::signed_diff ? x : std::abs(x));
        }
    return d;
}

std::vector<double> weighted_degrees(const SummaryGraph& s) {
    std::vector<double> deg(static_cast<std::size_t>(s.n), 0.0);
    for (int u = 0; u < s.n; ++u) {
        double t = 0.0;
        for (int v = 0; v < s.n; ++v) t += s.w(u, v);
        deg[static_cast<std::size_t>(u)] = t;
    }
    return deg;
}

void dump_difference_matrix(const DifferenceGraph& d, const std::string& path) {
    io::write_matrix_csv(d.d, path);
}

} // namespace csg
