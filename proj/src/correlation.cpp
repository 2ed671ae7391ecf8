#include "csg/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "csg/error.hpp"

namespace csg {

double percentile_nearest_rank(std::vector<double> values, double pct) {
    if (values.empty()) throw Error(errc::invariant, "percentile of an empty set");
    if (!(pct > 0.0 && pct < 100.0))
        throw Error(errc::config, "percentile must lie in (0,100), got " + std::to_string(pct));
    std::sort(values.begin(), values.end());
    const auto n = static_cast<long long>(values.size());
    long long rank = static_cast<long long>(std::ceil(pct / 100.0 * static_cast<double>(n)));
    rank = std::clamp(rank, 1LL, n);
    return values[static_cast<std::size_t>(rank - 1)];
}

SquareMatrix pearson_correlation(const TimeSeriesMatrix& ts) {
    const int n = ts.n_rois;
    const int m = ts.n_samples;
    std::vector<double> mean(n, 0.0), norm(n, 0.0);
    std::vector<double> centered(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int t = 0; t < m; ++t) {
            if (!std::isfinite(ts.at(i, t)))
                throw Error(errc::invariant,
                            "non-finite sample in ROI " + std::to_string(i));
            s += ts.at(i, t);
        }
        mean[i] = s / m;
        double sq = 0.0;
        for (int t = 0; t < m; ++t) {
            const double c = ts.at(i, t) - mean[i];
            centered[static_cast<std::size_t>(i) * m + t] = c;
            sq += c * c;
        }
        if (sq <= 0.0)
            throw Error(errc::invariant,
                        "zero-variance ROI " + std::to_string(i) + ": correlation undefined");
        norm[i] = std::sqrt(sq);
    }
    SquareMatrix corr(n, 0.0);
    for (int i = 0; i < n; ++i) {
        corr(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            double dot = 0.0;
            const double* a = centered.data() + static_cast<std::size_t>(i) * m;
            const double* b = centered.data() + static_cast<std::size_t>(j) * m;
            for (int t = 0; t < m; ++t) dot += a[t] * b[t];
            corr.set_sym(i, j, dot / (norm[i] * norm[j]));
        }
    }
    return corr;
}

ObservationGraph correlation_graph(const TimeSeriesMatrix& ts, double percentile) {
    const SquareMatrix corr = pearson_correlation(ts);
    const int n = corr.n();
    std::vector<double> offdiag;
    offdiag.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) offdiag.push_back(corr(u, v));
    if (offdiag.empty())
        throw Error(errc::invariant, "correlation graph needs at least 2 ROIs");
    const double t = percentile_nearest_rank(offdiag, percentile);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (corr(u, v) > t) edges.emplace_back(u, v);
    return make_graph(n, std::move(edges), ts.subject_id);
}

} // namespace csg
