#pragma once

#include <vector>

#include "csg/graph.hpp"
#include "csg/matrix.hpp"

namespace csg {

// Nearest-rank percentile: the value at rank ceil(pct/100 * N) of the
// ascending sort (1-based). pct must be in (0, 100), values non-empty.
double percentile_nearest_rank(std::vector<double> values, double pct);

// Pairwise Pearson correlation between ROI rows. Throws if a row has zero
// variance (correlation undefined), naming the ROI.
SquareMatrix pearson_correlation(const TimeSeriesMatrix& ts);

// Unweighted graph with an edge wherever the correlation strictly exceeds
// the given percentile of the off-diagonal (u < v) correlation values.
ObservationGraph correlation_graph(const TimeSeriesMatrix& ts, double percentile);

} // namespace csg
