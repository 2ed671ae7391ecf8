#pragma once

#include <string>
#include <vector>

#include "csg/graph.hpp"
#include "csg/matrix.hpp"

namespace csg::io {

// Shortest representation that round-trips the double exactly.
std::string fmt_double(double v);

// Writes to <path>.tmp then renames, so readers never see partial files.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

// Edge-list format: one edge per line, "u v" or "u v w", '#' comments.
// A "# n=K" comment pins the vertex count; otherwise n = max endpoint + 1.
ObservationGraph read_edge_list(const std::string& path);
void write_edge_list(const ObservationGraph& g, const std::string& path);

// CSV of an n-by-n matrix.
SquareMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const SquareMatrix& m, const std::string& path);

// Adjacency CSV: symmetric (within 1e-9), zero diagonal. Nonzero entries are
// edges; if every entry is 0 or 1 the graph is unweighted.
ObservationGraph read_adjacency_csv(const std::string& path);

// Time-series CSV: one ROI per row, one sample per column.
TimeSeriesMatrix read_timeseries_csv(const std::string& path);

struct ManifestRow {
    std::string subject_id;
    std::string path;  // resolved against the manifest's directory
    std::string label;
};

// TSV with columns subject_id, path, label (optional header row).
std::vector<ManifestRow> read_manifest(const std::string& path);
void write_manifest(const std::vector<ManifestRow>& rows, const std::string& path);

// One group per manifest: all rows must carry the same label, subjects must
// be unique and share the vertex count. Files ending in .csv are read as
// adjacency matrices, everything else as edge lists.
GraphGroup load_group(const std::string& manifest_path);

// Same, but each referenced file is an ROI time-series CSV converted to a
// graph by Pearson correlation at the given percentile threshold.
GraphGroup load_group_timeseries(const std::string& manifest_path, double percentile);

// Atlas: one vertex name per line, line i names vertex i.
std::vector<std::string> read_atlas(const std::string& path);

} // namespace csg::io
