#include "csg/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "csg/correlation.hpp"
#include "csg/error.hpp"

namespace fs = std::filesystem;

namespace csg::io {

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(errc::io, "cannot open '" + tmp + "' for writing");
        out << content;
        if (!out) throw Error(errc::io, "write failed for '" + tmp + "'");
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(errc::io, "rename to '" + path + "' failed: " + ec.message());
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(errc::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& tok, const std::string& ctx) {
    const std::string t = trim(tok);
    double v = 0.0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw Error(errc::parse, "bad number '" + t + "' in " + ctx);
    return v;
}

long parse_long(const std::string& tok, const std::string& ctx) {
    const std::string t = trim(tok);
    long v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc{} || res.ptr != t.data() + t.size())
        throw Error(errc::parse, "bad integer '" + t + "' in " + ctx);
    return v;
}

} // namespace

ObservationGraph read_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io, "cannot open '" + path + "'");
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    bool any_weight = false;
    int declared_n = -1;
    int max_vertex = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string ctx = path + ":" + std::to_string(lineno);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            // "# n=K" pins the vertex count
            std::string body = trim(t.substr(1));
            if (body.size() > 2 && (body[0] == 'n' || body[0] == 'N')) {
                std::string rest = trim(body.substr(1));
                if (!rest.empty() && rest[0] == '=')
                    declared_n = static_cast<int>(parse_long(rest.substr(1), ctx));
            }
            continue;
        }
        std::istringstream ss(t);
        std::string a, b, w, extra;
        ss >> a >> b;
        if (a.empty() || b.empty()) throw Error(errc::parse, "malformed edge line in " + ctx);
        const int u = static_cast<int>(parse_long(a, ctx));
        const int v = static_cast<int>(parse_long(b, ctx));
        if (u < 0 || v < 0) throw Error(errc::parse, "negative vertex id in " + ctx);
        max_vertex = std::max({max_vertex, u, v});
        if (ss >> w) {
            if (ss >> extra) throw Error(errc::parse, "trailing tokens in " + ctx);
            while (weights.size() < edges.size()) weights.push_back(1.0);
            weights.push_back(parse_double(w, ctx));
            any_weight = true;
        } else if (any_weight) {
            weights.push_back(1.0);
        }
        edges.emplace_back(u, v);
    }
    const int n = declared_n >= 0 ? declared_n : max_vertex + 1;
    if (!any_weight) weights.clear();
    return make_graph(std::max(n, 0), std::move(edges), fs::path(path).stem().string(), {},
                      std::move(weights));
}

void write_edge_list(const ObservationGraph& g, const std::string& path) {
    std::string out;
    out += "# n=" + std::to_string(g.n) + "\n";
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out += std::to_string(g.edges[i].first) + " " + std::to_string(g.edges[i].second);
        if (g.weighted()) out += " " + fmt_double(g.weights[i]);
        out += "\n";
    }
    write_text_atomic(path, out);
}

SquareMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io, "cannot open '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto toks = split(line, ',');
        std::vector<double> row;
        row.reserve(toks.size());
        for (const auto& t : toks)
            row.push_back(parse_double(t, path + ":" + std::to_string(lineno)));
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    if (n == 0) throw Error(errc::parse, "empty matrix in '" + path + "'");
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw Error(errc::parse, "matrix in '" + path + "' is not square (row " +
                                         std::to_string(i) + " has " +
                                         std::to_string(rows[i].size()) + " of " +
                                         std::to_string(n) + " columns)");
        for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

void write_matrix_csv(const SquareMatrix& m, const std::string& path) {
    std::string out;
    for (int i = 0; i < m.n(); ++i) {
        for (int j = 0; j < m.n(); ++j) {
            if (j) out += ',';
            out += fmt_double(m(i, j));
        }
        out += '\n';
    }
    write_text_atomic(path, out);
}

ObservationGraph read_adjacency_csv(const std::string& path) {
    const SquareMatrix m = read_matrix_csv(path);
    const int n = m.n();
    if (!m.all_finite()) throw Error(errc::parse, "non-finite entry in '" + path + "'");
    for (int i = 0; i < n; ++i)
        if (m(i, i) != 0.0)
            throw Error(errc::invariant,
                        "nonzero diagonal (self-loop) at row " + std::to_string(i) + " in '" + path + "'");
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (std::abs(m(u, v) - m(v, u)) > 1e-9)
                throw Error(errc::invariant, "asymmetric adjacency at (" + std::to_string(u) + "," +
                                                 std::to_string(v) + ") in '" + path + "'");
    std::vector<std::pair<int, int>> edges;
    std::vector<double> weights;
    bool binary = true;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (m(u, v) != 0.0) {
                edges.emplace_back(u, v);
                weights.push_back(m(u, v));
                if (m(u, v) != 1.0) binary = false;
            }
    if (binary) weights.clear();
    return make_graph(n, std::move(edges), fs::path(path).stem().string(), {}, std::move(weights));
}

TimeSeriesMatrix read_timeseries_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io, "cannot open '" + path + "'");
    TimeSeriesMatrix ts;
    ts.subject_id = fs::path(path).stem().string();
    std::string line;
    int lineno = 0;
    int cols = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        const auto toks = split(line, ',');
        if (cols < 0)
            cols = static_cast<int>(toks.size());
        else if (static_cast<int>(toks.size()) != cols)
            throw Error(errc::parse, "ragged time-series row at " + path + ":" + std::to_string(lineno));
        for (const auto& t : toks) {
            const double v = parse_double(t, path + ":" + std::to_string(lineno));
            if (!std::isfinite(v))
                throw Error(errc::invariant,
                            "non-finite sample at " + path + ":" + std::to_string(lineno));
            ts.values.push_back(v);
        }
        ++ts.n_rois;
    }
    ts.n_samples = std::max(cols, 0);
    if (ts.n_rois == 0) throw Error(errc::parse, "empty time series in '" + path + "'");
    if (ts.n_samples < 2)
        throw Error(errc::invariant, "time series in '" + path + "' needs at least 2 samples");
    return ts;
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io, "cannot open manifest '" + path + "'");
    const fs::path base = fs::path(path).parent_path();
    std::vector<ManifestRow> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = line;
        while (!t.empty() && (t.back() == '\r' || t.back() == '\n')) t.pop_back();
        if (trim(t).empty() || t[0] == '#') continue;
        const auto f = split(t, '\t');
        if (f.size() != 3)
            throw Error(errc::parse, "manifest row must have 3 tab-separated fields at " + path +
                                         ":" + std::to_string(lineno));
        if (lineno == 1 && trim(f[0]) == "subject_id") continue; // header
        ManifestRow r{trim(f[0]), trim(f[1]), trim(f[2])};
        if (r.subject_id.empty() || r.path.empty() || r.label.empty())
            throw Error(errc::parse, "empty manifest field at " + path + ":" + std::to_string(lineno));
        const fs::path p(r.path);
        r.path = p.is_absolute() ? p.string() : (base / p).string();
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_manifest(const std::vector<ManifestRow>& rows, const std::string& path) {
    std::string out = "subject_id\tpath\tlabel\n";
    for (const auto& r : rows) out += r.subject_id + "\t" + r.path + "\t" + r.label + "\n";
    write_text_atomic(path, out);
}

namespace {

GraphGroup assemble_group(const std::string& manifest_path,
                          std::vector<ObservationGraph> members) {
    if (members.empty())
        throw Error(errc::invariant, "empty group: manifest '" + manifest_path + "' has no rows");
    GraphGroup g;
    g.label = members.front().label;
    g.n = members.front().n;
    std::set<std::string> ids;
    for (auto& m : members) {
        if (!ids.insert(m.subject_id).second)
            throw Error(errc::invariant,
                        "duplicate subject_id '" + m.subject_id + "' in '" + manifest_path + "'");
        if (m.n != g.n)
            throw Error(errc::invariant, "inconsistent vertex count: subject '" + m.subject_id +
                                             "' has n=" + std::to_string(m.n) + ", expected " +
                                             std::to_string(g.n));
        if (m.label != g.label)
            throw Error(errc::invariant, "mixed labels in '" + manifest_path + "': '" + m.label +
                                             "' vs '" + g.label + "'");
    }
    g.members = std::move(members);
    return g;
}

} // namespace

GraphGroup load_group(const std::string& manifest_path) {
    const auto rows = read_manifest(manifest_path);
    std::vector<ObservationGraph> members(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        ObservationGraph g = fs::path(r.path).extension() == ".csv" ? read_adjacency_csv(r.path)
                                                                    : read_edge_list(r.path);
        g.subject_id = r.subject_id;
        g.label = r.label;
        members[i] = std::move(g);
    }
    return assemble_group(manifest_path, std::move(members));
}

GraphGroup load_group_timeseries(const std::string& manifest_path, double percentile) {
    const auto rows = read_manifest(manifest_path);
    std::vector<ObservationGraph> members(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        TimeSeriesMatrix ts = read_timeseries_csv(r.path);
        ts.subject_id = r.subject_id;
        ObservationGraph g = correlation_graph(ts, percentile);
        g.subject_id = r.subject_id;
        g.label = r.label;
        members[i] = std::move(g);
    }
    return assemble_group(manifest_path, std::move(members));
}

std::vector<std::string> read_atlas(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(errc::io, "cannot open atlas '" + path + "'");
    std::vector<std::string> names;
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty()) names.push_back(t);
    }
    return names;
}

} // namespace csg::io
