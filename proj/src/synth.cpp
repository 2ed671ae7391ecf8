#include "csg/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "csg/error.hpp"
#include "csg/rng.hpp"

namespace csg {

void PlantedSpec::validate() const {
    if (n < 1) throw Error(errc::config, "planted spec needs n >= 1");
    if (k < 0 || k > n) throw Error(errc::config, "planted set size must lie in [0, n]");
    if (group_size_a < 1 || group_size_b < 1)
        throw Error(errc::config, "group sizes must be positive");
    for (double p : {p_in_a, p_in_b, p_bg})
        if (!(p >= 0.0 && p <= 1.0))
            throw Error(errc::config, "edge probabilities must lie in [0, 1]");
}

std::pair<GraphGroup, GraphGroup> example_cohort() {
    // 8-vertex pair of single-graph groups; optima at several alpha values
    // are pinned exhaustively in the tests
    const std::vector<std::pair<int, int>> ea = {{0, 1}, {0, 3}, {1, 3}, {0, 4}, {1, 4},
                                                 {3, 4}, {2, 4}, {3, 5}, {4, 5}};
    const std::vector<std::pair<int, int>> eb = {{0, 2}, {1, 2}, {0, 7}, {3, 4}};
    GraphGroup a{"A", 8, {make_graph(8, ea, "A1", "A")}};
    GraphGroup b{"B", 8, {make_graph(8, eb, "B1", "B")}};
    return {std::move(a), std::move(b)};
}

namespace {

ObservationGraph planted_subject(const PlantedSpec& spec, int class_bit, int index) {
    const double p_in = class_bit == 0 ? spec.p_in_a : spec.p_in_b;
    Rng rng(derive_seed(derive_seed(spec.rng_seed, static_cast<std::uint64_t>(class_bit)),
                        static_cast<std::uint64_t>(index)));
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < spec.n; ++u)
        for (int v = u + 1; v < spec.n; ++v) {
            const double p = (u < spec.k && v < spec.k) ? p_in : spec.p_bg;
            if (rng.bernoulli(p)) edges.emplace_back(u, v);
        }
    char id[16];
    std::snprintf(id, sizeof(id), "%c%03d", class_bit == 0 ? 'A' : 'B', index);
    return make_graph(spec.n, std::move(edges), id, class_bit == 0 ? "A" : "B");
}

} // namespace

std::pair<GraphGroup, GraphGroup> planted_dataset(const PlantedSpec& spec) {
    spec.validate();
    GraphGroup a{"A", spec.n, {}};
    GraphGroup b{"B", spec.n, {}};
    a.members.reserve(static_cast<std::size_t>(spec.group_size_a));
    b.members.reserve(static_cast<std::size_t>(spec.group_size_b));
    for (int i = 0; i < spec.group_size_a; ++i) a.members.push_back(planted_subject(spec, 0, i));
    for (int i = 0; i < spec.group_size_b; ++i) b.members.push_back(planted_subject(spec, 1, i));
    return {std::move(a), std::move(b)};
}

BruteForceResult brute_force(const GoqcInstance& inst) {
    inst.validate();
    const int n = inst.n;
    if (n > 20)
        throw Error(errc::config,
                    "brute force is guarded to n <= 20, got n=" + std::to_string(n));

    // Gray-code walk: consecutive subsets differ by one vertex, so the
    // objective updates in O(n) per step via per-vertex gains.
    const std::uint32_t total = 1u << n;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<double> gain(static_cast<std::size_t>(n), 0.0);
    double f = 0.0;

    constexpr double margin = 2e-9; // covers incremental drift; exact pass below
    double best = 0.0;              // empty set
    std::vector<std::uint32_t> candidates{0u};
    std::uint32_t current = 0;

    auto prune = [&]() {
        std::vector<std::uint32_t> keep;
        keep.reserve(candidates.size() / 2);
        // re-filter against the current best with the approximate values;
        // membership is re-validated exactly afterwards anyway
        for (std::uint32_t mask : candidates) {
            double v = 0.0;
            for (int u = 0; u < n; ++u)
                if (mask & (1u << u))
                    for (int w = u + 1; w < n; ++w)
                        if (mask & (1u << w)) v += inst.surplus(u, w);
            if (v >= best - margin) keep.push_back(mask);
        }
        candidates.swap(keep);
    };

    for (std::uint32_t i = 1; i < total; ++i) {
        const int bit = std::countr_zero(i);
        if (in[static_cast<std::size_t>(bit)]) {
            in[static_cast<std::size_t>(bit)] = 0;
            f -= gain[static_cast<std::size_t>(bit)];
            current &= ~(1u << bit);
            for (int x = 0; x < n; ++x)
                if (x != bit) gain[static_cast<std::size_t>(x)] -= inst.surplus(x, bit);
        } else {
            in[static_cast<std::size_t>(bit)] = 1;
            f += gain[static_cast<std::size_t>(bit)];
            current |= 1u << bit;
            for (int x = 0; x < n; ++x)
                if (x != bit) gain[static_cast<std::size_t>(x)] += inst.surplus(x, bit);
        }
        if (f >= best - margin) {
            if (f > best) best = f;
            candidates.push_back(current);
            if (candidates.size() > (1u << 22)) prune();
        }
    }

    // exact re-evaluation of the surviving candidates
    double exact_best = 0.0;
    std::vector<std::pair<std::vector<int>, double>> scored;
    scored.reserve(candidates.size());
    std::set<std::uint32_t> seen;
    for (std::uint32_t mask : candidates) {
        if (!seen.insert(mask).second) continue;
        std::vector<int> s;
        for (int u = 0; u < n; ++u)
            if (mask & (1u << u)) s.push_back(u);
        const double v = goqc_objective(inst, s);
        if (v > exact_best) exact_best = v;
        scored.emplace_back(std::move(s), v);
    }

    BruteForceResult out;
    out.value = exact_best;
    for (auto& [s, v] : scored)
        if (v >= exact_best - 1e-9) out.optima.push_back(std::move(s));
    std::sort(out.optima.begin(), out.optima.end());
    return out;
}

double jaccard(std::span<const int> a, std::span<const int> b) {
    std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa.empty() && sb.empty()) return 1.0;
    std::size_t inter = 0;
    for (int v : sa)
        if (sb.count(v)) ++inter;
    const std::size_t uni = sa.size() + sb.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

} // namespace csg
