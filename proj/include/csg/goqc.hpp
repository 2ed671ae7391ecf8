#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csg/matrix.hpp"
#include "csg/rng.hpp"

namespace csg {

// Generalized optimal quasi-clique instance: maximize over vertex subsets S
//   f(S) = sum_{u<v in S} ( w(u,v) - alpha(u,v) ).
// Both matrices are symmetric with zero diagonal.
struct GoqcInstance {
    int n = 0;
    SquareMatrix w;
    SquareMatrix alpha;

    static GoqcInstance constant_alpha(SquareMatrix pair_weights, double a);

    double surplus(int u, int v) const { return w(u, v) - alpha(u, v); }
    void validate() const;
};

enum class SolveMethod { local_search, sdp, sdp_local_search };

std::string to_string(SolveMethod m);
SolveMethod solve_method_from_string(const std::string& s);

struct SolverConfig {
    int restarts = 10;
    int local_search_max_passes = 100; // T_MAX
    int sdp_rank = 0;                  // 0 = auto: min(n+1, ceil(sqrt(2(n+1))) + 2)
    int sdp_max_iters = 500;
    double sdp_tol = 1e-7;
    int rounding_samples = 50;
    std::uint64_t rng_seed = 0;
    SolveMethod method = SolveMethod::sdp_local_search;
};

struct SolverTrace {
    std::string method;
    double best_value = 0.0;
    std::vector<double> restart_values;
    std::map<std::string, std::int64_t> iterations_used;
    std::uint64_t seed = 0;
};

// f(S); throws on out-of-range vertices. f(empty) = f(singleton) = 0.
double goqc_objective(const GoqcInstance& inst, std::span<const int> s);

// Edge surplus with g(x) = x and h(x) = C(x,2): 0 for the empty set, else
// e_count - alpha * size*(size-1)/2.
double edge_surplus(double e_count, long long size, double alpha);

struct LocalSearchResult {
    std::vector<int> vertices; // sorted ascending
    double value = 0.0;
    int passes = 0;
};

// Greedy add/remove passes with non-worsening acceptance, bounded by T_MAX,
// followed by the argmax over {S, V \ S}. Scan order is ascending vertex
// index; the first qualifying vertex is taken. If start is null the search
// begins from a uniformly random singleton.
LocalSearchResult local_search(const GoqcInstance& inst, const std::vector<int>* start,
                               const SolverConfig& cfg, Rng& rng);

// Unit rows, one per vertex plus the reference row 0.
struct SdpVectors {
    int rank = 0;
    int rows = 0; // n + 1
    std::vector<double> v; // row-major
    double objective = 0.0;
    int iterations = 0;

    std::span<const double> row(int i) const {
        return {v.data() + static_cast<std::size_t>(i) * rank, static_cast<std::size_t>(rank)};
    }
};

int default_sdp_rank(int n);

// Low-rank factorized relaxation of f: maximizes
//   sum_{u<v} (w-alpha)(u,v) * (1 + v_u.v_0 + v_v.v_0 + v_u.v_v) / 4
// over unit vectors by projected gradient ascent with backtracking.
SdpVectors sdp_solve(const GoqcInstance& inst, const SolverConfig& cfg);

// Per-vertex inclusion probabilities (1 + y_u)/2 for a fixed projection
// direction r, with y_u = clip((v_u . r) / sqrt(4 log n), [-1, 1]).
std::vector<double> rounding_probabilities(const SdpVectors& vecs, std::span<const double> r);

// Draws `samples` random hyperplanes, rounds each to a candidate set, and
// returns the candidate with the best objective (ties: first drawn).
// Instances with n <= 2 are enumerated exhaustively instead.
std::vector<int> hyperplane_round(const SdpVectors& vecs, const GoqcInstance& inst,
                                  int samples, Rng& rng);

struct SolveResult {
    std::vector<int> vertices;
    double value = 0.0;
    SolverTrace trace;
};

// Multi-restart orchestration; deterministic given cfg.rng_seed.
SolveResult solve(const GoqcInstance& inst, const SolverConfig& cfg);

} // namespace csg
