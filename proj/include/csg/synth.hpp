#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "csg/goqc.hpp"
#include "csg/graph.hpp"

namespace csg {

// Synthetic cohort with a dense set planted on vertices {0..k-1}: class-A
// subjects draw planted pairs with p_in_a, class-B with p_in_b, every other
// pair with p_bg in both classes.
struct PlantedSpec {
    int n = 60;
    int k = 10;
    int group_size_a = 40;
    int group_size_b = 40;
    double p_in_a = 0.9;
    double p_in_b = 0.1;
    double p_bg = 0.3;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

// Hand-built 8-vertex pair of single-graph groups with known optima at
// several alpha values; the workhorse fixture of the test suite.
std::pair<GraphGroup, GraphGroup> example_cohort();

std::pair<GraphGroup, GraphGroup> planted_dataset(const PlantedSpec& spec);

struct BruteForceResult {
    double value = 0.0;
    std::vector<std::vector<int>> optima; // all maximizers within 1e-9, lexicographic
};

// Exhaustive enumeration over all 2^n subsets; guarded to n <= 20.
BruteForceResult brute_force(const GoqcInstance& inst);

double jaccard(std::span<const int> a, std::span<const int> b);

} // namespace csg
