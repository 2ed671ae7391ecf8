#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csg/graph.hpp"
#include "csg/rng.hpp"
#include "csg/summary.hpp"

namespace csg {

enum class FeatureScheme { p1, p2 };

struct FeatureRow {
    std::string subject_id;
    std::string label;
    double x = 0.0;
    double y = 0.0;
};

// Carried along for rule rendering and reports.
struct FeatureProvenance {
    std::string x_desc, y_desc;  // e.g. "edges induced by the contrast subgraph A-B"
    int x_set_size = -1, y_set_size = -1;
    bool integer_features = false;
    std::string class_a, class_b; // class_a is the positive class
};

struct FeatureTable {
    FeatureScheme scheme = FeatureScheme::p1;
    std::vector<FeatureRow> rows;
    FeatureProvenance provenance;
};

// x = edges induced by s_ab, y = edges induced by s_ba, per subject.
FeatureTable features_p1(const std::vector<const ObservationGraph*>& subjects,
                         std::span<const int> s_ab, std::span<const int> s_ba,
                         const std::string& class_a, const std::string& class_b);

// x = L1 distance between the subject's induced 0/1 adjacency and the A
// summary on s; y likewise against the B summary.
FeatureTable features_p2(const std::vector<const ObservationGraph*>& subjects,
                         std::span<const int> s, const SummaryGraph& sum_a,
                         const SummaryGraph& sum_b);

struct ClassifierModel {
    std::vector<double> weights; // one per (expanded) feature
    double bias = 0.0;
    double hyper_c = 1.0;
    std::vector<std::pair<double, double>> feature_scaling; // (mean, stdev)
    bool quadratic = false;
    std::string positive_label, negative_label;

    double score(double x, double y) const;
    std::string predict(double x, double y) const; // score >= 0 -> positive
};

struct TrainEvalOptions {
    int repetitions = 5;
    int folds = 5;
    double train_fraction = 0.8;
    std::vector<double> c_grid{0.01, 0.1, 1.0, 10.0, 100.0};
    std::uint64_t rng_seed = 0;
    bool standardize = true;
    bool quadratic = false;
    int epochs = 2000;
};

struct EvalReport {
    std::vector<double> accuracies;
    double mean = 0.0;
    double stdev = 0.0; // population stdev of the repetition accuracies
    std::vector<std::uint64_t> per_repetition_seeds;
    std::vector<double> chosen_hyper_c;
};

struct SplitIndices {
    std::vector<std::size_t> train, test;
};

// Per-class shuffle, floor(train_fraction * class size) to train.
SplitIndices stratified_split(const std::vector<std::string>& labels,
                              const std::string& positive_label,
                              double train_fraction, Rng& rng);

struct RepetitionOutcome {
    double accuracy = 0.0;
    double chosen_c = 0.0;
    ClassifierModel model;
};

// Stratified k-fold CV on the train split selects C, the final model trains
// on the whole train split, and accuracy is measured on the test split.
// Feature scaling always derives from the training rows in play.
RepetitionOutcome evaluate_split(const FeatureTable& table, const SplitIndices& split,
                                 const TrainEvalOptions& opt, std::uint64_t rep_seed);

// Repeated 80/20 protocol over an already-fixed feature table.
EvalReport train_eval(const FeatureTable& table, const TrainEvalOptions& opt);

// Max-margin linear model fit by hinge-loss subgradient descent.
ClassifierModel train_svm(const std::vector<std::array<double, 2>>& feats,
                          const std::vector<int>& ys, double c,
                          const std::string& positive_label,
                          const std::string& negative_label,
                          bool standardize, bool quadratic, int epochs);

struct RuleDescriptor {
    std::string kind; // threshold-x | threshold-y | ratio
    double threshold = 0.0; // threshold value, or the ratio k
    std::string predicted_label; // class predicted on the "greater" / "less-than" side
    double accuracy = 0.0;
    std::string sentence;
};

// Best single-feature threshold rule per axis plus the best ratio rule
// y < k*x over k in {1/4, 1/3, 1/2, 1, 2, 3, 4}.
std::vector<RuleDescriptor> extract_rules(const FeatureTable& table);

void write_feature_csv(const FeatureTable& table, const std::string& path);

} // namespace csg
