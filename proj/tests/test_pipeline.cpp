#include "doctest.h"

#include <cmath>

#include "csg/error.hpp"
#include "csg/pipeline.hpp"
#include "csg/synth.hpp"
#include "test_support.hpp"

using namespace csg;

namespace {

FeatureTable two_cluster_table(int per_class, double ax, double ay, double bx, double by) {
    FeatureTable t;
    t.scheme = FeatureScheme::p1;
    t.provenance.class_a = "A";
    t.provenance.class_b = "B";
    t.provenance.x_desc = "the contrast subgraph A-B";
    t.provenance.y_desc = "the contrast subgraph B-A";
    t.provenance.x_set_size = 4;
    t.provenance.y_set_size = 3;
    t.provenance.integer_features = true;
    for (int i = 0; i < per_class; ++i) {
        t.rows.push_back({"a" + std::to_string(i), "A", ax, ay});
        t.rows.push_back({"b" + std::to_string(i), "B", bx, by});
    }
    return t;
}

std::vector<const ObservationGraph*> pointers(const GraphGroup& a, const GraphGroup& b) {
    std::vector<const ObservationGraph*> out;
    for (const auto& g : a.members) out.push_back(&g);
    for (const auto& g : b.members) out.push_back(&g);
    return out;
}

} // namespace

TEST_CASE("p1 features count induced edges per direction") {
    std::vector<std::pair<int, int>> complete;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) complete.emplace_back(u, v);
    const ObservationGraph full = make_graph(6, complete, "full", "A");
    const ObservationGraph empty = make_graph(6, {}, "empty", "B");
    const std::vector<const ObservationGraph*> subjects = {&full, &empty};
    const std::vector<int> s_ab = {0, 1, 2};
    const std::vector<int> s_ba = {3, 4};
    const FeatureTable t = features_p1(subjects, s_ab, s_ba, "A", "B");
    CHECK(t.rows[0].x == 3.0);
    CHECK(t.rows[0].y == 1.0);
    CHECK(t.rows[1].x == 0.0);
    CHECK(t.rows[1].y == 0.0);
    CHECK(t.provenance.x_set_size == 3);
}

TEST_CASE("p1 features ignore edges outside the contrast sets") {
    const std::vector<int> s_ab = {0, 1};
    const std::vector<int> s_ba = {2, 3};
    const ObservationGraph base = make_graph(8, {{0, 1}, {2, 3}}, "s", "A");
    const ObservationGraph more =
        make_graph(8, {{0, 1}, {2, 3}, {0, 5}, {4, 6}, {1, 2}}, "s", "A");
    const std::vector<const ObservationGraph*> subjects = {&base, &more};
    const FeatureTable t = features_p1(subjects, s_ab, s_ba, "A", "B");
    CHECK(t.rows[0].x == t.rows[1].x);
    CHECK(t.rows[0].y == t.rows[1].y);
}

TEST_CASE("p1 features separate the planted classes on the planted set") {
    PlantedSpec spec;
    spec.rng_seed = 21;
    auto [a, b] = planted_dataset(spec);
    std::vector<int> planted;
    for (int v = 0; v < spec.k; ++v) planted.push_back(v);
    const FeatureTable t = features_p1(pointers(a, b), planted, std::vector<int>{}, "A", "B");
    double mean_a = 0.0, mean_b = 0.0;
    for (const auto& r : t.rows) {
        (r.label == "A" ? mean_a : mean_b) += r.x;
        // edge counts: non-negative integers
        CHECK(r.x >= 0.0);
        CHECK(r.x == std::floor(r.x));
        CHECK(r.y == 0.0);
    }
    mean_a /= spec.group_size_a;
    mean_b /= spec.group_size_b;
    CHECK(mean_a > mean_b);
}

TEST_CASE("p2 features measure L1 distance to each summary") {
    GraphGroup a{"A", 4, {make_graph(4, {{0, 1}, {0, 2}, {1, 2}}, "a1", "A")}};
    GraphGroup b{"B", 4, {make_graph(4, {}, "b1", "B")}};
    const SummaryGraph sa = build_summary(a, SummaryMode::fraction);
    const SummaryGraph sb = build_summary(b, SummaryMode::fraction);
    const std::vector<int> s = {0, 1, 2};

    // subject identical to the A summary on s
    const ObservationGraph same = make_graph(4, {{0, 1}, {0, 2}, {1, 2}}, "x", "A");
    const std::vector<const ObservationGraph*> subjects = {&same};
    const FeatureTable t = features_p2(subjects, s, sa, sb);
    CHECK(t.rows[0].x == doctest::Approx(0.0));
    CHECK(t.rows[0].y == doctest::Approx(3.0));
}

TEST_CASE("p2 single-pair arithmetic") {
    // w^A(u,v) = 0.25, w^B(u,v) = 0.75, the subject has the edge
    GraphGroup a{"A", 2, {}};
    a.members.push_back(make_graph(2, {{0, 1}}, "a1", "A"));
    for (int i = 0; i < 3; ++i) a.members.push_back(make_graph(2, {}, "a" + std::to_string(i + 2), "A"));
    GraphGroup b{"B", 2, {}};
    for (int i = 0; i < 3; ++i) b.members.push_back(make_graph(2, {{0, 1}}, "b" + std::to_string(i), "B"));
    b.members.push_back(make_graph(2, {}, "b4", "B"));
    const SummaryGraph sa = build_summary(a, SummaryMode::fraction);
    const SummaryGraph sb = build_summary(b, SummaryMode::fraction);
    REQUIRE(sa.w(0, 1) == 0.25);
    REQUIRE(sb.w(0, 1) == 0.75);

    const ObservationGraph with_edge = make_graph(2, {{0, 1}}, "s", "A");
    const std::vector<const ObservationGraph*> subjects = {&with_edge};
    const FeatureTable t = features_p2(subjects, std::vector<int>{0, 1}, sa, sb);
    CHECK(t.rows[0].x == doctest::Approx(0.75));
    CHECK(t.rows[0].y == doctest::Approx(0.25));
}

TEST_CASE("p2 features satisfy the triangle inequality against the summary gap") {
    const GraphGroup a = csgtest::random_group("A", 10, 6, 0.6, 41);
    const GraphGroup b = csgtest::random_group("B", 10, 5, 0.3, 42);
    const SummaryGraph sa = build_summary(a, SummaryMode::fraction);
    const SummaryGraph sb = build_summary(b, SummaryMode::fraction);
    const std::vector<int> s = {0, 2, 3, 7, 9};
    double gap = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            gap += std::abs(sa.w(s[i], s[j]) - sb.w(s[i], s[j]));
    const FeatureTable t = features_p2(pointers(a, b), s, sa, sb);
    for (const auto& r : t.rows) CHECK(r.x + r.y >= gap - 1e-12);
}

TEST_CASE("perfectly separable features evaluate to full accuracy") {
    const FeatureTable t = two_cluster_table(10, 10.0, 0.0, 0.0, 10.0);
    TrainEvalOptions opt;
    opt.rng_seed = 4;
    const EvalReport r = train_eval(t, opt);
    CHECK(r.accuracies.size() == 5);
    CHECK(r.mean == doctest::Approx(1.0));
    CHECK(r.stdev == doctest::Approx(0.0));
    CHECK(r.per_repetition_seeds.size() == 5);
    CHECK(r.chosen_hyper_c.size() == 5);
}

TEST_CASE("identical feature distributions evaluate to chance") {
    FeatureTable t;
    t.scheme = FeatureScheme::p1;
    t.provenance.class_a = "A";
    t.provenance.class_b = "B";
    Rng rng(8);
    for (int i = 0; i < 40; ++i) {
        const double x = rng.uniform(0.0, 10.0), y = rng.uniform(0.0, 10.0);
        t.rows.push_back({"s" + std::to_string(i), i % 2 == 0 ? "A" : "B", x, y});
    }
    TrainEvalOptions opt;
    opt.rng_seed = 12;
    opt.repetitions = 10;
    const EvalReport r = train_eval(t, opt);
    CHECK(r.mean > 0.25);
    CHECK(r.mean < 0.75);
}

TEST_CASE("planted-style features evaluate above 0.95") {
    PlantedSpec spec;
    spec.rng_seed = 77;
    auto [a, b] = planted_dataset(spec);
    std::vector<int> planted;
    for (int v = 0; v < spec.k; ++v) planted.push_back(v);
    const std::vector<int> decoy = {20, 21, 22, 23, 24, 25, 26, 27, 28, 29};
    const FeatureTable t = features_p1(pointers(a, b), planted, decoy, "A", "B");
    TrainEvalOptions opt;
    opt.rng_seed = 5;
    const EvalReport r = train_eval(t, opt);
    CHECK(r.mean >= 0.95);
}

TEST_CASE("label permutation destroys the signal") {
    PlantedSpec spec;
    spec.rng_seed = 78;
    auto [a, b] = planted_dataset(spec);
    std::vector<int> planted;
    for (int v = 0; v < spec.k; ++v) planted.push_back(v);
    FeatureTable t = features_p1(pointers(a, b), planted, std::vector<int>{20, 21, 22}, "A", "B");
    // permute the labels uniformly at random
    std::vector<std::string> labels;
    for (const auto& r : t.rows) labels.push_back(r.label);
    Rng rng(123);
    for (std::size_t i = labels.size(); i > 1; --i)
        std::swap(labels[i - 1], labels[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)))]);
    for (std::size_t i = 0; i < labels.size(); ++i) t.rows[i].label = labels[i];
    TrainEvalOptions opt;
    opt.rng_seed = 9;
    const EvalReport r = train_eval(t, opt);
    CHECK(r.mean >= 0.35);
    CHECK(r.mean <= 0.65);
}

TEST_CASE("train_eval input validation") {
    TrainEvalOptions opt;
    FeatureTable tiny = two_cluster_table(2, 1, 0, 0, 1); // 4 rows
    CHECK_THROWS_AS(train_eval(tiny, opt), Error);

    FeatureTable single;
    single.scheme = FeatureScheme::p1;
    single.provenance.class_a = "A";
    single.provenance.class_b = "B";
    for (int i = 0; i < 12; ++i) single.rows.push_back({"s" + std::to_string(i), "A", 1.0, 2.0});
    CHECK_THROWS_AS(train_eval(single, opt), Error);
}

TEST_CASE("train_eval is deterministic and the report is self-consistent") {
    const FeatureTable t = two_cluster_table(12, 8.0, 1.0, 2.0, 7.0);
    TrainEvalOptions opt;
    opt.rng_seed = 31;
    const EvalReport r1 = train_eval(t, opt);
    const EvalReport r2 = train_eval(t, opt);
    CHECK(r1.accuracies == r2.accuracies);
    CHECK(r1.chosen_hyper_c == r2.chosen_hyper_c);
    double mean = 0.0;
    for (double a : r1.accuracies) mean += a;
    mean /= static_cast<double>(r1.accuracies.size());
    double var = 0.0;
    for (double a : r1.accuracies) var += (a - mean) * (a - mean);
    var /= static_cast<double>(r1.accuracies.size());
    CHECK(std::abs(r1.mean - mean) <= 1e-12);
    CHECK(std::abs(r1.stdev - std::sqrt(var)) <= 1e-12);
    for (double a : r1.accuracies) {
        CHECK(a >= 0.0);
        CHECK(a <= 1.0);
    }
}

TEST_CASE("scaling parameters derive from the training rows only") {
    FeatureTable t = two_cluster_table(10, 9.0, 2.0, 1.0, 8.0);
    std::vector<std::string> labels;
    for (const auto& r : t.rows) labels.push_back(r.label);
    Rng rng(3);
    const SplitIndices split = stratified_split(labels, "A", 0.8, rng);
    TrainEvalOptions opt;
    const RepetitionOutcome o1 = evaluate_split(t, split, opt, 55);

    // the model's scaling must equal the train-row statistics exactly
    double mx = 0.0, my = 0.0;
    for (std::size_t i : split.train) {
        mx += t.rows[i].x;
        my += t.rows[i].y;
    }
    mx /= static_cast<double>(split.train.size());
    my /= static_cast<double>(split.train.size());
    CHECK(o1.model.feature_scaling[0].first == doctest::Approx(mx).epsilon(1e-12));
    CHECK(o1.model.feature_scaling[1].first == doctest::Approx(my).epsilon(1e-12));

    // mutating test rows must not change the trained model
    FeatureTable mutated = t;
    for (std::size_t i : split.test) {
        mutated.rows[i].x += 1000.0;
        mutated.rows[i].y -= 1000.0;
    }
    const RepetitionOutcome o2 = evaluate_split(mutated, split, opt, 55);
    CHECK(o1.model.weights == o2.model.weights);
    CHECK(o1.model.bias == o2.model.bias);
    CHECK(o1.model.feature_scaling == o2.model.feature_scaling);
}

TEST_CASE("stratified split keeps class proportions") {
    std::vector<std::string> labels;
    for (int i = 0; i < 50; ++i) labels.push_back(i < 30 ? "A" : "B");
    Rng rng(14);
    const SplitIndices split = stratified_split(labels, "A", 0.8, rng);
    std::size_t train_a = 0, test_a = 0;
    for (std::size_t i : split.train)
        if (labels[i] == "A") ++train_a;
    for (std::size_t i : split.test)
        if (labels[i] == "A") ++test_a;
    CHECK(split.train.size() == 40);
    CHECK(split.test.size() == 10);
    CHECK(train_a == 24);
    CHECK(test_a == 6);
}

TEST_CASE("threshold rule on the separable table") {
    const FeatureTable t = two_cluster_table(10, 10.0, 0.0, 0.0, 10.0);
    const auto rules = extract_rules(t);
    REQUIRE(rules.size() == 3);
    CHECK(rules[0].kind == "threshold-x");
    CHECK(rules[0].threshold == doctest::Approx(5.0));
    CHECK(rules[0].predicted_label == "A");
    CHECK(rules[0].accuracy == doctest::Approx(1.0));
    CHECK(rules[0].sentence.find("more than 5 edges") != std::string::npos);
    CHECK(rules[0].sentence.find("4 vertices") != std::string::npos);
    CHECK(rules[1].kind == "threshold-y");
    CHECK(rules[1].predicted_label == "B");
    CHECK(rules[1].accuracy == doctest::Approx(1.0));
    CHECK(rules[2].kind == "ratio");
    CHECK(rules[2].accuracy == doctest::Approx(1.0));
}

TEST_CASE("constant feature column degenerates to the majority share") {
    FeatureTable t = two_cluster_table(10, 3.0, 1.0, 3.0, 9.0); // x constant
    t.rows.push_back({"extra", "A", 3.0, 0.5});
    const auto rules = extract_rules(t);
    CHECK(rules[0].kind == "threshold-x");
    CHECK(rules[0].accuracy == doctest::Approx(11.0 / 21.0));
    CHECK(rules[0].predicted_label == "A");
}

TEST_CASE("rule extraction requires both classes") {
    FeatureTable t;
    t.provenance.class_a = "A";
    t.provenance.class_b = "B";
    for (int i = 0; i < 5; ++i) t.rows.push_back({"s", "A", 1.0, 1.0});
    CHECK_THROWS_AS(extract_rules(t), Error);
}

TEST_CASE("ratio rule sentence renders the fraction wording") {
    // class A below the y = x/2 line, class B above it
    FeatureTable t = two_cluster_table(10, 10.0, 1.0, 4.0, 9.0);
    const auto rules = extract_rules(t);
    const RuleDescriptor& ratio = rules[2];
    CHECK(ratio.accuracy == doctest::Approx(1.0));
    CHECK(ratio.sentence.find("smaller than") != std::string::npos);
}
