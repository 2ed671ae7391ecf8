#include "csg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "csg/error.hpp"
#include "csg/io.hpp"

namespace csg {

FeatureTable features_p1(const std::vector<const ObservationGraph*>& subjects,
                         std::span<const int> s_ab, std::span<const int> s_ba,
                         const std::string& class_a, const std::string& class_b) {
    FeatureTable t;
    t.scheme = FeatureScheme::p1;
    t.provenance.x_desc = "the contrast subgraph " + class_a + "-" + class_b;
    t.provenance.y_desc = "the contrast subgraph " + class_b + "-" + class_a;
    t.provenance.x_set_size = static_cast<int>(s_ab.size());
    t.provenance.y_set_size = static_cast<int>(s_ba.size());
    t.provenance.integer_features = true;
    t.provenance.class_a = class_a;
    t.provenance.class_b = class_b;
    t.rows.reserve(subjects.size());
    for (const ObservationGraph* g : subjects) {
        FeatureRow r;
        r.subject_id = g->subject_id;
        r.label = g->label;
        r.x = static_cast<double>(edge_count_induced(*g, s_ab));
        r.y = static_cast<double>(edge_count_induced(*g, s_ba));
        t.rows.push_back(std::move(r));
    }
    return t;
}

FeatureTable features_p2(const std::vector<const ObservationGraph*>& subjects,
                         std::span<const int> s, const SummaryGraph& sum_a,
                         const SummaryGraph& sum_b) {
    if (sum_a.n != sum_b.n) throw Error(errc::dimension, "summary dimension mismatch");
    FeatureTable t;
    t.scheme = FeatureScheme::p2;
    t.provenance.x_desc = "the " + sum_a.group_label + " summary";
    t.provenance.y_desc = "the " + sum_b.group_label + " summary";
    t.provenance.x_set_size = static_cast<int>(s.size());
    t.provenance.y_set_size = static_cast<int>(s.size());
    t.provenance.integer_features = false;
    t.provenance.class_a = sum_a.group_label;
    t.provenance.class_b = sum_b.group_label;
    std::vector<int> verts(s.begin(), s.end());
    for (int v : verts)
        if (v < 0 || v >= sum_a.n)
            throw Error(errc::invariant, "vertex " + std::to_string(v) + " out of range");
    t.rows.reserve(subjects.size());
    for (const ObservationGraph* g : subjects) {
        if (g->n != sum_a.n) throw Error(errc::dimension, "subject dimension mismatch");
        double x = 0.0, y = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                const int u = verts[i], v = verts[j];
                const double a = g->has_edge(u, v) ? 1.0 : 0.0;
                x += std::abs(a - sum_a.w(u, v));
                y += std::abs(a - sum_b.w(u, v));
            }
        t.rows.push_back({g->subject_id, g->label, x, y});
    }
    return t;
}

namespace {

std::vector<double> expand_features(double x, double y, bool quadratic) {
    if (!quadratic) return {x, y};
    return {x, y, x * x, y * y, x * y};
}

struct Scaler {
    std::vector<std::pair<double, double>> ms; // (mean, stdev)

    static Scaler fit(const std::vector<std::vector<double>>& rows, bool enabled) {
        Scaler s;
        const std::size_t d = rows.empty() ? 0 : rows.front().size();
        s.ms.assign(d, {0.0, 1.0});
        if (!enabled || rows.empty()) return s;
        for (std::size_t j = 0; j < d; ++j) {
            double mean = 0.0;
            for (const auto& r : rows) mean += r[j];
            mean /= static_cast<double>(rows.size());
            double var = 0.0;
            for (const auto& r : rows) var += (r[j] - mean) * (r[j] - mean);
            var /= static_cast<double>(rows.size());
            const double sd = std::sqrt(var);
            s.ms[j] = {mean, sd > 0.0 ? sd : 1.0};
        }
        return s;
    }

    std::vector<double> apply(std::vector<double> r) const {
        for (std::size_t j = 0; j < r.size(); ++j) r[j] = (r[j] - ms[j].first) / ms[j].second;
        return r;
    }
};

} // namespace

double ClassifierModel::score(double x, double y) const {
    std::vector<double> f = expand_features(x, y, quadratic);
    for (std::size_t j = 0; j < f.size(); ++j)
        f[j] = (f[j] - feature_scaling[j].first) / feature_scaling[j].second;
    double s = bias;
    for (std::size_t j = 0; j < f.size(); ++j) s += weights[j] * f[j];
    return s;
}

std::string ClassifierModel::predict(double x, double y) const {
    return score(x, y) >= 0.0 ? positive_label : negative_label;
}

ClassifierModel train_svm(const std::vector<std::array<double, 2>>& feats,
                          const std::vector<int>& ys, double c,
                          const std::string& positive_label,
                          const std::string& negative_label,
                          bool standardize, bool quadratic, int epochs) {
    if (feats.empty() || feats.size() != ys.size())
        throw Error(errc::invariant, "bad training input");
    const auto m = static_cast<double>(feats.size());

    std::vector<std::vector<double>> x;
    x.reserve(feats.size());
    for (const auto& f : feats) x.push_back(expand_features(f[0], f[1], quadratic));
    const Scaler scaler = Scaler::fit(x, standardize);
    for (auto& r : x) r = scaler.apply(std::move(r));

    // bias folded in as a regularized constant feature
    const std::size_t d = x.front().size();
    for (auto& r : x) r.push_back(1.0);

    const double lambda = 1.0 / (c * m);
    std::vector<double> w(d + 1, 0.0);
    for (int t = 1; t <= epochs; ++t) {
        const double eta = 1.0 / (lambda * static_cast<double>(t));
        std::vector<double> grad(d + 1, 0.0);
        for (std::size_t j = 0; j <= d; ++j) grad[j] = lambda * w[j];
        for (std::size_t i = 0; i < x.size(); ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j <= d; ++j) s += w[j] * x[i][j];
            if (ys[i] * s < 1.0)
                for (std::size_t j = 0; j <= d; ++j) grad[j] -= ys[i] * x[i][j] / m;
        }
        for (std::size_t j = 0; j <= d; ++j) w[j] -= eta * grad[j];
    }

    ClassifierModel model;
    model.weights.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(d));
    model.bias = w[d];
    model.hyper_c = c;
    model.feature_scaling = scaler.ms;
    model.quadratic = quadratic;
    model.positive_label = positive_label;
    model.negative_label = negative_label;
    return model;
}

SplitIndices stratified_split(const std::vector<std::string>& labels,
                              const std::string& positive_label,
                              double train_fraction, Rng& rng) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i)
        (labels[i] == positive_label ? pos : neg).push_back(i);
    SplitIndices out;
    for (auto* cls : {&pos, &neg}) {
        auto& idx = *cls;
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)))]);
        const auto n_train =
            static_cast<std::size_t>(std::floor(train_fraction * static_cast<double>(idx.size())));
        for (std::size_t i = 0; i < idx.size(); ++i)
            (i < n_train ? out.train : out.test).push_back(idx[i]);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

namespace {

struct LabelledFeatures {
    std::vector<std::array<double, 2>> x;
    std::vector<int> y;
};

LabelledFeatures gather(const FeatureTable& t, const std::vector<std::size_t>& idx,
                        const std::string& positive) {
    LabelledFeatures out;
    out.x.reserve(idx.size());
    out.y.reserve(idx.size());
    for (std::size_t i : idx) {
        out.x.push_back({t.rows[i].x, t.rows[i].y});
        out.y.push_back(t.rows[i].label == positive ? 1 : -1);
    }
    return out;
}

double accuracy_on(const ClassifierModel& model, const FeatureTable& t,
                   const std::vector<std::size_t>& idx) {
    if (idx.empty()) return 0.0;
    std::size_t correct = 0;
    for (std::size_t i : idx)
        if (model.predict(t.rows[i].x, t.rows[i].y) == t.rows[i].label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(idx.size());
}

std::pair<std::string, std::string> table_classes(const FeatureTable& t) {
    std::string a = t.provenance.class_a, b = t.provenance.class_b;
    if (a.empty() || b.empty()) {
        std::set<std::string> seen;
        for (const auto& r : t.rows) seen.insert(r.label);
        if (seen.size() != 2)
            throw Error(errc::invariant, "feature table must contain exactly two classes, found " +
                                             std::to_string(seen.size()));
        a = t.rows.front().label;
        for (const auto& s : seen)
            if (s != a) b = s;
    }
    return {a, b};
}

} // namespace

RepetitionOutcome evaluate_split(const FeatureTable& table, const SplitIndices& split,
                                 const TrainEvalOptions& opt, std::uint64_t rep_seed) {
    const auto [class_a, class_b] = table_classes(table);
    if (split.train.size() < static_cast<std::size_t>(opt.folds))
        throw Error(errc::invariant, "train split has fewer rows than folds");

    // stratified fold assignment: shuffle per class, deal round-robin
    Rng rng(rep_seed);
    std::vector<std::size_t> pos, neg;
    for (std::size_t i : split.train)
        (table.rows[i].label == class_a ? pos : neg).push_back(i);
    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(opt.folds));
    for (auto* cls : {&pos, &neg}) {
        auto& idx = *cls;
        for (std::size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(i)))]);
        for (std::size_t i = 0; i < idx.size(); ++i)
            folds[i % static_cast<std::size_t>(opt.folds)].push_back(idx[i]);
    }

    double best_mean = -1.0;
    double best_c = opt.c_grid.front();
    for (double c : opt.c_grid) {
        double sum = 0.0;
        int counted = 0;
        for (std::size_t f = 0; f < folds.size(); ++f) {
            if (folds[f].empty()) continue;
            std::vector<std::size_t> tr;
            for (std::size_t g = 0; g < folds.size(); ++g)
                if (g != f) tr.insert(tr.end(), folds[g].begin(), folds[g].end());
            if (tr.empty()) continue;
            std::sort(tr.begin(), tr.end());
            const LabelledFeatures lf = gather(table, tr, class_a);
            const ClassifierModel model = train_svm(lf.x, lf.y, c, class_a, class_b,
                                                    opt.standardize, opt.quadratic, opt.epochs);
            sum += accuracy_on(model, table, folds[f]);
            ++counted;
        }
        const double mean = counted > 0 ? sum / counted : 0.0;
        if (mean > best_mean) {
            best_mean = mean;
            best_c = c;
        }
    }

    const LabelledFeatures lf = gather(table, split.train, class_a);
    ClassifierModel model = train_svm(lf.x, lf.y, best_c, class_a, class_b, opt.standardize,
                                      opt.quadratic, opt.epochs);
    RepetitionOutcome out;
    out.accuracy = accuracy_on(model, table, split.test);
    out.chosen_c = best_c;
    out.model = std::move(model);
    return out;
}

EvalReport train_eval(const FeatureTable& table, const TrainEvalOptions& opt) {
    if (table.rows.size() < 10)
        throw Error(errc::invariant, "need at least 10 rows, got " + std::to_string(table.rows.size()));
    const auto [class_a, class_b] = table_classes(table);
    bool has_a = false, has_b = false;
    for (const auto& r : table.rows) {
        if (r.label == class_a) has_a = true;
        else if (r.label == class_b) has_b = true;
        else throw Error(errc::invariant, "unexpected label '" + r.label + "' in feature table");
    }
    if (!has_a || !has_b) throw Error(errc::invariant, "feature table has a single class");

    std::vector<std::string> labels;
    labels.reserve(table.rows.size());
    for (const auto& r : table.rows) labels.push_back(r.label);

    EvalReport report;
    for (int rep = 0; rep < opt.repetitions; ++rep) {
        const std::uint64_t rep_seed = derive_seed(opt.rng_seed, static_cast<std::uint64_t>(rep));
        Rng rng(rep_seed);
        const SplitIndices split = stratified_split(labels, class_a, opt.train_fraction, rng);
        const RepetitionOutcome outcome =
            evaluate_split(table, split, opt, derive_seed(rep_seed, 1));
        report.accuracies.push_back(outcome.accuracy);
        report.per_repetition_seeds.push_back(rep_seed);
        report.chosen_hyper_c.push_back(outcome.chosen_c);
    }

    double mean = 0.0;
    for (double a : report.accuracies) mean += a;
    mean /= static_cast<double>(report.accuracies.size());
    double var = 0.0;
    for (double a : report.accuracies) var += (a - mean) * (a - mean);
    var /= static_cast<double>(report.accuracies.size());
    report.mean = mean;
    report.stdev = std::sqrt(var);
    return report;
}

namespace {

std::string fmt_threshold(double v, bool integer_features) {
    if (integer_features) return std::to_string(static_cast<long long>(std::floor(v)));
    return io::fmt_double(v);
}

std::string ratio_phrase(double k) {
    if (k == 0.25) return "a quarter of ";
    if (std::abs(k - 1.0 / 3.0) < 1e-12) return "a third of ";
    if (k == 0.5) return "half of ";
    if (k == 1.0) return "";
    if (k == 2.0) return "twice ";
    if (k == 3.0) return "three times ";
    if (k == 4.0) return "four times ";
    return io::fmt_double(k) + " times ";
}

std::string axis_quantity(const FeatureTable& t, bool x_axis) {
    const auto& p = t.provenance;
    if (t.scheme == FeatureScheme::p1)
        return "the number of edges induced by " + (x_axis ? p.x_desc : p.y_desc);
    return "the L1 distance to " + (x_axis ? p.x_desc : p.y_desc);
}

RuleDescriptor threshold_rule(const FeatureTable& t, bool x_axis) {
    const auto [class_a, class_b] = table_classes(t);
    const auto& p = t.provenance;
    const std::size_t n = t.rows.size();

    std::vector<double> vals(n);
    std::size_t count_a = 0;
    for (std::size_t i = 0; i < n; ++i) {
        vals[i] = x_axis ? t.rows[i].x : t.rows[i].y;
        if (t.rows[i].label == class_a) ++count_a;
    }
    std::vector<double> distinct = vals;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    RuleDescriptor rule;
    rule.kind = x_axis ? "threshold-x" : "threshold-y";

    if (distinct.size() < 2) {
        // constant feature: the best this axis offers is the majority class
        const bool a_major = count_a * 2 >= n;
        rule.predicted_label = a_major ? class_a : class_b;
        rule.accuracy = static_cast<double>(a_major ? count_a : n - count_a) /
                        static_cast<double>(n);
        rule.threshold = distinct.empty() ? 0.0 : distinct.front();
        rule.sentence = "The feature on this axis is constant; the rule degenerates to "
                        "predicting the majority class " + rule.predicted_label + ".";
        return rule;
    }

    double best_acc = -1.0, best_theta = 0.0;
    bool best_a_above = true;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        const double theta = (distinct[i] + distinct[i + 1]) / 2.0;
        std::size_t correct_a_above = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const bool above = vals[j] > theta;
            const bool is_a = t.rows[j].label == class_a;
            if (above == is_a) ++correct_a_above;
        }
        const double acc_a = static_cast<double>(correct_a_above) / static_cast<double>(n);
        const double acc_b = 1.0 - acc_a;
        // thresholds ascending, A-above orientation first; strict > keeps
        // the lowest qualifying threshold on ties
        if (acc_a > best_acc) {
            best_acc = acc_a;
            best_theta = theta;
            best_a_above = true;
        }
        if (acc_b > best_acc) {
            best_acc = acc_b;
            best_theta = theta;
            best_a_above = false;
        }
    }

    rule.threshold = best_theta;
    rule.predicted_label = best_a_above ? class_a : class_b;
    rule.accuracy = best_acc;
    const std::string shown = fmt_threshold(best_theta, p.integer_features);
    const int set_size = x_axis ? p.x_set_size : p.y_set_size;
    if (t.scheme == FeatureScheme::p1 && set_size >= 0) {
        rule.sentence = "If an individual exhibits more than " + shown + " edges among the " +
                        std::to_string(set_size) + " vertices of " +
                        (x_axis ? p.x_desc : p.y_desc) +
                        ", then there are high chances that the individual belongs to class " +
                        rule.predicted_label + ".";
    } else {
        rule.sentence = "If " + axis_quantity(t, x_axis) + " exceeds " + shown +
                        ", then there are high chances that the individual belongs to class " +
                        rule.predicted_label + ".";
    }
    return rule;
}

} // namespace

std::vector<RuleDescriptor> extract_rules(const FeatureTable& table) {
    const auto [class_a, class_b] = table_classes(table);
    bool has_a = false, has_b = false;
    for (const auto& r : table.rows) {
        has_a = has_a || r.label == class_a;
        has_b = has_b || r.label == class_b;
    }
    if (!has_a || !has_b) throw Error(errc::invariant, "rule extraction needs both classes");

    std::vector<RuleDescriptor> rules;
    rules.push_back(threshold_rule(table, true));
    rules.push_back(threshold_rule(table, false));

    const std::size_t n = table.rows.size();
    const double ks[] = {0.25, 1.0 / 3.0, 0.5, 1.0, 2.0, 3.0, 4.0};
    double best_acc = -1.0, best_k = 1.0;
    bool best_a_less = true;
    for (double k : ks) {
        std::size_t correct_a_less = 0;
        for (const auto& r : table.rows) {
            const bool less = r.y < k * r.x;
            const bool is_a = r.label == class_a;
            if (less == is_a) ++correct_a_less;
        }
        const double acc_a = static_cast<double>(correct_a_less) / static_cast<double>(n);
        const double acc_b = 1.0 - acc_a;
        if (acc_a > best_acc) {
            best_acc = acc_a;
            best_k = k;
            best_a_less = true;
        }
        if (acc_b > best_acc) {
            best_acc = acc_b;
            best_k = k;
            best_a_less = false;
        }
    }

    RuleDescriptor ratio;
    ratio.kind = "ratio";
    ratio.threshold = best_k;
    ratio.predicted_label = best_a_less ? class_a : class_b;
    ratio.accuracy = best_acc;
    ratio.sentence = "If " + axis_quantity(table, false) + " is smaller than " +
                     ratio_phrase(best_k) + axis_quantity(table, true) +
                     ", then there are high chances that the individual belongs to class " +
                     ratio.predicted_label + ".";
    rules.push_back(std::move(ratio));
    return rules;
}

void write_feature_csv(const FeatureTable& table, const std::string& path) {
    std::string out = "subject_id,label,x,y\n";
    for (const auto& r : table.rows)
        out += r.subject_id + "," + r.label + "," + io::fmt_double(r.x) + "," +
               io::fmt_double(r.y) + "\n";
    io::write_text_atomic(path, out);
}

} // namespace csg
