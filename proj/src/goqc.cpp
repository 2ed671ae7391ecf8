#include "csg/goqc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "csg/error.hpp"
#include "csg/parallel.hpp"

namespace csg {

GoqcInstance GoqcInstance::constant_alpha(SquareMatrix pair_weights, double a) {
    GoqcInstance inst;
    inst.n = pair_weights.n();
    inst.alpha = SquareMatrix(inst.n, 0.0);
    for (int u = 0; u < inst.n; ++u)
        for (int v = 0; v < inst.n; ++v)
            if (u != v) inst.alpha(u, v) = a;
    inst.w = std::move(pair_weights);
    return inst;
}

void GoqcInstance::validate() const {
    if (n < 1) throw Error(errc::invariant, "instance needs at least one vertex");
    if (w.n() != n || alpha.n() != n)
        throw Error(errc::dimension, "instance matrices do not match n");
    if (!w.all_finite() || !alpha.all_finite())
        throw Error(errc::invariant, "non-finite instance entry");
    for (int u = 0; u < n; ++u) {
        if (w(u, u) != 0.0 || alpha(u, u) != 0.0)
            throw Error(errc::invariant, "instance diagonal must be zero");
    }
    if (!w.is_symmetric(0.0) || !alpha.is_symmetric(0.0))
        throw Error(errc::invariant, "instance matrices must be symmetric");
}

std::string to_string(SolveMethod m) {
    switch (m) {
        case SolveMethod::local_search: return "local-search";
        case SolveMethod::sdp: return "sdp";
        case SolveMethod::sdp_local_search: return "sdp+local-search";
    }
    return "?";
}

SolveMethod solve_method_from_string(const std::string& s) {
    if (s == "local-search") return SolveMethod::local_search;
    if (s == "sdp") return SolveMethod::sdp;
    if (s == "sdp+local-search") return SolveMethod::sdp_local_search;
    throw Error(errc::config, "unknown method '" + s + "'");
}

double goqc_objective(const GoqcInstance& inst, std::span<const int> s) {
    std::vector<char> in(static_cast<std::size_t>(inst.n), 0);
    for (int v : s) {
        if (v < 0 || v >= inst.n)
            throw Error(errc::invariant, "vertex " + std::to_string(v) + " out of range [0," +
                                             std::to_string(inst.n) + ")");
        in[static_cast<std::size_t>(v)] = 1;
    }
    double f = 0.0;
    for (int u = 0; u < inst.n; ++u) {
        if (!in[static_cast<std::size_t>(u)]) continue;
        for (int v = u + 1; v < inst.n; ++v)
            if (in[static_cast<std::size_t>(v)]) f += inst.surplus(u, v);
    }
    return f;
}

double edge_surplus(double e_count, long long size, double alpha) {
    if (size < 0) throw Error(errc::invariant, "negative set size");
    if (size == 0) return 0.0;
    return e_count - alpha * (static_cast<double>(size) * static_cast<double>(size - 1) / 2.0);
}

LocalSearchResult local_search(const GoqcInstance& inst, const std::vector<int>* start,
                               const SolverConfig& cfg, Rng& rng) {
    const int n = inst.n;
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    std::vector<double> gain(static_cast<std::size_t>(n), 0.0);

    // gain[u] = sum over members v of (w - alpha)(u, v); the add test is
    // gain[u] >= 0 for u outside S, the remove test gain[u] <= 0 for u in S.
    auto add = [&](int u) {
        in[static_cast<std::size_t>(u)] = 1;
        for (int x = 0; x < n; ++x)
            if (x != u) gain[static_cast<std::size_t>(x)] += inst.surplus(x, u);
    };
    auto remove = [&](int u) {
        in[static_cast<std::size_t>(u)] = 0;
        for (int x = 0; x < n; ++x)
            if (x != u) gain[static_cast<std::size_t>(x)] -= inst.surplus(x, u);
    };

    if (start) {
        for (int v : *start) {
            if (v < 0 || v >= n)
                throw Error(errc::invariant, "start vertex out of range: " + std::to_string(v));
            if (!in[static_cast<std::size_t>(v)]) add(v);
        }
    } else if (n > 0) {
        add(rng.uniform_int(n));
    }

    int passes = 0;
    int blocked = -1; // removed last pass; not re-added in the next add sweep
    for (int pass = 0; pass < cfg.local_search_max_passes; ++pass) {
        ++passes;
        for (;;) {
            int pick = -1;
            for (int u = 0; u < n; ++u)
                if (!in[static_cast<std::size_t>(u)] && u != blocked &&
                    gain[static_cast<std::size_t>(u)] >= 0.0) {
                    pick = u;
                    break;
                }
            if (pick < 0) break;
            add(pick);
        }
        blocked = -1;
        int rem = -1;
        for (int u = 0; u < n; ++u)
            if (in[static_cast<std::size_t>(u)] && gain[static_cast<std::size_t>(u)] <= 0.0) {
                rem = u;
                break;
            }
        if (rem < 0) break;
        remove(rem);
        blocked = rem;
    }

    std::vector<int> s, comp;
    for (int u = 0; u < n; ++u)
        (in[static_cast<std::size_t>(u)] ? s : comp).push_back(u);
    const double fs = goqc_objective(inst, s);
    const double fc = goqc_objective(inst, comp);
    if (fc > fs) return {std::move(comp), fc, passes};
    return {std::move(s), fs, passes};
}

int default_sdp_rank(int n) {
    const int r = static_cast<int>(std::ceil(std::sqrt(2.0 * (n + 1)))) + 2;
    return std::min(n + 1, std::max(2, r));
}

namespace {

double dot(const double* a, const double* b, int k) {
    double s = 0.0;
    for (int i = 0; i < k; ++i) s += a[i] * b[i];
    return s;
}

void normalize_rows(std::vector<double>& m, int rows, int rank,
                    const std::vector<double>* fallback) {
    for (int i = 0; i < rows; ++i) {
        double* row = m.data() + static_cast<std::size_t>(i) * rank;
        const double nrm = std::sqrt(dot(row, row, rank));
        if (nrm > 1e-300) {
            for (int k = 0; k < rank; ++k) row[k] /= nrm;
        } else if (fallback) {
            const double* f = fallback->data() + static_cast<std::size_t>(i) * rank;
            std::copy(f, f + rank, row);
        } else {
            row[0] = 1.0;
            for (int k = 1; k < rank; ++k) row[k] = 0.0;
        }
    }
}

} // namespace

SdpVectors sdp_solve(const GoqcInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    const int n = inst.n;
    const int rank = cfg.sdp_rank > 0 ? cfg.sdp_rank : default_sdp_rank(n);
    if (rank < 2) throw Error(errc::config, "sdp rank must be at least 2");
    if (rank > n + 1) throw Error(errc::config, "sdp rank exceeds n+1");
    const int rows = n + 1;

    Rng rng(derive_seed(cfg.rng_seed, 0x5d90d5ULL));
    std::vector<double> m(static_cast<std::size_t>(rows) * rank);
    for (double& x : m) x = rng.normal();
    normalize_rows(m, rows, rank, nullptr);

    // relaxed objective: sum over pairs of c * (1 + v_u.v_0 + v_v.v_0 + v_u.v_v)/4,
    // rows 1..n carry the vertices, row 0 the reference vector
    auto objective = [&](const std::vector<double>& v) {
        const double* v0 = v.data();
        double o = 0.0;
        for (int u = 0; u < n; ++u) {
            const double* vu = v.data() + static_cast<std::size_t>(u + 1) * rank;
            const double du0 = dot(vu, v0, rank);
            for (int w = u + 1; w < n; ++w) {
                const double c = inst.surplus(u, w);
                if (c == 0.0) continue;
                const double* vw = v.data() + static_cast<std::size_t>(w + 1) * rank;
                o += c * (1.0 + du0 + dot(vw, v0, rank) + dot(vu, vw, rank)) / 4.0;
            }
        }
        return o;
    };

    auto gradient = [&](const std::vector<double>& v, std::vector<double>& g) {
        g.assign(v.size(), 0.0);
        const double* v0 = v.data();
        double* g0 = g.data();
        for (int u = 0; u < n; ++u) {
            const double* vu = v.data() + static_cast<std::size_t>(u + 1) * rank;
            double* gu = g.data() + static_cast<std::size_t>(u + 1) * rank;
            for (int w = u + 1; w < n; ++w) {
                const double c = inst.surplus(u, w) / 4.0;
                if (c == 0.0) continue;
                const double* vw = v.data() + static_cast<std::size_t>(w + 1) * rank;
                double* gw = g.data() + static_cast<std::size_t>(w + 1) * rank;
                for (int k = 0; k < rank; ++k) {
                    gu[k] += c * (v0[k] + vw[k]);
                    gw[k] += c * (v0[k] + vu[k]);
                    g0[k] += c * (vu[k] + vw[k]);
                }
            }
        }
    };

    double obj = objective(m);
    double step = 1.0;
    int iterations = 0;
    std::vector<double> grad, trial;
    for (int it = 1; it <= cfg.sdp_max_iters; ++it) {
        iterations = it;
        gradient(m, grad);
        bool accepted = false;
        double trial_obj = obj;
        while (true) {
            trial = m;
            for (std::size_t i = 0; i < trial.size(); ++i) trial[i] += step * grad[i];
            normalize_rows(trial, rows, rank, &m);
            trial_obj = objective(trial);
            if (!std::isfinite(trial_obj))
                throw Error(errc::numeric, "sdp ascent diverged at iteration " + std::to_string(it));
            if (trial_obj >= obj) {
                accepted = true;
                break;
            }
            step *= 0.5;
            if (step < 1e-16) break;
        }
        if (!accepted) break;
        const double improvement = trial_obj - obj;
        m.swap(trial);
        obj = trial_obj;
        if (improvement <= cfg.sdp_tol * (std::abs(obj) + 1.0)) break;
        step = std::min(step * 2.0, 1e8);
    }

    SdpVectors out;
    out.rank = rank;
    out.rows = rows;
    out.v = std::move(m);
    out.objective = obj;
    out.iterations = iterations;
    return out;
}

std::vector<double> rounding_probabilities(const SdpVectors& vecs, std::span<const double> r) {
    const int n = vecs.rows - 1;
    if (n < 2) throw Error(errc::config, "rounding probabilities need n >= 2");
    if (static_cast<int>(r.size()) != vecs.rank)
        throw Error(errc::dimension, "projection direction has wrong dimension");
    const double t = std::sqrt(4.0 * std::log(static_cast<double>(n)));
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u) {
        const double z = dot(vecs.row(u + 1).data(), r.data(), vecs.rank) / t;
        const double y = std::clamp(z, -1.0, 1.0);
        p[static_cast<std::size_t>(u)] = (1.0 + y) / 2.0;
    }
    return p;
}

namespace {

// Exhaustive argmax over all subsets; first maximizer in mask order wins.
std::pair<std::vector<int>, double> enumerate_all(const GoqcInstance& inst) {
    const int n = inst.n;
    std::vector<int> best;
    double best_val = 0.0; // empty set
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int u = 0; u < n; ++u)
            if (mask & (1u << u)) s.push_back(u);
        const double val = goqc_objective(inst, s);
        if (val > best_val) {
            best_val = val;
            best = std::move(s);
        }
    }
    return {best, best_val};
}

} // namespace

std::vector<int> hyperplane_round(const SdpVectors& vecs, const GoqcInstance& inst,
                                  int samples, Rng& rng) {
    if (inst.n <= 2) return enumerate_all(inst).first; // sqrt(4 log n) degenerates
    if (vecs.rows != inst.n + 1)
        throw Error(errc::dimension, "vectors do not match the instance");
    if (samples < 1) throw Error(errc::config, "rounding needs at least one sample");
    std::vector<int> best;
    double best_val = -std::numeric_limits<double>::infinity();
    std::vector<double> r(static_cast<std::size_t>(vecs.rank));
    for (int s = 0; s < samples; ++s) {
        for (double& x : r) x = rng.normal();
        const std::vector<double> p = rounding_probabilities(vecs, r);
        std::vector<int> cand;
        for (int u = 0; u < inst.n; ++u)
            if (rng.bernoulli(p[static_cast<std::size_t>(u)])) cand.push_back(u);
        const double val = goqc_objective(inst, cand);
        if (val > best_val) {
            best_val = val;
            best = std::move(cand);
        }
    }
    return best;
}

namespace {

GoqcInstance induced_instance(const GoqcInstance& inst, const std::vector<int>& verts) {
    const int k = static_cast<int>(verts.size());
    GoqcInstance sub;
    sub.n = k;
    sub.w = SquareMatrix(k, 0.0);
    sub.alpha = SquareMatrix(k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            sub.w.set_sym(i, j, inst.w(verts[i], verts[j]));
            sub.alpha.set_sym(i, j, inst.alpha(verts[i], verts[j]));
        }
    return sub;
}

} // namespace

SolveResult solve(const GoqcInstance& inst, const SolverConfig& cfg) {
    inst.validate();
    if (cfg.restarts < 1) throw Error(errc::config, "restarts must be positive");
    if (cfg.local_search_max_passes < 1)
        throw Error(errc::config, "local_search_max_passes must be positive");

    SolverTrace trace;
    trace.method = to_string(cfg.method);
    trace.seed = cfg.rng_seed;

    if (inst.n <= 2 && cfg.method != SolveMethod::local_search) {
        auto [set, value] = enumerate_all(inst);
        trace.restart_values = {value};
        trace.best_value = value;
        trace.iterations_used["enumerated_subsets"] = 1LL << inst.n;
        return {std::move(set), value, std::move(trace)};
    }

    SdpVectors vecs;
    if (cfg.method != SolveMethod::local_search) {
        vecs = sdp_solve(inst, cfg);
        trace.iterations_used["sdp_iterations"] = vecs.iterations;
    }

    struct Restart {
        std::vector<int> set;
        double value = 0.0;
        std::int64_t ls_passes = 0;
    };
    std::vector<Restart> results(static_cast<std::size_t>(cfg.restarts));

    parallel_for(cfg.restarts, [&](int i) {
        Rng rng(derive_seed(cfg.rng_seed, 1000 + static_cast<std::uint64_t>(i)));
        Restart& out = results[static_cast<std::size_t>(i)];
        if (cfg.method == SolveMethod::local_search) {
            LocalSearchResult r = local_search(inst, nullptr, cfg, rng);
            out = {std::move(r.vertices), r.value, r.passes};
            return;
        }
        std::vector<int> cand = hyperplane_round(vecs, inst, cfg.rounding_samples, rng);
        const double cand_val = goqc_objective(inst, cand);
        if (cfg.method == SolveMethod::sdp || cand.empty()) {
            out = {std::move(cand), cand_val, 0};
            return;
        }
        // refine within the rounded candidate's induced instance, then
        // re-score the mapped set on the full instance
        const GoqcInstance sub = induced_instance(inst, cand);
        LocalSearchResult r = local_search(sub, nullptr, cfg, rng);
        std::vector<int> mapped;
        mapped.reserve(r.vertices.size());
        for (int idx : r.vertices) mapped.push_back(cand[static_cast<std::size_t>(idx)]);
        const double refined_val = goqc_objective(inst, mapped);
        if (refined_val > cand_val)
            out = {std::move(mapped), refined_val, r.passes};
        else
            out = {std::move(cand), cand_val, r.passes};
    });

    std::size_t best = 0;
    std::int64_t total_passes = 0;
    trace.restart_values.reserve(results.size());
    for (std::size_t i = 0; i < results.size(); ++i) {
        trace.restart_values.push_back(results[i].value);
        total_passes += results[i].ls_passes;
        if (results[i].value > results[best].value) best = i;
    }
    if (cfg.method != SolveMethod::sdp)
        trace.iterations_used["local_search_passes"] = total_passes;
    trace.best_value = results[best].value;
    return {std::move(results[best].set), results[best].value, std::move(trace)};
}

} // namespace csg
