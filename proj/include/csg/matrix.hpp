#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace csg {

// Dense n-by-n matrix of doubles. Small n (~116 for brain atlases), so no
// sparse or triangular storage.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(int n, double fill = 0.0)
        : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), fill) {}

    int n() const { return n_; }

    double operator()(int u, int v) const {
        return a_[static_cast<std::size_t>(u) * n_ + v];
    }
    double& operator()(int u, int v) {
        return a_[static_cast<std::size_t>(u) * n_ + v];
    }

    void set_sym(int u, int v, double x) {
        (*this)(u, v) = x;
        (*this)(v, u) = x;
    }

    bool is_symmetric(double eps) const {
        for (int u = 0; u < n_; ++u)
            for (int v = u + 1; v < n_; ++v)
                if (std::abs((*this)(u, v) - (*this)(v, u)) > eps) return false;
        return true;
    }

    // Max over off-diagonal entries (u != v); -inf style sentinel avoided:
    // callers only use this on n >= 2.
    double max_offdiag() const {
        double m = (*this)(0, 1);
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (u != v && (*this)(u, v) > m) m = (*this)(u, v);
        return m;
    }

    bool all_finite() const {
        for (double x : a_)
            if (!std::isfinite(x)) return false;
        return true;
    }

    const std::vector<double>& data() const { return a_; }

private:
    int n_ = 0;
    std::vector<double> a_;
};

} // namespace csg
