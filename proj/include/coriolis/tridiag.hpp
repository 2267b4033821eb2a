#pragma once

// Lowest eigenpairs of a real symmetric tridiagonal matrix.
//
// Eigenvalues come from Sturm-sequence bisection, which resolves each one to
// a few ulps of the matrix norm independently of the others. Eigenvectors
// come from inverse iteration with a pivoted tridiagonal LU, reorthogonalized
// against the vectors already found.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "coriolis/errors.hpp"
#include "coriolis/grid.hpp"

namespace coriolis {

struct TridiagMatrix {
    std::vector<double> diag;
    std::vector<double> off_diag; // off_diag[j] couples rows j and j+1
    // Grid the matrix was discretized on; sets the inner-product weight.
    std::optional<Grid1D> grid;

    std::size_t size() const noexcept { return diag.size(); }

    void validate() const {
        if (diag.empty()) {
            throw ValidationError("matrix", "empty matrix");
        }
        if (off_diag.size() + 1 != diag.size()) {
            throw ValidationError("matrix", "off-diagonal must have N-1 entries");
        }
        const auto finite = [](double v) { return std::isfinite(v); };
        if (!std::all_of(diag.begin(), diag.end(), finite) ||
            !std::all_of(off_diag.begin(), off_diag.end(), finite)) {
            throw ValidationError("matrix", "entries must be finite");
        }
        if (grid && grid->size() != diag.size()) {
            throw ValidationError("matrix", "grid size does not match the matrix");
        }
    }

    // y = T x
    std::vector<double> apply(const std::vector<double>& x) const {
        const std::size_t n = size();
        std::vector<double> y(n);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = diag[j] * x[j];
            if (j > 0) {
                acc += off_diag[j - 1] * x[j - 1];
            }
            if (j + 1 < n) {
                acc += off_diag[j] * x[j + 1];
            }
            y[j] = acc;
        }
        return y;
    }

    double inf_norm() const noexcept {
        double worst = 0.0;
        const std::size_t n = size();
        for (std::size_t j = 0; j < n; ++j) {
            double row = std::abs(diag[j]);
            if (j > 0) {
                row += std::abs(off_diag[j - 1]);
            }
            if (j + 1 < n) {
                row += std::abs(off_diag[j]);
            }
            worst = std::max(worst, row);
        }
        return worst;
    }
};

struct EigenResult {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors; // sum_j v_j^2 * weight = 1
    std::optional<Grid1D> grid;
    std::vector<double> residuals; // |T v - lambda v| / |v|

    double weight() const noexcept { return grid ? grid->spacing() : 1.0; }
};

namespace detail {

// Number of eigenvalues of t strictly below x.
inline std::size_t sturm_count(const TridiagMatrix& t, double x, double pivmin) {
    std::size_t count = 0;
    double q = t.diag[0] - x;
    for (std::size_t j = 0;; ++j) {
        if (std::abs(q) < pivmin) {
            q = -pivmin;
        }
        if (q < 0.0) {
            ++count;
        }
        if (j + 1 == t.size()) {
            break;
        }
        const double e = t.off_diag[j];
        q = t.diag[j + 1] - x - e * e / q;
    }
    return count;
}

inline double bisect_eigenvalue(const TridiagMatrix& t, std::size_t index, double lo, double hi,
                                double pivmin) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    for (int it = 0; it < 256; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin || mid == lo ||
            mid == hi) {
            break;
        }
        if (sturm_count(t, mid, pivmin) > index) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Gaussian elimination with partial pivoting of (T - shift I). Rows of U carry
// up to two super-diagonals.
class ShiftedTridiagLU {
public:
    ShiftedTridiagLU(const TridiagMatrix& t, double shift, double pivmin)
        : n_(t.size()), u0_(n_), u1_(n_, 0.0), u2_(n_, 0.0), mult_(n_, 0.0), swapped_(n_, false) {
        std::vector<double> a(n_);
        std::vector<double> b(t.off_diag);
        for (std::size_t j = 0; j < n_; ++j) {
            a[j] = t.diag[j] - shift;
        }
        b.push_back(0.0);
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            const double c = t.off_diag[k];
            if (std::abs(a[k]) >= std::abs(c)) {
                const double pivot = nonzero(a[k], pivmin);
                mult_[k] = c / pivot;
                u0_[k] = pivot;
                u1_[k] = b[k];
                a[k + 1] -= mult_[k] * b[k];
            } else {
                swapped_[k] = true;
                mult_[k] = a[k] / c;
                u0_[k] = c;
                u1_[k] = a[k + 1];
                u2_[k] = b[k + 1];
                a[k + 1] = b[k] - mult_[k] * a[k + 1];
                b[k + 1] = -mult_[k] * b[k + 1];
            }
        }
        u0_[n_ - 1] = nonzero(a[n_ - 1], pivmin);
    }

    void solve(std::vector<double>& rhs) const {
        for (std::size_t k = 0; k + 1 < n_; ++k) {
            if (swapped_[k]) {
                std::swap(rhs[k], rhs[k + 1]);
            }
            rhs[k + 1] -= mult_[k] * rhs[k];
        }
        for (std::size_t k = n_; k-- > 0;) {
            double acc = rhs[k];
            if (k + 1 < n_) {
                acc -= u1_[k] * rhs[k + 1];
            }
            if (k + 2 < n_) {
                acc -= u2_[k] * rhs[k + 2];
            }
            rhs[k] = acc / u0_[k];
        }
    }

private:
    static double nonzero(double v, double pivmin) {
        if (std::abs(v) < pivmin) {
            return v < 0.0 ? -pivmin : pivmin;
        }
        return v;
    }

    std::size_t n_;
    std::vector<double> u0_, u1_, u2_, mult_;
    std::vector<bool> swapped_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        s += a[j] * b[j];
    }
    return s;
}

inline void normalize(std::vector<double>& v) {
    const double len = std::sqrt(dot(v, v));
    for (double& x : v) {
        x /= len;
    }
}

inline double residual(const TridiagMatrix& t, const std::vector<double>& v, double lambda) {
    const std::vector<double> tv = t.apply(v);
    double r2 = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double d = tv[j] - lambda * v[j];
        r2 += d * d;
    }
    return std::sqrt(r2 / dot(v, v));
}

} // namespace detail

/// Returns the k lowest eigenpairs of `t`. Vectors are normalized under the
/// grid inner product (weight h when the matrix carries a grid, 1 otherwise)
/// and their largest-magnitude component is positive.
inline EigenResult eigensolve_lowest(const TridiagMatrix& t, std::size_t k) {
    t.validate();
    const std::size_t n = t.size();
    if (k < 1 || k > n) {
        throw ValidationError("k", "requested eigenpair count must lie in [1, N]");
    }

    constexpr double eps = std::numeric_limits<double>::epsilon();
    const double tnorm = std::max(t.inf_norm(), std::numeric_limits<double>::min());
    const double pivmin = std::numeric_limits<double>::min() / eps * std::max(1.0, tnorm);
    const double tolerance = std::max(1e-8, 64.0 * eps * tnorm);

    // Gershgorin interval.
    double lo = t.diag[0];
    double hi = t.diag[0];
    for (std::size_t j = 0; j < n; ++j) {
        double radius = 0.0;
        if (j > 0) {
            radius += std::abs(t.off_diag[j - 1]);
        }
        if (j + 1 < n) {
            radius += std::abs(t.off_diag[j]);
        }
        lo = std::min(lo, t.diag[j] - radius);
        hi = std::max(hi, t.diag[j] + radius);
    }
    const double pad = 2.0 * eps * tnorm + pivmin;
    lo -= pad;
    hi += pad;

    EigenResult out;
    out.grid = t.grid;
    out.values.reserve(k);
    out.vectors.reserve(k);
    out.residuals.reserve(k);

    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double lambda = detail::bisect_eigenvalue(t, i, lo, hi, pivmin);
        const detail::ShiftedTridiagLU lu(t, lambda, pivmin);

        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            v[j] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(j) + 0.3 * static_cast<double>(i));
        }
        double res = INFINITY;
        for (int it = 0; it < 8 && res > 0.25 * tolerance; ++it) {
            lu.solve(v);
            for (const auto& prev : out.vectors) {
                const double proj = detail::dot(v, prev) / detail::dot(prev, prev);
                for (std::size_t j = 0; j < n; ++j) {
                    v[j] -= proj * prev[j];
                }
            }
            detail::normalize(v);
            res = detail::residual(t, v, lambda);
        }
        worst = std::max(worst, res);
        if (res > tolerance) {
            throw NumericalFailure("inverse iteration did not converge for eigenvalue " +
                                       std::to_string(i) + "; residual " + std::to_string(res),
                                   worst);
        }

        const auto big = std::max_element(v.begin(), v.end(),
                                          [](double a, double b) { return std::abs(a) < std::abs(b); });
        const double sign = *big < 0.0 ? -1.0 : 1.0;
        const double scale = sign / std::sqrt(out.weight());
        for (double& x : v) {
            x *= scale;
        }
        out.values.push_back(lambda);
        out.vectors.push_back(std::move(v));
        out.residuals.push_back(res);
    }
    return out;
}

} // namespace coriolis
