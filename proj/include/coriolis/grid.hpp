#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "coriolis/errors.hpp"

namespace coriolis {

// Uniform grid including both end points.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_points)
        : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
        if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
            throw ValidationError("grid", "x_min must be finite and below x_max");
        }
        if (n_points < 3) {
            throw ValidationError("grid", "at least 3 points are required");
        }
    }

    // Grid symmetric about `center` with `n_points` nodes over [center-half, center+half].
    static Grid1D centered(double center, double half_width, std::size_t n_points) {
        return Grid1D(center - half_width, center + half_width, n_points);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_points_; }
    double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_points_ - 1); }

    double operator[](std::size_t j) const noexcept {
        if (j + 1 == n_points_) {
            return x_max_;
        }
        return x_min_ + spacing() * static_cast<double>(j);
    }

    std::vector<double> points() const {
        std::vector<double> xs(n_points_);
        for (std::size_t j = 0; j < n_points_; ++j) {
            xs[j] = (*this)[j];
        }
        return xs;
    }

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
};

} // namespace coriolis
