#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "coriolis/errors.hpp"

namespace coriolis {

inline constexpr int kMaxHermiteOrder = 100;

namespace detail {

inline void check_order(int n) {
    if (n < 0) {
        throw ValidationError("n", "level index must be non-negative");
    }
    if (n > kMaxHermiteOrder) {
        throw UnsupportedOrder("oscillator eigenfunctions are supported up to n = 100");
    }
}

} // namespace detail

/// Normalized oscillator eigenfunction phi_n(xi).
///
/// Uses the three-term recurrence on the normalized functions themselves,
///   phi_{k+1} = sqrt(2/(k+1)) xi phi_k - sqrt(k/(k+1)) phi_{k-1},
/// starting from phi_0 = pi^{-1/4} exp(-xi^2/2). Never forms H_n(xi)
/// explicitly, which overflows for moderate n.
inline double hermite_phi(int n, double xi) {
    detail::check_order(n);
    const double phi0 = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n == 0) {
        return phi0;
    }
    double prev = phi0;
    double cur = std::sqrt(2.0) * xi * phi0;
    for (int k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

// All of phi_0..phi_n at one point.
inline std::vector<double> hermite_phi_all(int n, double xi) {
    detail::check_order(n);
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    out[0] = std::exp(-0.5 * xi * xi) / std::sqrt(std::sqrt(std::numbers::pi));
    if (n >= 1) {
        out[1] = std::sqrt(2.0) * xi * out[0];
    }
    for (int k = 1; k < n; ++k) {
        const double kd = static_cast<double>(k);
        out[k + 1] = std::sqrt(2.0 / (kd + 1.0)) * xi * out[k] - std::sqrt(kd / (kd + 1.0)) * out[k - 1];
    }
    return out;
}

} // namespace coriolis
