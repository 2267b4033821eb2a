#pragma once

// Finite-difference verification of the Coriolis spectrum.
//
// In oscillator units (xi = (x - x_Omega)/C, eps = E/(hbar omega_tilde)) every
// k_y sector reduces to H = -1/2 d^2/dxi^2 + xi^2/2, whose exact levels are
// n + 1/2. The three-point stencil carries an O(h^2) eigenvalue error of
// about -h^2 <p^4> / 24; `solve_spectrum` removes it by Richardson
// extrapolation against a companion grid of half the resolution.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <span>
#include <vector>

#include "coriolis/errors.hpp"
#include "coriolis/grid.hpp"
#include "coriolis/hermite.hpp"
#include "coriolis/tridiag.hpp"
#include "coriolis/units.hpp"

namespace coriolis::spectral {

inline constexpr std::size_t kMinSpectralPoints = 64;
inline constexpr int kMaxLevels = 11; // n = 0..10
// |phi_n| at the domain edge above which a level is flagged domain limited.
inline constexpr double kDomainTailThreshold = 1e-8;

/// Dimensionless Hamiltonian -1/2 d^2/dxi^2 + xi^2/2 on a grid symmetric
/// about xi = 0 with Dirichlet boundaries. The sector is fixed by k_y
/// only through the centre of the SI mapping, so the matrix is the same for
/// every k_y.
inline TridiagMatrix discretize_hamiltonian(const FrameParams& /*params*/, double /*k_y*/,
                                            const Grid1D& grid) {
    if (grid.size() < kMinSpectralPoints) {
        throw ValidationError("grid", "spectral grids need at least 64 points");
    }
    const double span = grid.x_max() - grid.x_min();
    if (std::abs(grid.x_min() + grid.x_max()) > 1e-12 * span) {
        throw ValidationError("grid", "dimensionless grid must be symmetric about 0");
    }
    const std::size_t n = grid.size();
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);

    TridiagMatrix t;
    t.diag.resize(n);
    t.off_diag.assign(n - 1, -0.5 * inv_h2);
    for (std::size_t j = 0; j < n; ++j) {
        const double xi = grid[j];
        t.diag[j] = inv_h2 + 0.5 * xi * xi;
    }
    t.grid = grid;
    return t;
}

/// |<vec, phi_n>| with both factors normalized under the grid inner product.
inline double overlap(std::span<const double> vec, int n, const Grid1D& grid) {
    if (vec.size() != grid.size()) {
        throw ValidationError("vec", "length must match the grid");
    }
    const double h = grid.spacing();
    double vv = 0.0;
    double pp = 0.0;
    double vp = 0.0;
    for (std::size_t j = 0; j < vec.size(); ++j) {
        const double phi = hermite_phi(n, grid[j]);
        vv += vec[j] * vec[j] * h;
        pp += phi * phi * h;
        vp += vec[j] * phi * h;
    }
    if (vv == 0.0 || pp == 0.0) {
        return 0.0;
    }
    return std::min(1.0, std::abs(vp) / std::sqrt(vv * pp));
}

inline Grid1D symmetric_grid(double half_width, std::size_t n_points) {
    return Grid1D(-half_width, half_width, n_points);
}

inline EigenResult solve_levels(const FrameParams& params, double k_y, std::size_t n_points,
                                double half_width, int n_levels) {
    if (n_levels < 1 || n_levels > kMaxLevels) {
        throw ValidationError("levels", "between 1 and 11 levels are supported");
    }
    const TridiagMatrix t = discretize_hamiltonian(params, k_y, symmetric_grid(half_width, n_points));
    return eigensolve_lowest(t, static_cast<std::size_t>(n_levels));
}

struct LevelResult {
    int level;
    double analytic;     // n + 1/2
    double raw;          // eigenvalue on the requested grid
    double extrapolated; // Richardson estimate from the requested and companion grids
    double raw_error;
    double error;
    double overlap; // with phi_n, from the requested grid
    double residual;
};

struct Spectrum {
    std::vector<LevelResult> levels;
    EigenResult eigen;     // requested grid
    std::size_t companion; // point count of the coarser grid
    ScalingMap scaling;
};

/// Lowest `n_levels` levels of the sector k_y on +-half_width with n_points
/// nodes, plus the h^2-extrapolated values.
inline Spectrum solve_spectrum(const FrameParams& params, double k_y, int n_levels,
                               std::size_t n_points, double half_width) {
    const std::size_t companion = (n_points + 1) / 2;
    auto coarse_job = std::async(std::launch::async, [&] {
        return solve_levels(params, k_y, companion, half_width, n_levels);
    });
    EigenResult fine = solve_levels(params, k_y, n_points, half_width, n_levels);
    const EigenResult coarse = coarse_job.get();

    const double hf = fine.grid->spacing();
    const double hc = coarse.grid->spacing();
    const double hf2 = hf * hf;
    const double hc2 = hc * hc;

    Spectrum out{{}, std::move(fine), companion, oscillator_scaling(params, k_y)};
    for (int n = 0; n < n_levels; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const double raw = out.eigen.values[i];
        const double extrapolated = (hc2 * raw - hf2 * coarse.values[i]) / (hc2 - hf2);
        const double exact = static_cast<double>(n) + 0.5;
        out.levels.push_back(LevelResult{n, exact, raw, extrapolated, std::abs(raw - exact),
                                         std::abs(extrapolated - exact),
                                         overlap(out.eigen.vectors[i], n, *out.eigen.grid),
                                         out.eigen.residuals[i]});
    }
    return out;
}

struct StudyRow {
    std::size_t n_points;
    double spacing;
    int level;
    double numeric;
    double error;
    bool domain_limited;
};

/// Raw second-order eigenvalues over a sequence of grids on a fixed domain.
/// Grid sizes are solved concurrently; rows come back ordered by N then level.
inline std::vector<StudyRow> convergence_study(const FrameParams& params, double k_y,
                                               std::span<const std::size_t> n_points_list,
                                               int n_levels, double half_width = 12.0) {
    if (n_points_list.size() < 3) {
        throw ValidationError("n_points_list", "at least three grid sizes are required");
    }
    if (!std::is_sorted(n_points_list.begin(), n_points_list.end()) ||
        std::adjacent_find(n_points_list.begin(), n_points_list.end()) != n_points_list.end()) {
        throw ValidationError("n_points_list", "grid sizes must be strictly ascending");
    }

    std::vector<std::future<EigenResult>> jobs;
    jobs.reserve(n_points_list.size());
    for (const std::size_t n : n_points_list) {
        jobs.push_back(std::async(std::launch::async, [&params, k_y, n, half_width, n_levels] {
            return solve_levels(params, k_y, n, half_width, n_levels);
        }));
    }

    std::vector<StudyRow> rows;
    for (std::size_t g = 0; g < jobs.size(); ++g) {
        const EigenResult r = jobs[g].get();
        for (int level = 0; level < n_levels; ++level) {
            const double value = r.values[static_cast<std::size_t>(level)];
            const bool limited = std::abs(hermite_phi(level, half_width)) > kDomainTailThreshold;
            rows.push_back(StudyRow{n_points_list[g], r.grid->spacing(), level, value,
                                    std::abs(value - (level + 0.5)), limited});
        }
    }
    return rows;
}

/// Least-squares slope of log(error) against log(h) for one level.
inline double convergence_order(std::span<const StudyRow> rows, int level) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (const StudyRow& r : rows) {
        if (r.level != level || r.error <= 0.0) {
            continue;
        }
        const double lx = std::log(r.spacing);
        const double ly = std::log(r.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) {
        throw ValidationError("rows", "need at least two rows for the level");
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

} // namespace coriolis::spectral
