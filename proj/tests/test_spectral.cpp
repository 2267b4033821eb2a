#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "coriolis/analytic.hpp"
#include "coriolis/spectral.hpp"

using namespace coriolis;
using namespace coriolis::spectral;

namespace {

const FrameParams kFrame = make_frame_params(PhysicalConstants::electron_mass, 1e11);

TEST(Discretize, StructureAndValidation) {
    const Grid1D grid = symmetric_grid(12.0, 401); // odd: node at xi = 0
    const TridiagMatrix t = discretize_hamiltonian(kFrame, 0.0, grid);
    const double h = grid.spacing();
    EXPECT_EQ(t.diag.size(), 401u);
    EXPECT_EQ(t.off_diag.size(), 400u);
    EXPECT_EQ(t.diag[200], 1.0 / (h * h));
    for (double e : t.off_diag) {
        EXPECT_EQ(e, -0.5 / (h * h));
    }
    EXPECT_THROW(discretize_hamiltonian(kFrame, 0.0, symmetric_grid(12.0, 63)), ValidationError);
    EXPECT_THROW(discretize_hamiltonian(kFrame, 0.0, Grid1D(-10.0, 12.0, 200)), ValidationError);
}

TEST(Discretize, GroundStateResidualIsSecondOrder) {
    std::vector<double> res, hs;
    for (std::size_t n : {501, 1001, 2001}) {
        const Grid1D grid = symmetric_grid(12.0, n);
        const TridiagMatrix t = discretize_hamiltonian(kFrame, 0.0, grid);
        std::vector<double> phi(n);
        for (std::size_t j = 0; j < n; ++j) {
            phi[j] = hermite_phi(0, grid[j]);
        }
        const std::vector<double> tphi = t.apply(phi);
        double worst = 0.0;
        for (std::size_t j = 2; j + 2 < n; ++j) {
            worst = std::max(worst, std::abs(tphi[j] - 0.5 * phi[j]));
        }
        res.push_back(worst);
        hs.push_back(grid.spacing());
    }
    for (std::size_t i = 1; i < res.size(); ++i) {
        EXPECT_NEAR(std::log(res[i - 1] / res[i]) / std::log(hs[i - 1] / hs[i]), 2.0, 0.1);
    }
    EXPECT_LT(res.back(), hs.back() * hs.back());
}

TEST(Eigensolve, OscillatorGroundLevel) {
    const EigenResult r = solve_levels(kFrame, 0.0, 4000, 12.0, 1);
    const double h = r.grid->spacing();
    // First-order perturbation of the three-point stencil: -h^2 <p^4> / 24 with <p^4> = 3/4.
    const double predicted = -h * h / 32.0;
    EXPECT_NEAR(r.values[0] - 0.5, predicted, 1e-3 * std::abs(predicted));
    const Spectrum s = solve_spectrum(kFrame, 0.0, 1, 4000, 12.0);
    EXPECT_NEAR(s.levels[0].extrapolated, 0.5, 1e-6);
}

TEST(Overlap, SelfAndParity) {
    const Grid1D grid = symmetric_grid(12.0, 1001);
    std::vector<double> phi0(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        phi0[j] = 3.0 * hermite_phi(0, grid[j]);
    }
    EXPECT_NEAR(overlap(phi0, 0, grid), 1.0, 1e-12);
    EXPECT_LT(overlap(phi0, 1, grid), 1e-10);
    EXPECT_THROW(overlap(std::vector<double>(5, 1.0), 0, grid), ValidationError);
}

TEST(Spectrum, LevelsEigenvectorsAndInvariants) {
    const Spectrum s = solve_spectrum(kFrame, 0.0, 6, 4000, 12.0);
    ASSERT_EQ(s.levels.size(), 6u);
    const EigenResult& r = s.eigen;
    const double h = r.weight();
    for (const LevelResult& l : s.levels) {
        EXPECT_LT(l.error, 1e-6) << "level " << l.level;
        EXPECT_GT(l.overlap, 0.9999) << "level " << l.level;
        EXPECT_LT(l.residual, 1e-8);
        // Raw second-order values undershoot by O(h^2).
        EXPECT_LT(l.raw, l.analytic);
        // SI energy via the scaling map.
        const double e = s.scaling.to_energy(l.extrapolated);
        EXPECT_NEAR(e / energy_level(kFrame, l.level), 1.0, 1e-6 / l.analytic);
    }
    for (std::size_t i = 0; i < r.vectors.size(); ++i) {
        if (i > 0) {
            EXPECT_LT(r.values[i - 1], r.values[i]);
        }
        for (std::size_t k = 0; k < r.vectors.size(); ++k) {
            double s_ik = 0.0;
            for (std::size_t j = 0; j < r.vectors[i].size(); ++j) {
                s_ik += r.vectors[i][j] * r.vectors[k][j] * h;
            }
            EXPECT_NEAR(s_ik, i == k ? 1.0 : 0.0, 1e-10);
        }
    }
}

TEST(Spectrum, IndependentOfKy) {
    const Spectrum a = solve_spectrum(kFrame, 0.0, 3, 1000, 12.0);
    const Spectrum b = solve_spectrum(kFrame, 7e8, 3, 1000, 12.0);
    EXPECT_EQ(a.eigen.values, b.eigen.values);
    EXPECT_NE(a.scaling.center, b.scaling.center);
}

TEST(Spectrum, Deterministic) {
    const Spectrum a = solve_spectrum(kFrame, 0.0, 6, 4000, 12.0);
    const Spectrum b = solve_spectrum(kFrame, 0.0, 6, 4000, 12.0);
    EXPECT_EQ(a.eigen.values, b.eigen.values);
}

TEST(ConvergenceStudy, SecondOrderAndMonotone) {
    const std::vector<std::size_t> sizes{250, 500, 1000, 2000, 4000};
    const auto rows = convergence_study(kFrame, 0.0, sizes, 6, 12.0);
    ASSERT_EQ(rows.size(), sizes.size() * 6);
    EXPECT_NEAR(convergence_order(rows, 0), 2.0, 0.2);
    for (int level = 0; level < 6; ++level) {
        double previous = INFINITY;
        for (const StudyRow& r : rows) {
            if (r.level != level) {
                continue;
            }
            EXPECT_FALSE(r.domain_limited);
            EXPECT_LT(r.error, previous) << "level " << level << " N " << r.n_points;
            previous = r.error;
        }
    }
    // Rows are ordered by N, then level.
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_LE(rows[i - 1].n_points, rows[i].n_points);
    }
}

TEST(ConvergenceStudy, SmallDomainPlateausAndIsFlagged) {
    const std::vector<std::size_t> sizes{500, 1000, 2000, 4000};
    const auto rows = convergence_study(kFrame, 0.0, sizes, 6, 3.0);
    std::vector<double> level5;
    for (const StudyRow& r : rows) {
        if (r.level == 5) {
            EXPECT_TRUE(r.domain_limited);
            level5.push_back(r.error);
        }
    }
    // The truncation error dominates: refining the grid barely changes it.
    EXPECT_GT(level5.back(), 0.1);
    EXPECT_NEAR(level5.back() / level5.front(), 1.0, 0.05);
}

TEST(ConvergenceStudy, Validation) {
    const std::vector<std::size_t> two{100, 200};
    EXPECT_THROW(convergence_study(kFrame, 0.0, two, 1), ValidationError);
    const std::vector<std::size_t> unsorted{400, 200, 800};
    EXPECT_THROW(convergence_study(kFrame, 0.0, unsorted, 1), ValidationError);
    EXPECT_THROW(solve_levels(kFrame, 0.0, 200, 12.0, 12), ValidationError);
}

} // namespace
