#pragma once

// Kinetic momenta and ladder operators represented on a 1-D grid in x.
//
// Pi_x = -i hbar d/dx uses the antisymmetric central difference (Hermitian
// as a complex matrix, zero Dirichlet data outside the grid). Pi_y is
// diagonal: hbar k_y - 2 m omega x_j.
//
// On the lattice [Pi_x, Pi_y] is i hbar m omega (S+ + S-) rather than a
// multiple of the identity; it agrees with 2 i hbar m omega only when applied
// to smooth states, with an O(h^2) error. All operator identities here are
// therefore measured on the analytic ground-state Gaussian centred on
// x_Omega, over interior rows only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "coriolis/analytic.hpp"
#include "coriolis/errors.hpp"
#include "coriolis/grid.hpp"
#include "coriolis/units.hpp"
#include "coriolis/vec3.hpp"

namespace coriolis::lattice {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMinLatticePoints = 16;
// Rows excluded at each edge when comparing operator identities.
inline constexpr std::size_t kBoundaryRows = 2;

struct KineticOperators {
    SparseMatrix pi_x;
    SparseMatrix pi_y;
    Grid1D grid;
    double k_y;
    FrameParams params;

    Vec3 gamma_at(double x) const { return gauge_potential(params, x); }
};

struct LadderOperators {
    SparseMatrix a;
    SparseMatrix a_dagger;
    Grid1D grid;
    double k_y;
    FrameParams params;
};

namespace detail {

inline SparseMatrix central_difference(const Grid1D& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double inv2h = 0.5 / grid.spacing();
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(2 * grid.size());
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
        t.emplace_back(j, j + 1, inv2h);
        t.emplace_back(j + 1, j, -inv2h);
    }
    SparseMatrix d(n, n);
    d.setFromTriplets(t.begin(), t.end());
    return d;
}

inline SparseMatrix identity(const Grid1D& grid) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    SparseMatrix id(n, n);
    id.setIdentity();
    return id;
}

inline void check_lattice(const Grid1D& grid) {
    if (grid.size() < kMinLatticePoints) {
        throw ValidationError("grid", "lattice operators need at least 16 points");
    }
}

// max over interior rows of |lhs - rhs|, divided by `scale`.
inline double interior_max_deviation(const Vector& lhs, const Vector& rhs, double scale) {
    const auto n = lhs.size();
    const auto skip = static_cast<Eigen::Index>(kBoundaryRows);
    double worst = 0.0;
    for (Eigen::Index j = skip; j < n - skip; ++j) {
        worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
    }
    return worst / scale;
}

} // namespace detail

/// Analytic oscillator state phi_n centred on x_Omega, sampled on `grid`.
inline Vector oscillator_test_vector(const FrameParams& p, const Grid1D& grid, double k_y,
                                     int n = 0) {
    const ScalingMap map = oscillator_scaling(p, k_y);
    Vector v(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t j = 0; j < grid.size(); ++j) {
        v[static_cast<Eigen::Index>(j)] = hermite_phi(n, map.to_xi(grid[j]));
    }
    return v;
}

inline KineticOperators kinetic_momentum_matrices(const FrameParams& p, const Grid1D& grid,
                                                  double k_y) {
    detail::check_lattice(grid);
    const auto n = static_cast<Eigen::Index>(grid.size());
    SparseMatrix pi_x = Complex(0.0, -p.hbar()) * detail::central_difference(grid);

    std::vector<Eigen::Triplet<Complex>> diag;
    diag.reserve(grid.size());
    const double coupling = 2.0 * p.m() * p.omega();
    for (Eigen::Index j = 0; j < n; ++j) {
        diag.emplace_back(j, j, p.hbar() * k_y - coupling * grid[static_cast<std::size_t>(j)]);
    }
    SparseMatrix pi_y(n, n);
    pi_y.setFromTriplets(diag.begin(), diag.end());
    return KineticOperators{std::move(pi_x), std::move(pi_y), grid, k_y, p};
}

/// Interior deviation of [Pi_x, Pi_y] from 2 i hbar m omega, relative to
/// 2 hbar m omega, measured on the ground-state Gaussian.
inline double commutator_deviation(const KineticOperators& ops, const FrameParams& p) {
    const SparseMatrix comm = SparseMatrix(ops.pi_x * ops.pi_y) - SparseMatrix(ops.pi_y * ops.pi_x);
    const Vector psi = oscillator_test_vector(p, ops.grid, ops.k_y);
    const double expected = 2.0 * p.hbar() * p.m() * p.omega();
    const Vector lhs = comm * psi;
    const Vector rhs = Complex(0.0, expected) * psi;
    return detail::interior_max_deviation(lhs, rhs, expected * psi.cwiseAbs().maxCoeff());
}

/// a = C / (sqrt(2) hbar) (Pi_x + i Pi_y), a_dagger its adjoint.
///
/// The prefactor carries 1/hbar (not 1/sqrt(hbar)) so that a is
/// dimensionless and [a, a_dagger] = +1; equivalently a = -i (xi + d/dxi)/sqrt(2).
inline LadderOperators ladder_matrices(const FrameParams& p, const Grid1D& grid, double k_y) {
    KineticOperators k = kinetic_momentum_matrices(p, grid, k_y);
    const double scale = coriolis_radius(p) / (std::sqrt(2.0) * p.hbar());
    SparseMatrix a = scale * (k.pi_x + Complex(0.0, 1.0) * k.pi_y);
    SparseMatrix a_dagger = a.adjoint();
    return LadderOperators{std::move(a), std::move(a_dagger), grid, k_y, p};
}

/// Interior deviation of [a, a_dagger] from the identity on the ground Gaussian.
inline double ladder_commutator_deviation(const LadderOperators& l) {
    const SparseMatrix comm = SparseMatrix(l.a * l.a_dagger) - SparseMatrix(l.a_dagger * l.a);
    const Vector psi = oscillator_test_vector(l.params, l.grid, l.k_y);
    return detail::interior_max_deviation(comm * psi, psi, psi.cwiseAbs().maxCoeff());
}

/// Discretized shifted-oscillator Hamiltonian in SI units,
///   -hbar^2/(2m) d^2/dx^2 + m omega_tilde^2 (x - x_Omega)^2 / 2,
/// with the three-point Laplacian and Dirichlet boundaries.
inline SparseMatrix hamiltonian_matrix(const FrameParams& p, const Grid1D& grid, double k_y) {
    const auto n = static_cast<Eigen::Index>(grid.size());
    const double h = grid.spacing();
    const double kinetic = p.hbar() * p.hbar() / (2.0 * p.m() * h * h);
    const double stiffness = 0.5 * p.m() * p.omega_tilde() * p.omega_tilde();
    const double center = guiding_center(p, k_y);
    std::vector<Eigen::Triplet<Complex>> t;
    t.reserve(3 * grid.size());
    for (Eigen::Index j = 0; j < n; ++j) {
        const double dx = grid[static_cast<std::size_t>(j)] - center;
        t.emplace_back(j, j, 2.0 * kinetic + stiffness * dx * dx);
        if (j + 1 < n) {
            t.emplace_back(j, j + 1, -kinetic);
            t.emplace_back(j + 1, j, -kinetic);
        }
    }
    SparseMatrix hm(n, n);
    hm.setFromTriplets(t.begin(), t.end());
    return hm;
}

/// hbar omega_tilde (a_dagger a + 1/2).
inline SparseMatrix number_form_hamiltonian(const LadderOperators& l) {
    const double quantum = level_spacing(l.params);
    return quantum * (SparseMatrix(l.a_dagger * l.a) + 0.5 * detail::identity(l.grid));
}

/// Interior deviation between the ladder form and the discretized
/// Hamiltonian applied to phi_n, relative to max |H phi_n|.
inline double number_form_deviation(const LadderOperators& l, int test_level = 0) {
    const SparseMatrix number = number_form_hamiltonian(l);
    const SparseMatrix direct = hamiltonian_matrix(l.params, l.grid, l.k_y);
    const Vector psi = oscillator_test_vector(l.params, l.grid, l.k_y, test_level);
    const Vector reference = direct * psi;
    return detail::interior_max_deviation(number * psi, reference, reference.cwiseAbs().maxCoeff());
}

/// |a v| / |v| for a state sampled on the ladder grid.
inline double annihilation_norm(const LadderOperators& l, std::span<const double> state) {
    if (state.size() != l.grid.size()) {
        throw ValidationError("state", "length must match the grid");
    }
    Vector v(static_cast<Eigen::Index>(state.size()));
    for (std::size_t j = 0; j < state.size(); ++j) {
        v[static_cast<Eigen::Index>(j)] = state[j];
    }
    return (l.a * v).norm() / v.norm();
}

} // namespace coriolis::lattice
