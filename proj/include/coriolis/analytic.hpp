#pragma once

// Closed-form Coriolis states. With the centrifugal term cancelled by the
// trap, the rotating-frame Hamiltonian is the minimally coupled
//   H = (p - m Gamma)^2 / 2m,   Gamma = (0, 2 omega x, 0),
// with mass in the role of charge. p_y commutes with H, so each k_y sector is
// a harmonic oscillator of frequency 2 omega centred on x_Omega.

#include <cmath>
#include <complex>

#include "coriolis/errors.hpp"
#include "coriolis/hermite.hpp"
#include "coriolis/units.hpp"
#include "coriolis/vec3.hpp"

namespace coriolis {

struct QuantumNumbers {
    int n = 0;
    double k_y = 0.0;
};

/// Gauge potential Gamma(x) = (0, 2 omega x, 0), in m/s.
inline Vec3 gauge_potential(const FrameParams& p, double x) {
    return {0.0, 2.0 * p.omega() * x, 0.0};
}

/// Curl of the gauge potential, (0, 0, 2 omega). Note this is omega_tilde
/// along z, not the frame angular velocity itself.
inline Vec3 coriolis_field(const FrameParams& p) { return {0.0, 0.0, p.omega_tilde()}; }

/// E_n = hbar omega_tilde (n + 1/2).
inline double energy_level(const FrameParams& p, int n) {
    if (n < 0) {
        throw ValidationError("n", "level index must be non-negative");
    }
    return p.hbar() * p.omega_tilde() * (static_cast<double>(n) + 0.5);
}

/// Level spacing hbar omega_tilde = 2 hbar omega.
inline double level_spacing(const FrameParams& p) { return p.hbar() * p.omega_tilde(); }

/// Phi_n(x, y) = exp(i k_y y) phi_n((x - x_Omega)/C) / sqrt(C).
///
/// The plane-wave factor is not square integrable; the state is normalized
/// per unit length in y, so that the integral of |Phi|^2 over x is 1.
inline std::complex<double> eigenfunction(const FrameParams& p, const QuantumNumbers& qn, double x,
                                          double y) {
    if (!std::isfinite(qn.k_y)) {
        throw ValidationError("k_y", "must be finite");
    }
    const double c = coriolis_radius(p);
    const double xi = (x - guiding_center(p, qn.k_y)) / c;
    const double amplitude = hermite_phi(qn.n, xi) / std::sqrt(c);
    const double phase = qn.k_y * y;
    return {amplitude * std::cos(phase), amplitude * std::sin(phase)};
}

} // namespace coriolis
