#pragma once

#include <cmath>
#include <optional>

#include "coriolis/errors.hpp"

namespace coriolis {

// CODATA 2018 values. Everything else in the library reads them from here.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;          // J s
    static constexpr double electron_mass = 9.1093837015e-31; // kg
    static constexpr double joule_per_mev = 1.602176634e-22;
};

inline constexpr const char* kConstantSet = "CODATA-2018";

// Mass and rotation rate of the rotating frame. `omega` is the magnitude of
// the frame angular velocity; the axis lives with the vector-valued types.
class FrameParams {
public:
    double m() const noexcept { return m_; }
    double omega() const noexcept { return omega_; }
    double hbar() const noexcept { return hbar_; }
    // Oscillator frequency of the shifted-oscillator Hamiltonian, 2 omega.
    double omega_tilde() const noexcept { return omega_tilde_; }

    friend FrameParams make_frame_params(double m, double omega, std::optional<double> hbar);

private:
    FrameParams(double m, double omega, double hbar)
        : m_(m), omega_(omega), hbar_(hbar), omega_tilde_(2.0 * omega) {}

    double m_;
    double omega_;
    double hbar_;
    double omega_tilde_;
};

namespace detail {

inline void require_positive(const char* field, double value) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw ValidationError(field, "must be finite and strictly positive");
    }
}

} // namespace detail

inline FrameParams make_frame_params(double m, double omega,
                                     std::optional<double> hbar = std::nullopt) {
    detail::require_positive("m", m);
    detail::require_positive("omega", omega);
    const double h = hbar.value_or(PhysicalConstants::hbar);
    detail::require_positive("hbar", h);
    return FrameParams(m, omega, h);
}

/// Coriolis radius sqrt(hbar / (2 m omega)), the rotating-frame analogue of
/// the magnetic length.
inline double coriolis_radius(const FrameParams& p) {
    return std::sqrt(p.hbar() / (2.0 * p.m() * p.omega()));
}

/// Guiding center hbar k_y / (m omega_tilde).
inline double guiding_center(const FrameParams& p, double k_y) {
    return p.hbar() * k_y / (p.m() * p.omega_tilde());
}

// Oscillator units: xi = (x - center) / C, eps = E / (hbar omega_tilde).
struct ScalingMap {
    double length_unit;
    double energy_unit;
    double center;

    double to_xi(double x) const { return (x - center) / length_unit; }
    double to_x(double xi) const { return center + xi * length_unit; }
    double to_epsilon(double energy) const { return energy / energy_unit; }
    double to_energy(double epsilon) const { return epsilon * energy_unit; }
};

inline ScalingMap oscillator_scaling(const FrameParams& p, double k_y) {
    return ScalingMap{coriolis_radius(p), p.hbar() * p.omega_tilde(), guiding_center(p, k_y)};
}

} // namespace coriolis
