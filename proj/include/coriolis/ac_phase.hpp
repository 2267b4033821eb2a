#pragma once

// Aharonov-Carmi phase for electrons inertially coupled to a rotating body,
// and the associated level shift.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coriolis/analytic.hpp"
#include "coriolis/errors.hpp"
#include "coriolis/units.hpp"
#include "coriolis/vec3.hpp"

namespace coriolis::ac {

// C60 rotation rate in the orientationally disordered phase.
inline constexpr double kFullereneOmega = 1e11; // rad/s
// Area consistent with a C60 great circle (radius ~0.35 nm) and a phase of
// order 1 mrad.
inline constexpr double kFullereneArea = 3e-19; // m^2
// Area value as printed in the original estimate; gives ~5e6 rad.
inline constexpr double kPrintedArea = 3e-9; // m^2

struct ACScenario {
    double mass = PhysicalConstants::electron_mass;
    Vec3 omega_vec;
    Vec3 area_vec;
    std::string label;
};

struct ACResult {
    double phase;
    double energy_shift;
    double energy_shift_mev;
    double coriolis_radius;
    std::string notes;
};

namespace detail {

inline void validate(const ACScenario& s) {
    if (!std::isfinite(s.mass) || !(s.mass > 0.0)) {
        throw ValidationError("mass", "must be finite and strictly positive");
    }
    if (!is_finite(s.omega_vec) || norm(s.omega_vec) == 0.0) {
        throw ValidationError("omega", "rotation vector must be finite and non-zero");
    }
    if (!is_finite(s.area_vec)) {
        throw ValidationError("area", "area vector must be finite");
    }
}

} // namespace detail

struct PhaseForms {
    double coupling_form; // (2 m |omega| / hbar) n.A
    double radius_form;   // n.A / C^2
};

/// Both equivalent evaluations of the phase.
inline PhaseForms ac_phase_forms(const ACScenario& s) {
    detail::validate(s);
    const double w = norm(s.omega_vec);
    const double projected = dot(s.omega_vec / w, s.area_vec);
    const double c = coriolis_radius(make_frame_params(s.mass, w));
    return {2.0 * s.mass * w / PhysicalConstants::hbar * projected, projected / (c * c)};
}

/// Phase (2 m |omega| / hbar) n.A, with n the unit vector along omega.
inline double ac_phase(const ACScenario& s) {
    const PhaseForms f = ac_phase_forms(s);
    const double scale = std::max(std::abs(f.coupling_form), std::abs(f.radius_form));
    if (std::abs(f.coupling_form - f.radius_form) > 8.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw NumericalFailure("the two phase forms disagree", std::abs(f.coupling_form - f.radius_form));
    }
    return f.coupling_form;
}

/// Energy shift 2 hbar omega, identical to the Coriolis level spacing.
inline double ac_energy_shift(const FrameParams& p) { return level_spacing(p); }

inline ACScenario fullerene_preset(bool use_printed_area = false) {
    const double area = use_printed_area ? kPrintedArea : kFullereneArea;
    return ACScenario{PhysicalConstants::electron_mass,
                      {0.0, 0.0, kFullereneOmega},
                      {0.0, 0.0, area},
                      use_printed_area ? "C60, printed area 3e-9 m^2"
                                       : "C60, great-circle area 3e-19 m^2"};
}

inline ACResult evaluate(const ACScenario& s) {
    const double phase = ac_phase(s);
    const FrameParams p = make_frame_params(s.mass, norm(s.omega_vec));
    const double shift = ac_energy_shift(p);
    std::string notes = s.label;
    const double area = std::abs(dot(s.omega_vec / norm(s.omega_vec), s.area_vec));
    if (area == kPrintedArea) {
        notes += "; printed area gives a phase far above the quoted ~1 mrad, likely a misprint";
    }
    return ACResult{phase, shift, shift / PhysicalConstants::joule_per_mev, coriolis_radius(p),
                    std::move(notes)};
}

} // namespace coriolis::ac
