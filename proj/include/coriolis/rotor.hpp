#pragma once

// Evolution of vectors under dR/dt = O x R.
//
// The constant-generator solution exp(t [O x]) R0 is available both as the
// truncated operator series and as the Rodrigues closed form. A generator
// that changes direction in time does not commute with itself at different
// times, so the propagator is a time-ordered exponential; three
// approximations are provided and cross-checked against each other.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "coriolis/errors.hpp"
#include "coriolis/vec3.hpp"

namespace coriolis::rotor {

inline constexpr std::size_t kMaxSeriesTerms = 170;

/// Acceleration from the Coriolis force, -2 omega x v (force per unit mass).
inline Vec3 coriolis_acceleration(const Vec3& omega, const Vec3& v) {
    return -2.0 * cross(omega, v);
}

/// n-fold nested cross product o x (o x (... x r0)).
inline Vec3 cross_apply_n(const Vec3& o, Vec3 r0, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        r0 = cross(o, r0);
    }
    return r0;
}

/// Partial sum of the exponential series with `n_terms` terms. Each term is
/// obtained from the previous one as (t / k) o x term.
inline Vec3 evolve_series(const Vec3& o, const Vec3& r0, double t, std::size_t n_terms) {
    if (n_terms < 1) {
        throw ValidationError("n_terms", "at least one term is required");
    }
    if (n_terms > kMaxSeriesTerms) {
        throw ValidationError("n_terms", "at most 170 terms are supported");
    }
    Vec3 term = r0;
    Vec3 sum = r0;
    for (std::size_t k = 1; k < n_terms; ++k) {
        term = cross(o, term) * (t / static_cast<double>(k));
        sum += term;
    }
    return sum;
}

/// Rodrigues rotation by angle |o| t about o / |o|. A zero generator is the
/// identity.
inline Vec3 evolve_rodrigues(const Vec3& o, const Vec3& r0, double t) {
    const double magnitude = norm(o);
    if (magnitude == 0.0) {
        return r0;
    }
    const Vec3 n = o / magnitude;
    const double angle = magnitude * t;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * r0 + s * cross(n, r0) + ((1.0 - c) * dot(n, r0)) * n;
}

// Rotation generator O(t): either constant or a piecewise-linear
// interpolation of time-stamped samples.
class RotationGenerator {
public:
    struct Sample {
        double time;
        Vec3 value;
    };

    static RotationGenerator constant(const Vec3& o) { return RotationGenerator(o); }

    static RotationGenerator sampled(std::vector<Sample> samples) {
        if (samples.size() < 2) {
            throw ValidationError("samples", "a sampled generator needs at least two samples");
        }
        for (std::size_t i = 1; i < samples.size(); ++i) {
            if (!(samples[i].time > samples[i - 1].time)) {
                throw ValidationError("samples", "timestamps must be strictly increasing");
            }
        }
        return RotationGenerator(std::move(samples));
    }

    bool is_constant() const noexcept { return std::holds_alternative<Vec3>(data_); }

    // Time range over which the generator is defined; unbounded for constants.
    std::pair<double, double> domain() const {
        if (is_constant()) {
            return {-INFINITY, INFINITY};
        }
        const auto& s = std::get<std::vector<Sample>>(data_);
        return {s.front().time, s.back().time};
    }

    Vec3 operator()(double t) const {
        if (const auto* c = std::get_if<Vec3>(&data_)) {
            return *c;
        }
        const auto& s = std::get<std::vector<Sample>>(data_);
        if (t <= s.front().time) {
            return s.front().value;
        }
        if (t >= s.back().time) {
            return s.back().value;
        }
        const auto hi = std::upper_bound(s.begin(), s.end(), t,
                                         [](double v, const Sample& x) { return v < x.time; });
        const auto lo = hi - 1;
        const double w = (t - lo->time) / (hi->time - lo->time);
        return (1.0 - w) * lo->value + w * hi->value;
    }

private:
    explicit RotationGenerator(Vec3 o) : data_(o) {}
    explicit RotationGenerator(std::vector<Sample> s) : data_(std::move(s)) {}

    std::variant<Vec3, std::vector<Sample>> data_;
};

enum class Method { piecewise_rodrigues, rk4, magnus2 };

/// Propagates r0 from t = 0 (or from the first sample time) to `t_final`
/// with `steps` uniform steps.
///
/// - piecewise_rodrigues: one exact rotation per step using the generator at
///   the step midpoint.
/// - magnus2: one exact rotation per step using the step-averaged generator
///   (Simpson's rule), i.e. the first Magnus term.
/// - rk4: classical Runge-Kutta on the linear ODE.
inline Vec3 evolve_time_dependent(const RotationGenerator& gen, const Vec3& r0, double t_final,
                                  std::size_t steps, Method method) {
    if (steps == 0) {
        throw ValidationError("steps", "at least one step is required");
    }
    const auto [lo, hi] = gen.domain();
    const double t0 = gen.is_constant() ? 0.0 : lo;
    if (!gen.is_constant() && (t_final < lo || t_final > hi)) {
        throw RangeError("t_final lies outside the sampled generator range");
    }

    const double dt = (t_final - t0) / static_cast<double>(steps);
    Vec3 r = r0;
    for (std::size_t k = 0; k < steps; ++k) {
        const double ta = t0 + dt * static_cast<double>(k);
        const double tb = (k + 1 == steps) ? t_final : ta + dt;
        const double tm = 0.5 * (ta + tb);
        const double h = tb - ta;
        switch (method) {
        case Method::piecewise_rodrigues:
            r = evolve_rodrigues(gen(tm), r, h);
            break;
        case Method::magnus2: {
            const Vec3 avg = (gen(ta) + 4.0 * gen(tm) + gen(tb)) / 6.0;
            r = evolve_rodrigues(avg, r, h);
            break;
        }
        case Method::rk4: {
            const Vec3 oa = gen(ta);
            const Vec3 om = gen(tm);
            const Vec3 ob = gen(tb);
            const Vec3 k1 = cross(oa, r);
            const Vec3 k2 = cross(om, r + (0.5 * h) * k1);
            const Vec3 k3 = cross(om, r + (0.5 * h) * k2);
            const Vec3 k4 = cross(ob, r + h * k3);
            r += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            break;
        }
        }
    }
    return r;
}

} // namespace coriolis::rotor
