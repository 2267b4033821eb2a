// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "coriolis/coriolis.hpp"
#include "oracles.hpp"

using namespace coriolis;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const FrameParams kFrame = make_frame_params(PhysicalConstants::electron_mass, 1e11);

Outcome spectrum_reproduction() {
    const auto start = Clock::now();
    const spectral::Spectrum s = spectral::solve_spectrum(kFrame, 0.0, 6, 4000, 12.0);
    const double elapsed = seconds_since(start);
    double worst = 0.0, worst_raw = 0.0;
    for (const auto& l : s.levels) {
        worst = std::max(worst, l.error);
        worst_raw = std::max(worst_raw, l.raw_error);
    }
    return {worst < 1e-6 && elapsed < 10.0,
            fmt("max |eps_n - (n+1/2)| = %.3e (extrapolated; raw second-order %.3e) for n=0..5, "
                "N=4000, +-12; %.3f s",
                worst, worst_raw, elapsed)};
}

Outcome eigenfunction_reproduction() {
    const spectral::Spectrum s = spectral::solve_spectrum(kFrame, 0.0, 6, 4000, 12.0);
    double lowest = 1.0;
    for (const auto& l : s.levels) {
        lowest = std::min(lowest, l.overlap);
    }
    return {lowest > 0.9999, fmt("min overlap with phi_n = %.12f (n=0..5)", lowest)};
}

Outcome spacing_and_shift() {
    const double mev = ac::ac_energy_shift(kFrame) / PhysicalConstants::joule_per_mev;
    const double gap = (energy_level(kFrame, 1) - energy_level(kFrame, 0)) / PhysicalConstants::joule_per_mev;
    const double rel = std::abs(mev - 0.1318) / 0.1318;
    return {rel <= 0.005 && std::abs(gap - mev) <= 1e-15 * mev,
            fmt("Delta E = %.6f meV (target 0.1318 +- 0.5%%, deviation %.3f%%); E1-E0 = %.6f meV", mev,
                100 * rel, gap)};
}

Outcome ac_phase_magnitude() {
    const double def = ac::ac_phase(ac::fullerene_preset(false));
    const double printed = ac::ac_phase(ac::fullerene_preset(true));
    std::ostringstream out, err;
    const int code = cli::run({"report", "--omega", "1e11"}, out, err);
    bool report_ok = false;
    if (code == cli::kOk) {
        const auto doc = nlohmann::json::parse(out.str());
        report_ok = doc.contains("ac_phase_default_rad") && doc.contains("ac_phase_printed_rad") &&
                    doc.contains("ac_phase_printed_flag") &&
                    std::abs(doc["ac_phase_default_rad"].get<double>() - def) <= 1e-15 * def &&
                    std::abs(doc["ac_phase_printed_rad"].get<double>() - printed) <= 1e-15 * printed;
    }
    const bool within_factor_two = def >= 0.5e-3 && def <= 2e-3;
    const bool near_expected = std::abs(def - 5.2e-4) <= 0.05 * 5.2e-4;
    const bool printed_flagged = printed > 1e6 && evaluate(ac::fullerene_preset(true)).notes.find("misprint") !=
                                                       std::string::npos;
    return {within_factor_two && near_expected && printed_flagged && report_ok,
            fmt("phase(3e-19 m^2) = %.4e rad (x%.2f of 1 mrad); phase(3e-9 m^2) = %.4e rad flagged; "
                "report has both: %s",
                def, def / 1e-3, printed, report_ok ? "yes" : "no")};
}

Outcome coriolis_radius_value() {
    const double c = coriolis_radius(kFrame);
    const double rel = std::abs(c / oracle::kCoriolisRadius - 1.0);
    return {rel <= 1e-12, fmt("C = %.15e m, relative deviation %.2e from 40-digit value", c, rel)};
}

Outcome rodrigues_vs_series() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0), angle(0.0, 2.0 * std::numbers::pi), mag(0.1, 5.0);
    double worst = 0.0;
    const int pairs = 2000;
    for (int i = 0; i < pairs; ++i) {
        Vec3 axis{u(rng), u(rng), u(rng)};
        axis = axis / norm(axis) * mag(rng);
        const Vec3 r0{u(rng), u(rng), u(rng)};
        const double t = angle(rng) / norm(axis);
        worst = std::max(worst, max_abs_diff(rotor::evolve_rodrigues(axis, r0, t),
                                             rotor::evolve_series(axis, r0, t, 60)));
    }
    return {worst <= 1e-10, fmt("max componentwise difference %.3e over %d pairs, |O|t <= 2pi", worst, pairs)};
}

Outcome rotation_invariants() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double norm_dev = 0.0, axis_dev = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const Vec3 o{u(rng), u(rng), u(rng)}, r{u(rng), u(rng), u(rng)};
        const double t = 5.0 * u(rng);
        const Vec3 rt = rotor::evolve_rodrigues(o, r, t);
        norm_dev = std::max(norm_dev, std::abs(norm(rt) / norm(r) - 1.0));
        axis_dev = std::max(axis_dev, std::abs(dot(o / norm(o), rt - r)));
    }
    const double t_final = 20.0;
    std::vector<rotor::RotationGenerator::Sample> samples;
    for (int k = 0; k <= 10000; ++k) {
        const double t = t_final * k / 10000.0;
        samples.push_back({t, {2.0 * std::cos(1.5 * t), 2.0 * std::sin(1.5 * t), 0.3}});
    }
    const auto gen = rotor::RotationGenerator::sampled(std::move(samples));
    const Vec3 r0{1.0, -2.0, 0.5};
    const Vec3 rf = rotor::evolve_time_dependent(gen, r0, t_final, 10000, rotor::Method::piecewise_rodrigues);
    const double drift = std::abs(norm(rf) / norm(r0) - 1.0);
    return {norm_dev <= 1e-12 && axis_dev <= 1e-12 && drift < 1e-10,
            fmt("per-application norm %.2e, axis projection %.2e; drift after 1e4 steps %.2e", norm_dev,
                axis_dev, drift)};
}

Outcome commutator_lattice() {
    const ScalingMap map = oscillator_scaling(kFrame, 0.0);
    std::vector<double> dev, h;
    for (std::size_t n : {512, 1024, 2048, 4096}) {
        const Grid1D g = Grid1D::centered(map.center, 10.0 * map.length_unit, n);
        dev.push_back(lattice::commutator_deviation(lattice::kinetic_momentum_matrices(kFrame, g, 0.0), kFrame));
        h.push_back(g.spacing());
    }
    // Least-squares slope in log-log.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < dev.size(); ++i) {
        const double lx = std::log(h[i]), ly = std::log(dev[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(dev.size());
    const double order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return {dev[0] < 1e-3 && std::abs(order - 2.0) <= 0.2,
            fmt("deviation at N=512: %.3e; convergence order %.3f", dev[0], order)};
}

Outcome ladder_consistency() {
    const ScalingMap map = oscillator_scaling(kFrame, 0.0);
    const Grid1D g512 = Grid1D::centered(map.center, 10.0 * map.length_unit, 512);
    const lattice::LadderOperators l512 = lattice::ladder_matrices(kFrame, g512, 0.0);
    const double comm = lattice::ladder_commutator_deviation(l512);
    const double number = lattice::number_form_deviation(l512);

    const spectral::Spectrum s = spectral::solve_spectrum(kFrame, 0.0, 1, 2000, 12.0);
    const Grid1D si(map.to_x(s.eigen.grid->x_min()), map.to_x(s.eigen.grid->x_max()), 2000);
    const double annihilated = lattice::annihilation_norm(lattice::ladder_matrices(kFrame, si, 0.0),
                                                          s.eigen.vectors[0]);
    return {comm < 1e-3 && annihilated < 1e-3 && number < 1e-3,
            fmt("[a,a+] - 1: %.3e; |a v0|: %.3e; hbar w~(a+a + 1/2) vs H: %.3e", comm, annihilated, number)};
}

Outcome property_suites() {
    const auto start = Clock::now();
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double triple = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
        triple = std::max(triple, max_abs_diff(cross(a, cross(b, c)), dot(a, c) * b - dot(a, b) * c));
    }
    std::uniform_real_distribution<double> kdist(-2e9, 2e9);
    std::uniform_int_distribution<int> ndist(0, 10);
    const double c = coriolis_radius(kFrame);
    double center_dev = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const QuantumNumbers qn{ndist(rng), kdist(rng)};
        const double x0 = guiding_center(kFrame, qn.k_y);
        const double mean = oracle::trapezoid(
            [&](double x) { return x * std::norm(eigenfunction(kFrame, qn, x, 0.0)); }, x0 - 15 * c, x0 + 15 * c,
            12000);
        center_dev = std::max(center_dev, std::abs(mean - x0) / c);
    }
    const double elapsed = seconds_since(start);
    return {triple <= 1e-12 && center_dev < 1e-6,
            fmt("triple product %.2e over 1e5 triples; max |<x> - x_Omega| / C = %.2e over 50 states; %.2f s",
                triple, center_dev, elapsed)};
}

} // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 spectrum reproduction", spectrum_reproduction},
        {"2 eigenfunction reproduction", eigenfunction_reproduction},
        {"3 level spacing / energy shift", spacing_and_shift},
        {"4 A-C phase order of magnitude", ac_phase_magnitude},
        {"5 Coriolis radius", coriolis_radius_value},
        {"6 Rodrigues vs series", rodrigues_vs_series},
        {"7 rotation invariants", rotation_invariants},
        {"8 commutator lattice check", commutator_lattice},
        {"9 ladder-operator consistency", ladder_consistency},
        {"10 property suites", property_suites},
    };
    int failures = 0;
    for (const auto& [label, check] : criteria) {
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %-34s %s\n", o.pass ? "PASS" : "FAIL", label, o.detail.c_str());
        failures += o.pass ? 0 : 1;
    }
    std::printf("acceptance: %d/%zu passed in %.2f s\n", static_cast<int>(criteria.size()) - failures,
                criteria.size(), seconds_since(start));
    return failures == 0 ? 0 : 1;
}
