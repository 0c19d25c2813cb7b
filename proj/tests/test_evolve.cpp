#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghartree/evolve.hpp"
#include "ghartree/io.hpp"

using namespace ghartree;

namespace {

struct Lab {
    EquationParams params;
    Grid grid;
    Evolver evolver;
    Lab(const EquationParams& p, const Grid& g) : params(p), grid(g), evolver(p, g) {
        set_fft_threads(2);
    }
};

double max_pointwise_gap(const ComplexField& a, const ComplexField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}
} // namespace

TEST_CASE("dt = 0 steps are the identity") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 16, 6.0));
    const ComplexField u = ComplexField::gaussian(lab.grid, 0.9, 1.2);
    CHECK(max_pointwise_gap(lab.evolver.linear_step(u, 0.0), u) < 1e-14);
    CHECK(max_pointwise_gap(lab.evolver.nonlinear_step(u, 0.0), u) < 1e-14);
}

TEST_CASE("free Gaussian spreading follows the width law") {
    // i u_t + u_xx = 0 on u0 = e^{-x^2/2}: |u(t)|^2 ~ e^{-x^2/(1+4t^2)}, so the
    // variance grows by (1 + 4 t^2)
    Lab lab({1, 2.0, 0.5}, Grid(1, 256, 30.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 1.0, 1.0);
    const ObservableEngine& eng = lab.evolver.observables();
    const double v0 = eng.variance(u0);
    const double t = 1.0;
    const ComplexField ut = lab.evolver.linear_step(u0, t);
    CHECK(eng.variance(ut) / v0 == doctest::Approx(1.0 + 4.0 * t * t).epsilon(1e-6));
    // unitarity: 1000 repeated small steps leave the mass at round-off
    ComplexField w = u0;
    for (int i = 0; i < 1000; ++i)
        w = lab.evolver.linear_step(w, 1e-3);
    CHECK(std::abs(eng.mass(w) - eng.mass(u0)) / eng.mass(u0) < 1e-13);
}

TEST_CASE("nonlinear step is an exact phase rotation") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 24, 8.0));
    const ComplexField u = ComplexField::gaussian(lab.grid, 1.1, 0.9);
    const ComplexField stepped = lab.evolver.nonlinear_step(u, 0.37);
    double max_mod_gap = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i)
        max_mod_gap = std::max(max_mod_gap,
                               std::abs(std::abs(stepped.values[i]) - std::abs(u.values[i])));
    CHECK(max_mod_gap < 1e-15);
    const ObservableEngine& eng = lab.evolver.observables();
    CHECK(eng.mass(stepped) == doctest::Approx(eng.mass(u)).epsilon(1e-14));
}

TEST_CASE("zero is a fixed point of the Strang step") {
    Lab lab({2, 3.0, 1.0}, Grid(2, 16, 5.0));
    const ComplexField zero(lab.grid);
    const ComplexField stepped = lab.evolver.strang_step(zero, 0.1);
    CHECK(max_pointwise_gap(stepped, zero) == 0.0);
}

TEST_CASE("Strang splitting shows second-order energy error") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 32, 10.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 0.9, 1.0);
    const ObservableEngine& eng = lab.evolver.observables();
    const double e0 = eng.energy(u0);
    const double T = 0.2;
    std::vector<double> errs;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        ComplexField u = u0;
        const long steps = std::lround(T / dt);
        for (long i = 0; i < steps; ++i)
            u = lab.evolver.strang_step(u, dt);
        errs.push_back(std::abs(eng.energy(u) - e0));
    }
    const double slope1 = std::log2(errs[0] / errs[1]);
    const double slope2 = std::log2(errs[1] / errs[2]);
    CHECK(slope1 > 1.7);
    CHECK(slope1 < 2.3);
    CHECK(slope2 > 1.7);
    CHECK(slope2 < 2.3);
}

TEST_CASE("time reversal returns the initial data") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 32, 10.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 1.0, 1.0);
    ComplexField u = u0;
    const double dt = 2e-3;
    const int steps = 20;
    for (int i = 0; i < steps; ++i)
        u = lab.evolver.strang_step(u, dt);
    for (int i = 0; i < steps; ++i)
        u = lab.evolver.strang_step(u, -dt);
    double amp = 0.0;
    for (const Complex& v : u0.values)
        amp = std::max(amp, std::abs(v));
    CHECK(max_pointwise_gap(u, u0) / amp < 1e-10);
}

TEST_CASE("subcritical Gaussian disperses: gradient decreases by t = 2") {
    // the box must outrun the radiation for two time units
    Lab lab({3, 3.0, 1.0}, Grid(3, 48, 16.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 0.5, 1.0);
    EvolveConfig cfg;
    cfg.dt0 = 1e-2;
    cfg.t_end = 2.0;
    cfg.dt_floor = 1e-6;
    cfg.record_stride = 50;
    const TrajectoryRecord rec = lab.evolver.evolve(u0, cfg);
    CHECK(rec.status == TerminalStatus::ReachedTEnd);
    CHECK(rec.final_time == doctest::Approx(2.0));
    CHECK(rec.final_grad_norm < rec.initial_grad_norm);
    CHECK(rec.max_mass_drift < 1e-10);
    // recorded times strictly increase
    for (std::size_t i = 1; i < rec.samples.size(); ++i)
        CHECK(rec.samples[i].time > rec.samples[i - 1].time);
}

TEST_CASE("virial consistency along a simulated trajectory") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 48, 12.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 0.9, 1.0);
    EvolveConfig cfg;
    cfg.dt0 = 2e-3;
    cfg.t_end = 0.4;
    cfg.dt_floor = 1e-6;
    cfg.record_stride = 1;
    const TrajectoryRecord rec = lab.evolver.evolve(u0, cfg);
    REQUIRE(rec.status == TerminalStatus::ReachedTEnd);
    const VirialCheck check = virial_consistency(rec, lab.params);
    CHECK(check.compared > 100);
    CHECK(check.max_forms_gap < 1e-10);  // algebraic identity
    CHECK(check.max_rel_vtt_gap < 0.05); // FD truncation bound
    CHECK(check.max_rel_vt_gap < 0.01);
    // real data: V_t(0) = 0 and the first FD slope agrees at O(dt^2)
    CHECK(std::abs(rec.samples.front().variance_rate) < 1e-10);
    const double fd0 = (rec.samples[1].variance - rec.samples[0].variance) /
                       (rec.samples[1].time - rec.samples[0].time);
    const double vtt0 = 16.0 * rec.samples[0].energy -
                        (8.0 * classify(lab.params).k / lab.params.power) *
                            rec.samples[0].z_value;
    // forward difference picks up ~ (dt/2) V_tt(0)
    CHECK(fd0 == doctest::Approx(0.5 * (rec.samples[1].time - rec.samples[0].time) * vtt0)
                     .epsilon(0.05));
}

TEST_CASE("mass-critical run: V_tt stays 16 E") {
    // beta = 0.6 keeps E > 0 (dispersing, well-resolved throughout)
    Lab lab({3, 2.0, 2.0}, Grid(3, 48, 12.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 0.6, 1.0);
    EvolveConfig cfg;
    cfg.dt0 = 2e-3;
    cfg.t_end = 0.3;
    cfg.record_stride = 1;
    const TrajectoryRecord rec = lab.evolver.evolve(u0, cfg);
    REQUIRE(rec.status == TerminalStatus::ReachedTEnd);
    // k = 0: both virial forms reduce to 16E, and the FD curvature of V tracks it
    const double e = rec.samples.front().energy;
    for (std::size_t i = 1; i + 1 < rec.samples.size(); ++i) {
        const double h = rec.samples[i].time - rec.samples[i - 1].time;
        const double fd_vtt = (rec.samples[i + 1].variance - 2.0 * rec.samples[i].variance +
                               rec.samples[i - 1].variance) /
                              (h * h);
        CHECK(fd_vtt / (16.0 * e) == doctest::Approx(1.0).epsilon(2e-2));
    }
}

TEST_CASE("boosted data: momentum drift stays within 1e-8 per unit time") {
    Lab lab({3, 3.0, 1.0}, Grid(3, 64, 12.0));
    const double v0 = 2.0 * 3.14159265358979323846 / lab.grid.half_extent; // on-grid boost
    const ComplexField u0 = ComplexField::sample(lab.grid, [&](const std::array<double, 4>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return 0.8 * std::exp(-0.5 * r2) * std::polar(1.0, v0 * x[0]);
    });
    EvolveConfig cfg;
    cfg.dt0 = 1e-3;
    cfg.t_end = 0.25;
    cfg.record_stride = 250;
    const TrajectoryRecord rec = lab.evolver.evolve(u0, cfg);
    REQUIRE(rec.status == TerminalStatus::ReachedTEnd);
    const double p0 = rec.samples.front().momentum[0];
    const double p1 = rec.samples.back().momentum[0];
    CHECK(std::abs(p1 - p0) / std::abs(p0) / rec.final_time < 1e-8);
}

TEST_CASE("boundary abort fires for data leaking into the wall") {
    Lab lab({2, 3.0, 1.0}, Grid(2, 32, 4.0));
    const ComplexField u0 = ComplexField::gaussian(lab.grid, 0.6, 0.4);
    EvolveConfig cfg;
    cfg.dt0 = 5e-3;
    cfg.t_end = 3.0;
    cfg.record_stride = 20;
    const TrajectoryRecord rec = lab.evolver.evolve(u0, cfg);
    CHECK(rec.status == TerminalStatus::AbortedBoundary);
    CHECK(rec.final_time < 3.0);
}

TEST_CASE("config validation and insufficient samples") {
    EvolveConfig bad;
    bad.dt_floor = 2e-3;
    bad.dt0 = 1e-3;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    bad = EvolveConfig{};
    bad.phase_cap = 4.0;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);
    bad = EvolveConfig{};
    bad.record_stride = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParams);

    TrajectoryRecord record;
    record.samples.resize(2);
    CHECK_THROWS_AS(virial_consistency(record, EquationParams{3, 3.0, 1.0}), DomainError);
}
