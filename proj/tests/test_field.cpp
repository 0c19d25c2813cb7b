#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghartree/field.hpp"
#include "support/oracles.hpp"

using namespace ghartree;

namespace {
constexpr double kPi = 3.14159265358979323846;

double l2_norm(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& c : v)
        s += std::norm(c);
    return std::sqrt(s);
}
} // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid(3, 6, 1.0), InvalidParams);   // below minimum
    CHECK_THROWS_AS(Grid(3, 14, 1.0), InvalidParams);  // 7-smooth factor
    CHECK_THROWS_AS(Grid(3, 0, 1.0), InvalidParams);
    CHECK_THROWS_AS(Grid(5, 16, 1.0), InvalidParams);
    CHECK_THROWS_AS(Grid(3, 16, 0.0), InvalidParams);
    CHECK_THROWS_AS(Grid(4, 1024, 1.0), InvalidParams); // n^N guard
    const Grid g(3, 48, 6.0);
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.size() == 48u * 48u * 48u);
}

TEST_CASE("zero field transforms to zero") {
    const Grid g(2, 16, 4.0);
    const Spectral spec(g);
    const ComplexField zero(g);
    const auto fhat = spec.forward(zero);
    CHECK(l2_norm(fhat) == 0.0);
}

TEST_CASE("transform round trip and Parseval on random band-limited data") {
    const Grid g(3, 32, 8.0);
    const Spectral spec(g);
    const ComplexField u = oracles::random_band_limited(g, 42u);
    const auto fhat = spec.forward(u);
    const ComplexField back = spec.inverse(fhat);
    CHECK(oracles::max_abs_diff(u.values, back.values) / l2_norm(u.values) < 1e-12);

    // discrete Parseval: sum |f|^2 h^N = sum |fhat|^2 (pi/L)^N
    double f_sq = 0.0, fhat_sq = 0.0;
    for (const Complex& c : u.values)
        f_sq += std::norm(c);
    for (const Complex& c : fhat)
        fhat_sq += std::norm(c);
    f_sq *= g.cell_volume();
    fhat_sq *= std::pow(kPi / g.half_extent, g.dim);
    CHECK(f_sq == doctest::Approx(fhat_sq).epsilon(1e-12));
}

TEST_CASE("Gaussian is its own transform under the symmetric convention") {
    const Grid g(1, 256, 20.0);
    const Spectral spec(g);
    const ComplexField u = ComplexField::gaussian(g, 1.0, 1.0); // exp(-x^2/2)
    const auto fhat = spec.forward(u);
    for (int k = 0; k < g.n; ++k) {
        const double xi = g.frequency(k);
        if (std::abs(xi) > 8.0)
            continue;
        const double expected = std::exp(-0.5 * xi * xi);
        CHECK(std::abs(fhat[static_cast<std::size_t>(k)] - Complex(expected, 0.0)) < 1e-8);
    }
}

TEST_CASE("poisoned fields raise") {
    const Grid g(1, 16, 2.0);
    ComplexField u(g);
    u.values[3] = Complex(std::nan(""), 0.0);
    const Spectral spec(g);
    CHECK_THROWS_AS(spec.forward(u), PoisonedField);
    CHECK_THROWS_AS(spec.gradient(u), PoisonedField);
}

TEST_CASE("constant field has zero gradient") {
    const Grid g(2, 16, 3.0);
    const Spectral spec(g);
    ComplexField u(g);
    for (Complex& v : u.values)
        v = Complex(2.5, -1.0);
    const auto grad = spec.gradient(u);
    for (const ComplexField& comp : grad)
        for (const Complex& v : comp.values)
            CHECK(std::abs(v) < 1e-12);
    CHECK(spec.gradient_norm_sq(u) < 1e-12);
}

TEST_CASE("on-grid plane wave is a gradient eigenfunction") {
    const Grid g(2, 32, 5.0);
    const Spectral spec(g);
    const double k0 = 3.0 * kPi / g.half_extent; // mode 3, on-grid
    const ComplexField u = ComplexField::sample(g, [&](const std::array<double, 4>& x) {
        return std::exp(Complex(0.0, k0 * x[0]));
    });
    const auto grad = spec.gradient(u);
    double max_err = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        max_err = std::max(max_err, std::abs(grad[0].values[i] - Complex(0.0, k0) * u.values[i]));
        max_err = std::max(max_err, std::abs(grad[1].values[i]));
    }
    CHECK(max_err < 1e-12);
}

TEST_CASE("spectral gradient agrees with centered differences at order 2") {
    // Smooth non-band-limited field; FD error should shrink ~4x per refinement.
    const double L = 8.0;
    double prev_err = 0.0;
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
        const Grid g(2, n, L);
        const Spectral spec(g);
        const ComplexField u = ComplexField::sample(g, [&](const std::array<double, 4>& x) {
            return std::exp(-0.35 * (x[0] * x[0] + x[1] * x[1])) *
                   Complex(std::cos(0.7 * x[0]), std::sin(0.4 * x[1]));
        });
        const auto spectral_grad = spec.gradient(u);
        const auto fd_grad = oracles::fd_gradient(u);
        double err = 0.0;
        for (int d = 0; d < g.dim; ++d)
            for (std::size_t i = 0; i < u.values.size(); ++i)
                err = std::max(err, std::abs(spectral_grad[static_cast<std::size_t>(d)].values[i] -
                                             fd_grad[static_cast<std::size_t>(d)].values[i]));
        errs.push_back(err);
        prev_err = err;
    }
    (void)prev_err;
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    CHECK(order1 > 1.7);
    CHECK(order1 < 2.3);
    CHECK(order2 > 1.7);
    CHECK(order2 < 2.3);
}

TEST_CASE("boundary mass diagnostic") {
    const Grid g(2, 32, 16.0);
    const ComplexField narrow = ComplexField::gaussian(g, 1.0, 2.0);
    CHECK(boundary_mass_fraction(narrow) < 1e-12);
    const ComplexField wide = ComplexField::gaussian(g, 1.0, 0.005);
    CHECK(boundary_mass_fraction(wide) > 1e-3);
}

TEST_CASE("pairwise sum is deterministic and accurate") {
    std::vector<double> data(100001);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = std::sin(0.001 * static_cast<double>(i)) * 1e-3;
    const double a = pairwise_sum(data.data(), data.size());
    const double b = pairwise_sum(data.data(), data.size());
    CHECK(a == b);
    long double exact = 0.0;
    for (double v : data)
        exact += static_cast<long double>(v);
    CHECK(a == doctest::Approx(static_cast<double>(exact)).epsilon(1e-13));
}
