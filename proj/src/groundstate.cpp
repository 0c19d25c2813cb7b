#include "ghartree/groundstate.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ghartree/observables.hpp"
#include "ghartree/radial.hpp"

namespace ghartree {

namespace {

constexpr double kPi = 3.14159265358979323846;

// h^N/n^N sum w(|xi|^2) |FFT u|^2 over the full spectrum (solver-internal
// inner products use the same multiplier grid as (1-Lap)^{-1}).
double spectral_quadratic(const Grid& g, const std::vector<Complex>& spec,
                          const std::function<double(double)>& w) {
    std::array<int, 4> idx{};
    std::vector<double> terms(spec.size());
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        g.decode(flat, idx);
        double xi_sq = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double x = g.frequency(idx[static_cast<std::size_t>(d)]);
            xi_sq += x * x;
        }
        terms[flat] = w(xi_sq) * std::norm(spec[flat]);
    }
    return g.cell_volume() / static_cast<double>(g.size()) *
           pairwise_sum(terms.data(), terms.size());
}

} // namespace

GroundStateResult petviashvili_solve(const EquationParams& params, const Grid& grid,
                                     const PetviashviliOptions& options) {
    return petviashvili_solve(params, std::make_shared<const RieszKernel>(
                                          grid, params.potential_exponent),
                              options);
}

GroundStateResult petviashvili_solve(const EquationParams& params,
                                     std::shared_ptr<const RieszKernel> kernel,
                                     const PetviashviliOptions& options) {
    params.validate();
    const CriticalityReport crit = classify(params);
    if (!(crit.s_c < 1.0 - kCriticalityTol))
        throw WrongRegime("Petviashvili runs below the energy-critical index (s_c < 1)");
    const Grid& grid = kernel->grid();
    const Spectral spectral(grid);
    const double p = params.power;
    const double sigma = (2.0 * p - 1.0) / (2.0 * p - 2.0);
    const std::size_t total = grid.size();

    ComplexField q = ComplexField::gaussian(grid, 1.0, options.seed_gamma);

    GroundStateResult result;
    result.params = params;

    double stabilizer = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
        // N(q) = (|x|^{-b} * q^p) q^{p-1} for the positive iterate
        RealField qp = abs_power(q, p);
        const RealField v = kernel->convolve(qp);
        std::vector<double> nq(total);
        for (std::size_t i = 0; i < total; ++i)
            nq[i] = v.values[i] * std::pow(std::abs(q.values[i].real()), p - 2.0) *
                    q.values[i].real();

        std::vector<Complex> qhat = q.values;
        spectral.dft(qhat, -1);
        const double num = spectral_quadratic(grid, qhat, [](double s) { return 1.0 + s; });
        std::vector<double> dot(total);
        for (std::size_t i = 0; i < total; ++i)
            dot[i] = q.values[i].real() * nq[i];
        const double den = grid.cell_volume() * pairwise_sum(dot.data(), dot.size());
        stabilizer = num / den;
        if (!(stabilizer > 1e-6) || !(stabilizer < 1e6))
            throw Divergence("Petviashvili stabilizing factor left [1e-6, 1e6]");

        // residual of the current iterate: (1-Lap)q - N(q)
        {
            std::vector<Complex> lin = qhat;
            std::array<int, 4> idx{};
            for (std::size_t flat = 0; flat < total; ++flat) {
                grid.decode(flat, idx);
                double xi_sq = 0.0;
                for (int d = 0; d < grid.dim; ++d) {
                    const double x = grid.frequency(idx[static_cast<std::size_t>(d)]);
                    xi_sq += x * x;
                }
                lin[flat] *= (1.0 + xi_sq) / static_cast<double>(total);
            }
            spectral.dft(lin, +1);
            std::vector<double> res_sq(total);
            for (std::size_t i = 0; i < total; ++i) {
                const double r = lin[i].real() - nq[i];
                res_sq[i] = r * r;
            }
            residual = std::sqrt(grid.cell_volume() * pairwise_sum(res_sq.data(), res_sq.size()));
            if (residual <= options.tol)
                break;
        }

        // q <- S^sigma (1-Lap)^{-1} N(q)
        std::vector<Complex> next(total);
        for (std::size_t i = 0; i < total; ++i)
            next[i] = Complex(nq[i], 0.0);
        spectral.dft(next, -1);
        {
            std::array<int, 4> idx{};
            for (std::size_t flat = 0; flat < total; ++flat) {
                grid.decode(flat, idx);
                double xi_sq = 0.0;
                for (int d = 0; d < grid.dim; ++d) {
                    const double x = grid.frequency(idx[static_cast<std::size_t>(d)]);
                    xi_sq += x * x;
                }
                next[flat] /= (1.0 + xi_sq) * static_cast<double>(total);
            }
        }
        spectral.dft(next, +1);
        const double gain = std::pow(stabilizer, sigma);
        for (std::size_t i = 0; i < total; ++i)
            q.values[i] = Complex(gain * next[i].real(), 0.0);
    }

    if (residual > options.tol)
        throw NoConvergence("Petviashvili did not reach the residual tolerance");

    result.profile = q;
    result.residual = residual;
    result.iterations = iter;
    result.converged = true;
    result.stabilizer_gap = std::abs(stabilizer - 1.0);

    const ObservableEngine engine(params, kernel);
    result.mass = engine.mass(q);
    result.grad_sq = engine.grad_norm_sq(q);
    result.z = engine.z_functional(q);
    result.c_gn = std::pow(result.mass, -(p - 1.0));
    return result;
}

double sharp_gn_constant(const GroundStateResult& result) {
    if (!result.converged)
        throw NoConvergence("sharp_gn_constant needs a converged ground state");
    return std::pow(result.mass, -(result.params.power - 1.0));
}

double gn_quotient(const GroundStateResult& result) {
    if (!result.converged)
        throw NoConvergence("gn_quotient needs a converged ground state");
    const CriticalityReport crit = classify(result.params);
    const double p = result.params.power;
    return result.z / (std::pow(result.grad_sq, crit.k + 1.0) *
                       std::pow(result.mass, (1.0 - crit.s_c) * (p - 1.0)));
}

SharpConstants critical_constants(int dimension, double b) {
    if (dimension < 3)
        throw InvalidParams("energy-critical constants need N >= 3");
    if (!(b > 0.0) || !(b < dimension))
        throw InvalidParams("critical constants need 0 < b < N");
    const double N = dimension;
    SharpConstants sc;
    const double gamma_ratio = std::tgamma(N) / std::tgamma(0.5 * N);
    sc.c_sobolev = std::pow(N * (N - 2.0) * kPi, -0.5) * std::pow(gamma_ratio, 1.0 / N);
    sc.c_hls = std::pow(kPi, 0.5 * b) * std::tgamma(0.5 * (N - b)) /
               std::tgamma(N - 0.5 * b) * std::pow(gamma_ratio, 1.0 - b / N);
    sc.c_gn = std::pow(kPi, 0.5 * b) *
              std::pow(std::pow(gamma_ratio, (N - b + 2.0) / (2.0 * N - b)) /
                           (N * (N - 2.0) * kPi),
                       (2.0 * N - b) / (N - 2.0)) *
              std::tgamma(0.5 * (N - b)) / std::tgamma(N - 0.5 * b);
    sc.grad_Q_sq_critical = std::pow(sc.c_gn, -(N - 2.0) / 4.0);
    sc.energy_Q_critical = 2.0 / (N + 2.0) * sc.grad_Q_sq_critical;
    return sc;
}

double CriticalProfile::operator()(double r) const {
    return amplitude * std::pow(1.0 + r * r, -0.5 * (dimension - 2.0));
}

double CriticalProfile::radial_derivative(double r) const {
    const double n2 = dimension - 2.0;
    return -amplitude * n2 * r * std::pow(1.0 + r * r, -0.5 * dimension);
}

double CriticalProfile::laplacian(double r) const {
    const double N = dimension;
    return -N * (N - 2.0) * amplitude * std::pow(1.0 + r * r, -0.5 * (N + 2.0));
}

CriticalProfile explicit_critical_Q(int dimension) {
    if (dimension < 3)
        throw InvalidParams("explicit critical profile needs N >= 3");
    CriticalProfile q;
    q.dimension = dimension;
    const double N = dimension;
    q.b = N - 2.0;
    q.power = (2.0 * N - q.b) / (N - 2.0); // = (N+2)/(N-2)
    q.amplitude = std::pow(N * (N - 2.0) * std::tgamma(1.0 + 0.5 * N) / std::pow(kPi, 0.5 * N),
                           (N - 2.0) / 8.0);
    return q;
}

CriticalProfileCheck verify_critical_profile(const CriticalProfile& q, double residual_r_max,
                                             double quad_r_max) {
    const int N = q.dimension;
    const double b = q.b;
    const double p = q.power;
    const double area = radial::sphere_area(N);

    const radial::RadialFn qp = [&](double s) { return std::pow(q(s), p); };
    // analytic power tail of the source beyond the quadrature radius
    const double tail_exp = (N - 1.0) - b - p * (N - 2.0);
    const double tail_coef = area * std::pow(q.amplitude, p);
    const std::function<double(double)> tail = [=](double) {
        return -tail_coef * std::pow(quad_r_max, tail_exp + 1.0) / (tail_exp + 1.0);
    };

    const auto potential = [&](double r) {
        return radial::riesz_convolve_radial(N, b, qp, r, quad_r_max, &tail, 1e-11);
    };

    CriticalProfileCheck check;
    const radial::RadialFn res_sq = [&](double r) {
        const double res = q.laplacian(r) + potential(r) * std::pow(q(r), p - 1.0);
        return res * res;
    };
    check.residual = std::sqrt(area * radial::integrate_panels(
                                          [&](double r) {
                                              return res_sq(r) * std::pow(r, N - 1.0);
                                          },
                                          0.0, residual_r_max, 1e-14));

    const double grad_r_max = 1.0e5;
    const double grad_quad = area * radial::integrate_panels(
                                        [&](double r) {
                                            const double d = q.radial_derivative(r);
                                            return d * d * std::pow(r, N - 1.0);
                                        },
                                        0.0, grad_r_max, 1e-12);
    // |Q'|^2 r^{N-1} ~ amp^2 (N-2)^2 r^{1-N} beyond the quadrature radius
    const double grad_tail = area * q.amplitude * q.amplitude * (N - 2.0) * (N - 2.0) *
                             std::pow(grad_r_max, 2.0 - N) / (N - 2.0);
    check.grad_sq = grad_quad + grad_tail;

    check.z = area * radial::integrate_panels(
                         [&](double r) {
                             return potential(r) * qp(r) * std::pow(r, N - 1.0);
                         },
                         0.0, 200.0, 1e-10);
    return check;
}

} // namespace ghartree
