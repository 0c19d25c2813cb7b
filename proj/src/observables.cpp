#include "ghartree/observables.hpp"

#include <cmath>

namespace ghartree {

ObservableEngine::ObservableEngine(const EquationParams& params,
                                   std::shared_ptr<const RieszKernel> kernel)
    : params_(params), kernel_(std::move(kernel)), spectral_(kernel_->grid()) {
    params_.validate();
    if (kernel_->exponent() != params_.potential_exponent)
        throw GridMismatch("observable engine: kernel exponent differs from params.b");
    k_ = classify(params_).k;
}

double weighted_l2_dot(const RealField& a, const RealField& b) {
    if (!(a.grid == b.grid))
        throw GridMismatch("weighted_l2_dot: grid mismatch");
    std::vector<double> terms(a.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = a.values[i] * b.values[i];
    return a.grid.cell_volume() * pairwise_sum(terms.data(), terms.size());
}

double ObservableEngine::mass(const ComplexField& u) const {
    u.require_finite();
    std::vector<double> terms(u.values.size());
    for (std::size_t i = 0; i < terms.size(); ++i)
        terms[i] = std::norm(u.values[i]);
    return u.grid.cell_volume() * pairwise_sum(terms.data(), terms.size());
}

double ObservableEngine::z_functional(const ComplexField& u) const {
    const RealField density = abs_power(u, params_.power);
    const RealField potential = kernel_->convolve(density);
    return weighted_l2_dot(potential, density);
}

double ObservableEngine::energy(const ComplexField& u) const {
    return 0.5 * grad_norm_sq(u) - z_functional(u) / (2.0 * params_.power);
}

double ObservableEngine::grad_norm_sq(const ComplexField& u) const {
    return spectral_.gradient_norm_sq(u);
}

std::array<double, 4> ObservableEngine::momentum(const ComplexField& u) const {
    u.require_finite();
    // P_d = Im Integral conj(u) d_d u = (h^N / n^N) sum xi_d |FFT u|^2
    std::vector<Complex> spec = u.values;
    spectral_.dft(spec, -1);
    const Grid& g = u.grid;
    std::array<double, 4> p{0.0, 0.0, 0.0, 0.0};
    std::array<int, 4> idx{};
    std::vector<std::vector<double>> terms(
        static_cast<std::size_t>(g.dim), std::vector<double>(spec.size()));
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        g.decode(flat, idx);
        const double w = std::norm(spec[flat]);
        for (int d = 0; d < g.dim; ++d) {
            const int k = idx[static_cast<std::size_t>(d)];
            const double xi = (k == g.n / 2) ? 0.0 : g.frequency(k);
            terms[static_cast<std::size_t>(d)][flat] = xi * w;
        }
    }
    const double scale = g.cell_volume() / static_cast<double>(g.size());
    for (int d = 0; d < g.dim; ++d)
        p[static_cast<std::size_t>(d)] =
            scale * pairwise_sum(terms[static_cast<std::size_t>(d)].data(), spec.size());
    return p;
}

double ObservableEngine::variance(const ComplexField& u) const {
    u.require_finite();
    const Grid& g = u.grid;
    std::array<int, 4> idx{};
    std::vector<double> terms(u.values.size());
    for (std::size_t flat = 0; flat < terms.size(); ++flat) {
        g.decode(flat, idx);
        double r2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double x = g.coordinate(idx[static_cast<std::size_t>(d)]);
            r2 += x * x;
        }
        terms[flat] = r2 * std::norm(u.values[flat]);
    }
    return g.cell_volume() * pairwise_sum(terms.data(), terms.size());
}

double ObservableEngine::variance_rate(const ComplexField& u) const {
    u.require_finite();
    const Grid& g = u.grid;
    const std::vector<ComplexField> grad = spectral_.gradient(u);
    std::array<int, 4> idx{};
    std::vector<double> terms(u.values.size(), 0.0);
    for (std::size_t flat = 0; flat < terms.size(); ++flat) {
        g.decode(flat, idx);
        double acc = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double x = g.coordinate(idx[static_cast<std::size_t>(d)]);
            acc += x * std::imag(std::conj(u.values[flat]) *
                                 grad[static_cast<std::size_t>(d)].values[flat]);
        }
        terms[flat] = acc;
    }
    return 4.0 * g.cell_volume() * pairwise_sum(terms.data(), terms.size());
}

std::pair<double, double> ObservableEngine::virial_acceleration(const ComplexField& u) const {
    const double grad_sq = grad_norm_sq(u);
    const double z = z_functional(u);
    const double e = 0.5 * grad_sq - z / (2.0 * params_.power);
    const double first = 16.0 * e - (8.0 * k_ / params_.power) * z;
    const double second = 16.0 * (k_ + 1.0) * e - 8.0 * k_ * grad_sq;
    return {first, second};
}

ObservableSet ObservableEngine::observe(const ComplexField& u, double time) const {
    ObservableSet set;
    set.time = time;
    set.dim = u.grid.dim;
    set.mass = mass(u);
    set.grad_norm_sq = grad_norm_sq(u);
    set.z_value = z_functional(u);
    set.energy = 0.5 * set.grad_norm_sq - set.z_value / (2.0 * params_.power);
    set.momentum = momentum(u);
    set.variance = variance(u);
    set.variance_rate = variance_rate(u);
    return set;
}

} // namespace ghartree
