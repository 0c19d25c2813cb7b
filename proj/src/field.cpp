#include "ghartree/field.hpp"

#include <fftw3.h>

#include <atomic>
#include <cmath>
#include <mutex>

#include "fft_internal.hpp"

namespace ghartree {

namespace fft {

namespace {
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}
std::atomic<int> g_threads{1};
std::once_flag g_threads_init;
} // namespace

void set_threads(int n) {
    std::call_once(g_threads_init, [] { fftw_init_threads(); });
    g_threads.store(n > 0 ? n : 1);
}

int threads() noexcept { return g_threads.load(); }

namespace {
void apply_thread_count() {
    if (g_threads.load() > 1)
        fftw_plan_with_nthreads(g_threads.load());
    else
        fftw_plan_with_nthreads(1);
}
} // namespace

void dft_nd(int rank, const int* dims, std::complex<double>* data, int sign) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        apply_thread_count();
        plan = fftw_plan_dft(rank, dims, reinterpret_cast<fftw_complex*>(data),
                             reinterpret_cast<fftw_complex*>(data), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

void r2c_nd(int rank, const int* dims, double* in, std::complex<double>* out) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        apply_thread_count();
        plan = fftw_plan_dft_r2c(rank, dims, in, reinterpret_cast<fftw_complex*>(out),
                                 FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

void c2r_nd(int rank, const int* dims, std::complex<double>* in, double* out) {
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        apply_thread_count();
        plan = fftw_plan_dft_c2r(rank, dims, reinterpret_cast<fftw_complex*>(in), out,
                                 FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
}

} // namespace fft

void set_fft_threads(int n) { fft::set_threads(n); }
int fft_threads() noexcept { return fft::threads(); }

bool ComplexField::finite() const noexcept {
    for (const Complex& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

void ComplexField::require_finite() const {
    if (!finite())
        throw PoisonedField("field contains NaN/Inf samples");
}

ComplexField ComplexField::sample(const Grid& g,
                                  const std::function<Complex(const std::array<double, 4>&)>& fn) {
    ComplexField f(g);
    std::array<int, 4> idx{};
    std::array<double, 4> x{};
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.decode(flat, idx);
        for (int d = 0; d < g.dim; ++d)
            x[static_cast<std::size_t>(d)] = g.coordinate(idx[static_cast<std::size_t>(d)]);
        f.values[flat] = fn(x);
    }
    return f;
}

ComplexField ComplexField::gaussian(const Grid& g, double beta, double gamma) {
    if (!(beta > 0.0) || !(gamma > 0.0))
        throw InvalidParams("gaussian data needs beta, gamma > 0");
    ComplexField f(g);
    // Separable: beta exp(-gamma |x|^2/2) = beta prod_d exp(-gamma x_d^2/2)
    std::vector<double> axis(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i)
        axis[static_cast<std::size_t>(i)] = std::exp(-0.5 * gamma * g.coordinate(i) * g.coordinate(i));
    std::array<int, 4> idx{};
    const std::size_t total = g.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.decode(flat, idx);
        double v = beta;
        for (int d = 0; d < g.dim; ++d)
            v *= axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        f.values[flat] = v;
    }
    return f;
}

bool RealField::finite() const noexcept {
    for (double v : values)
        if (!std::isfinite(v))
            return false;
    return true;
}

void RealField::require_finite() const {
    if (!finite())
        throw PoisonedField("field contains NaN/Inf samples");
}

RealField abs_power(const ComplexField& u, double p) {
    u.require_finite();
    RealField g(u.grid);
    const std::size_t total = u.values.size();
    for (std::size_t i = 0; i < total; ++i)
        g.values[i] = std::pow(std::norm(u.values[i]), 0.5 * p);
    return g;
}

namespace {

template <typename Density>
double boundary_fraction_impl(const Grid& g, const Density& density, std::size_t total) {
    std::array<int, 4> idx{};
    double edge = 0.0, all = 0.0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        g.decode(flat, idx);
        bool on_edge = false;
        for (int d = 0; d < g.dim; ++d) {
            const int i = idx[static_cast<std::size_t>(d)];
            if (i == 0 || i == g.n - 1) {
                on_edge = true;
                break;
            }
        }
        const double w = density(flat);
        all += w;
        if (on_edge)
            edge += w;
    }
    return all > 0.0 ? edge / all : 0.0;
}

} // namespace

double boundary_mass_fraction(const ComplexField& u) {
    return boundary_fraction_impl(u.grid, [&](std::size_t i) { return std::norm(u.values[i]); },
                                  u.values.size());
}

double boundary_mass_fraction(const RealField& f) {
    return boundary_fraction_impl(f.grid, [&](std::size_t i) { return std::abs(f.values[i]); },
                                  f.values.size());
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 32) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

Spectral::Spectral(const Grid& g) : grid_(g) {}

void Spectral::dft(std::vector<Complex>& data, int sign) const {
    if (data.size() != grid_.size())
        throw GridMismatch("dft: data length does not match grid");
    int dims[4] = {grid_.n, grid_.n, grid_.n, grid_.n};
    fft::dft_nd(grid_.dim, dims, data.data(), sign);
}

std::vector<Complex> Spectral::forward(const ComplexField& f) const {
    if (!(f.grid == grid_))
        throw GridMismatch("forward: field grid does not match engine grid");
    f.require_finite();
    std::vector<Complex> out = f.values;
    dft(out, -1);
    // (2pi)^{-N/2} h^N (-1)^{k1+...+kN}; the sign flips encode x_j = -L + j h.
    const double scale =
        std::pow(2.0 * 3.14159265358979323846, -0.5 * grid_.dim) * grid_.cell_volume();
    std::array<int, 4> idx{};
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        grid_.decode(flat, idx);
        int parity = 0;
        for (int d = 0; d < grid_.dim; ++d)
            parity += idx[static_cast<std::size_t>(d)];
        out[flat] *= (parity % 2 == 0) ? scale : -scale;
    }
    return out;
}

ComplexField Spectral::inverse(const std::vector<Complex>& fhat) const {
    if (fhat.size() != grid_.size())
        throw GridMismatch("inverse: spectrum length does not match grid");
    ComplexField f(grid_);
    f.values = fhat;
    const double pi = 3.14159265358979323846;
    const double dxi = pi / grid_.half_extent;
    // (2pi)^{-N/2} dxi^N spectral weight of the symmetric convention
    double scale = 1.0;
    for (int d = 0; d < grid_.dim; ++d)
        scale *= dxi / std::sqrt(2.0 * pi);
    std::array<int, 4> idx{};
    for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
        grid_.decode(flat, idx);
        int parity = 0;
        for (int d = 0; d < grid_.dim; ++d)
            parity += idx[static_cast<std::size_t>(d)];
        f.values[flat] *= (parity % 2 == 0) ? scale : -scale;
    }
    dft(f.values, +1);
    return f;
}

ComplexField Spectral::apply_multiplier(
    const ComplexField& u, const std::function<Complex(const std::array<double, 4>&)>& m) const {
    if (!(u.grid == grid_))
        throw GridMismatch("apply_multiplier: field grid mismatch");
    u.require_finite();
    ComplexField out = u;
    dft(out.values, -1);
    std::array<int, 4> idx{};
    std::array<double, 4> xi{};
    const double norm = 1.0 / static_cast<double>(grid_.size());
    for (std::size_t flat = 0; flat < out.values.size(); ++flat) {
        grid_.decode(flat, idx);
        for (int d = 0; d < grid_.dim; ++d)
            xi[static_cast<std::size_t>(d)] = grid_.frequency(idx[static_cast<std::size_t>(d)]);
        out.values[flat] *= m(xi) * norm;
    }
    dft(out.values, +1);
    return out;
}

namespace {

// Per-axis frequency table with the Nyquist mode zeroed; odd-order spectral
// derivatives of real data stay real this way.
std::vector<double> derivative_frequencies(const Grid& g) {
    std::vector<double> xi(static_cast<std::size_t>(g.n));
    for (int k = 0; k < g.n; ++k)
        xi[static_cast<std::size_t>(k)] = (k == g.n / 2) ? 0.0 : g.frequency(k);
    return xi;
}

} // namespace

std::vector<ComplexField> Spectral::gradient(const ComplexField& u) const {
    if (!(u.grid == grid_))
        throw GridMismatch("gradient: field grid mismatch");
    u.require_finite();
    std::vector<Complex> spec = u.values;
    dft(spec, -1);
    const std::vector<double> xi = derivative_frequencies(grid_);
    const double norm = 1.0 / static_cast<double>(grid_.size());
    std::vector<ComplexField> grad;
    grad.reserve(static_cast<std::size_t>(grid_.dim));
    std::array<int, 4> idx{};
    for (int d = 0; d < grid_.dim; ++d) {
        ComplexField comp(grid_);
        for (std::size_t flat = 0; flat < spec.size(); ++flat) {
            grid_.decode(flat, idx);
            const double x = xi[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
            comp.values[flat] = spec[flat] * Complex(0.0, x) * norm;
        }
        dft(comp.values, +1);
        grad.push_back(std::move(comp));
    }
    return grad;
}

double Spectral::gradient_norm_sq(const ComplexField& u) const {
    if (!(u.grid == grid_))
        throw GridMismatch("gradient_norm_sq: field grid mismatch");
    u.require_finite();
    std::vector<Complex> spec = u.values;
    dft(spec, -1);
    // Integral |grad u|^2 = (h^N / n^N) sum |xi_k|^2 |FFT_k|^2. The Nyquist
    // shell is kept (at its wrapped magnitude): the free propagator advances
    // it, so dropping it here would leak energy out of the reported total.
    std::vector<double> xi(static_cast<std::size_t>(grid_.n));
    for (int k = 0; k < grid_.n; ++k)
        xi[static_cast<std::size_t>(k)] = grid_.frequency(k);
    std::vector<double> terms(spec.size());
    std::array<int, 4> idx{};
    for (std::size_t flat = 0; flat < spec.size(); ++flat) {
        grid_.decode(flat, idx);
        double xi_sq = 0.0;
        for (int d = 0; d < grid_.dim; ++d) {
            const double x = xi[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
            xi_sq += x * x;
        }
        terms[flat] = xi_sq * std::norm(spec[flat]);
    }
    const double scale = grid_.cell_volume() / static_cast<double>(grid_.size());
    return scale * pairwise_sum(terms.data(), terms.size());
}

void Spectral::free_propagate(ComplexField& u, double dt) const {
    if (!(u.grid == grid_))
        throw GridMismatch("free_propagate: field grid mismatch");
    u.require_finite();
    dft(u.values, -1);
    // Separable phase: exp(-i |xi|^2 dt) = prod_d exp(-i xi_d^2 dt)
    std::vector<Complex> phase(static_cast<std::size_t>(grid_.n));
    for (int k = 0; k < grid_.n; ++k) {
        const double x = grid_.frequency(k);
        phase[static_cast<std::size_t>(k)] = std::polar(1.0, -x * x * dt);
    }
    const double norm = 1.0 / static_cast<double>(grid_.size());
    std::array<int, 4> idx{};
    for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
        grid_.decode(flat, idx);
        Complex m(norm, 0.0);
        for (int d = 0; d < grid_.dim; ++d)
            m *= phase[static_cast<std::size_t>(idx[static_cast<std::size_t>(d)])];
        u.values[flat] *= m;
    }
    dft(u.values, +1);
}

} // namespace ghartree
