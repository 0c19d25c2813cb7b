#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "ghartree/grid.hpp"

namespace ghartree {

using Complex = std::complex<double>;

/// Complex-valued function sampled on a Grid, row-major. Value semantics;
/// safe to move between threads.
struct ComplexField {
    Grid grid;
    std::vector<Complex> values;

    ComplexField() = default;
    explicit ComplexField(const Grid& g) : grid(g), values(g.size()) {}

    bool finite() const noexcept;
    void require_finite() const; // throws PoisonedField

    /// Builds a field by evaluating fn at every grid point.
    static ComplexField sample(const Grid& g,
                               const std::function<Complex(const std::array<double, 4>&)>& fn);

    /// beta exp(-gamma |x|^2 / 2), the paper's Gaussian family.
    static ComplexField gaussian(const Grid& g, double beta, double gamma);
};

/// Real scalar field on a Grid (potentials, |u|^p, ...).
struct RealField {
    Grid grid;
    std::vector<double> values;

    RealField() = default;
    explicit RealField(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    bool finite() const noexcept;
    void require_finite() const;
};

RealField abs_power(const ComplexField& u, double p); // |u|^p pointwise

/// Fraction of |f|^2 mass in the outermost cell layer; diagnostic for
/// box-truncation trouble.
double boundary_mass_fraction(const ComplexField& u);
double boundary_mass_fraction(const RealField& g); // uses |g| as density

/// Deterministic pairwise reduction; used for every quadrature sum so runs
/// are reproducible bit-for-bit.
double pairwise_sum(const double* data, std::size_t n);

/// Per-grid spectral transform engine (FFTW behind it). The public forward /
/// inverse pair follows the symmetric continuum convention
///   fhat(xi) = (2pi)^{-N/2} Integral e^{-i xi x} f(x) dx,
/// discretized with h^N weights, so discrete Parseval holds exactly with
/// spectral weight (pi/L)^N.
class Spectral {
public:
    explicit Spectral(const Grid& g);

    const Grid& grid() const noexcept { return grid_; }

    /// Continuum-normalized transform; entry k (FFT layout) approximates
    /// fhat at frequency grid.frequency(k).
    std::vector<Complex> forward(const ComplexField& f) const;
    ComplexField inverse(const std::vector<Complex>& fhat) const;

    /// Raw unnormalized in-place DFT (sign -1 forward, +1 backward).
    void dft(std::vector<Complex>& data, int sign) const;

    /// F^{-1}[ m(xi) F[u] ] with m supplied per flattened spectral index.
    ComplexField apply_multiplier(const ComplexField& u,
                                  const std::function<Complex(const std::array<double, 4>&)>& m) const;

    /// Spectral derivative along each axis (i xi multiplier, Nyquist zeroed).
    std::vector<ComplexField> gradient(const ComplexField& u) const;

    /// Sum of h^N |grad u|^2 without forming the component fields.
    double gradient_norm_sq(const ComplexField& u) const;

    /// exp(-i |xi|^2 dt) multiplier applied in place (free propagator).
    void free_propagate(ComplexField& u, double dt) const;

private:
    Grid grid_;
};

/// Global FFTW thread count (1 = serial). Takes effect for subsequently
/// created plans.
void set_fft_threads(int n);
int fft_threads() noexcept;

} // namespace ghartree
