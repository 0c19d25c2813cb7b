#pragma once

#include <array>
#include <memory>
#include <utility>

#include "ghartree/eqparams.hpp"
#include "ghartree/field.hpp"
#include "ghartree/riesz.hpp"

namespace ghartree {

/// All conserved and monitored quantities at one instant.
struct ObservableSet {
    double time = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double z_value = 0.0;
    double grad_norm_sq = 0.0;
    double variance = 0.0;      // V = Integral |x|^2 |u|^2
    double variance_rate = 0.0; // V_t = 4 Im Integral conj(u) x . grad u
    std::array<double, 4> momentum{0.0, 0.0, 0.0, 0.0};
    int dim = 3;
};

/// Quadrature is the plain h^N Riemann sum (spectrally accurate for smooth
/// decaying data); reductions are deterministic pairwise sums. Binds the grid,
/// the equation parameters and one cached Riesz kernel.
class ObservableEngine {
public:
    ObservableEngine(const EquationParams& params, std::shared_ptr<const RieszKernel> kernel);

    const EquationParams& params() const noexcept { return params_; }
    const Grid& grid() const noexcept { return kernel_->grid(); }
    const RieszKernel& kernel() const noexcept { return *kernel_; }

    double mass(const ComplexField& u) const;
    double z_functional(const ComplexField& u) const;
    double energy(const ComplexField& u) const;
    double grad_norm_sq(const ComplexField& u) const;
    std::array<double, 4> momentum(const ComplexField& u) const;
    double variance(const ComplexField& u) const;
    double variance_rate(const ComplexField& u) const;

    /// Both algebraic forms of V_tt: (16E - (8k/p)Z, 16(k+1)E - 8k |grad u|^2).
    std::pair<double, double> virial_acceleration(const ComplexField& u) const;

    ObservableSet observe(const ComplexField& u, double time) const;

private:
    EquationParams params_;
    std::shared_ptr<const RieszKernel> kernel_;
    Spectral spectral_;
    double k_ = 0.0; // s_c (p-1)
};

double weighted_l2_dot(const RealField& a, const RealField& b); // h^N sum a b

} // namespace ghartree
