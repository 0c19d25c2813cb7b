#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ghartree/eqparams.hpp"
#include "ghartree/field.hpp"

namespace ghartree {

/// How the non-integrable cell at offset zero (and, for the corrected rule,
/// its nearest shells) is assigned quadrature weight.
enum class SingularRule {
    /// |x|^{-b} averaged over the ball of volume h^N: N a^{-b}/(N-b) with
    /// a = h Gamma(N/2+1)^{1/N} / sqrt(pi). Simple; O(h^{N-b}) quadrature error.
    BallAverage,
    /// Ewald-split moment matching: the erfc-screened short-range part of the
    /// kernel has its lattice moments 0..3 matched to the exact integrals by
    /// small weights on the shells |j|^2 in {0,1,2,4}. High-order accurate for
    /// smooth data; all off-stencil samples remain exactly |x|^{-b}.
    LatticeCorrected,
};

struct ConvolveStats {
    double boundary_mass_fraction = 0.0;
    bool boundary_warning = false;
};

/// Free-space |x|^{-b} convolution operator on a fixed grid. Tabulates the
/// kernel on the zero-padded (2n)^N grid once, transforms it, and caches the
/// (real, even) spectrum, so each convolve costs one padded transform pair.
/// Aperiodic by construction: no periodic image corrupts the long-range tail.
class RieszKernel {
public:
    RieszKernel(const Grid& grid, double b,
                SingularRule rule = SingularRule::LatticeCorrected);

    const Grid& grid() const noexcept { return grid_; }
    double exponent() const noexcept { return b_; }
    SingularRule rule() const noexcept { return rule_; }

    /// (|x|^{-b} * g)(x_i) = h^N sum_j T(i-j) g_j via padded transforms.
    RealField convolve(const RealField& g, ConvolveStats* stats = nullptr) const;

    /// Tabulated kernel weight at an integer cell offset (each |off_d| < n).
    /// The brute-force direct sum built on this reproduces convolve exactly.
    double table_value(const std::array<int, 4>& offset) const;

    static double ball_average_center(int dim, double b, double h);

private:
    Grid grid_;
    double b_;
    SingularRule rule_;
    double center_ = 0.0;                       // table weight at offset 0
    std::vector<long long> shell_squares_;      // corrected shells (|j|^2)
    std::vector<double> shell_deltas_;          // additive weight per shell
    std::vector<double> khat_;                  // real spectrum, r2c half layout
    std::vector<int> padded_dims_;

    void build_table_spectrum();
};

/// V = |x|^{-b} * |u|^p, the real potential factor of the nonlinearity.
RealField nonlinear_potential(const ComplexField& u, const EquationParams& params,
                              const RieszKernel& kernel, ConvolveStats* stats = nullptr);

/// N(u) = (|x|^{-b} * |u|^p) |u|^{p-2} u.
ComplexField nonlinear_term(const ComplexField& u, const EquationParams& params,
                            const RieszKernel& kernel, ConvolveStats* stats = nullptr);

} // namespace ghartree
