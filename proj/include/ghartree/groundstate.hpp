#pragma once

#include <memory>

#include "ghartree/eqparams.hpp"
#include "ghartree/field.hpp"
#include "ghartree/riesz.hpp"

namespace ghartree {

/// Converged Petviashvili profile with its diagnostics. Q is real, positive
/// and radially nonincreasing; residual is the weighted-l2 norm of
/// -Lap Q + Q - N(Q).
struct GroundStateResult {
    ComplexField profile;
    EquationParams params;
    double residual = 0.0;
    double mass = 0.0;    // ||Q||^2
    double grad_sq = 0.0; // ||grad Q||^2
    double z = 0.0;       // Z(Q)
    double c_gn = 0.0;    // ||Q||^{-2(p-1)}, the paper's sharp-constant display
    double stabilizer_gap = 0.0; // |S_m - 1| at exit
    int iterations = 0;
    bool converged = false;

    double energy() const noexcept { return 0.5 * grad_sq - z / (2.0 * params.power); }
};

struct PetviashviliOptions {
    double tol = 1e-10; // weighted-l2 residual target
    int max_iter = 500;
    double seed_gamma = 1.0; // Gaussian seed exp(-gamma r^2 / 2)
};

/// Fixed-point iteration Q <- S^sigma (1-Lap)^{-1} N(Q) with the stabilizing
/// factor S = <Q,(1-Lap)Q> / <Q,N(Q)> and sigma = (2p-1)/(2p-2), the standard
/// convergent exponent for a nonlinearity of homogeneity 2p-1.
GroundStateResult petviashvili_solve(const EquationParams& params, const Grid& grid,
                                     const PetviashviliOptions& options = {});
GroundStateResult petviashvili_solve(const EquationParams& params,
                                     std::shared_ptr<const RieszKernel> kernel,
                                     const PetviashviliOptions& options = {});

/// ||Q||^{-2(p-1)} as displayed in the paper's sharp-constant discussion.
/// Note: the Weinstein quotient actually attained at Q is gn_quotient(); the
/// two differ by the Pohozhaev factor (a+1)/a^{k+1} with a = grad_sq/mass.
double sharp_gn_constant(const GroundStateResult& result);

/// Z(Q) / (||grad Q||^{2(k+1)} ||Q||^{2(1-s_c)(p-1)}): the value of the
/// Gagliardo-Nirenberg quotient at Q, i.e. the constant for which the
/// inequality is an equality at the ground state.
double gn_quotient(const GroundStateResult& result);

/// Gamma-function closed forms of the energy-critical constants.
struct SharpConstants {
    double c_gn = 0.0;      // sharp constant of Z(u) <= C ||grad u||^{2(2N-b)/(N-2)}
    double c_sobolev = 0.0; // C_N
    double c_hls = 0.0;     // C(N, b)
    double grad_Q_sq_critical = 0.0; // C_GN^{-(N-2)/4}
    double energy_Q_critical = 0.0;  // 2/(N+2) grad_Q_sq_critical
};

SharpConstants critical_constants(int dimension, double b);

/// Closed-form radial profile Q(x) = amplitude (1+|x|^2)^{-(N-2)/2} solving
/// the energy-critical equation with b = N-2. Its mass diverges (Q^2 decays
/// like r^{-2(N-2)}); only gradient and Z quantities are defined.
struct CriticalProfile {
    int dimension = 3;
    double amplitude = 0.0;
    double b = 1.0;     // N - 2
    double power = 5.0; // (N+2)/(N-2)

    double operator()(double r) const;
    double radial_derivative(double r) const;
    double laplacian(double r) const;
};

CriticalProfile explicit_critical_Q(int dimension);

struct CriticalProfileCheck {
    double residual = 0.0; // weighted-l2 residual of Lap Q + (|x|^{-b} * Q^p) Q^{p-1}
    double grad_sq = 0.0;
    double z = 0.0;
};

/// Radial-quadrature verification (Newton's theorem; the slow power-law tails
/// rule out the Cartesian grid). Tail truncation is corrected analytically.
CriticalProfileCheck verify_critical_profile(const CriticalProfile& q, double residual_r_max = 30.0,
                                             double quad_r_max = 2.0e3);

} // namespace ghartree
