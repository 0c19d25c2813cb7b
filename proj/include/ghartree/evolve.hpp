#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ghartree/observables.hpp"

namespace ghartree {

struct EvolveConfig {
    double dt0 = 1e-3;    // largest step taken
    double t_end = 2.0;
    double dt_floor = 1e-6;
    double phase_cap = 0.1; // max |dt V_eff| per step; bounds splitting error in focusing regions
    double blowup_gradient_factor = 10.0;
    int record_stride = 1;
    double conservation_abort = 1e-4; // relative mass drift
    double boundary_abort = 1e-4;     // |u|^2 fraction in the outermost layer

    void validate() const;
};

enum class TerminalStatus {
    ReachedTEnd,
    BlowupDetected,       // a result, not an error
    AbortedConservation,
    AbortedBoundary,      // the box approximation expired, not a failure
};

const char* to_string(TerminalStatus s) noexcept;

struct TrajectoryRecord {
    std::vector<ObservableSet> samples; // strictly increasing times
    TerminalStatus status = TerminalStatus::ReachedTEnd;
    double final_time = 0.0;
    long steps = 0;
    double initial_grad_norm = 0.0;
    double final_grad_norm = 0.0;
    double max_mass_drift = 0.0; // relative
    ComplexField final_state;
};

/// Strang split-step integrator: exact Fourier half-step for the free flow,
/// exact phase rotation for the frozen-potential nonlinear flow. Mass is
/// conserved by construction (both sub-flows are modulus-preserving); the
/// adaptive dt keeps the nonlinear phase per step under phase_cap.
class Evolver {
public:
    Evolver(const EquationParams& params, const Grid& grid,
            SingularRule rule = SingularRule::LatticeCorrected);

    const ObservableEngine& observables() const noexcept { return engine_; }
    std::shared_ptr<const RieszKernel> kernel() const noexcept { return kernel_; }
    const EquationParams& params() const noexcept { return params_; }

    /// Multiply the transform by exp(-i |xi|^2 dt); unitary, mass-exact.
    ComplexField linear_step(const ComplexField& u, double dt) const;

    /// Pointwise exp(i dt V_eff) with V_eff = (|x|^{-b} * |u|^p)|u|^{p-2};
    /// preserves |u| pointwise exactly.
    ComplexField nonlinear_step(const ComplexField& u, double dt) const;

    /// Half linear, full nonlinear, half linear.
    ComplexField strang_step(const ComplexField& u, double dt) const;

    TrajectoryRecord evolve(const ComplexField& u0, const EvolveConfig& config,
                            const std::function<void(const ObservableSet&)>& on_record = {}) const;

private:
    EquationParams params_;
    std::shared_ptr<const RieszKernel> kernel_;
    Spectral spectral_;
    ObservableEngine engine_;

    RealField effective_potential(const ComplexField& u, double* vmax) const;
    void phase_rotate(ComplexField& u, const RealField& v_eff, double dt) const;
};

struct VirialCheck {
    double max_rel_vt_gap = 0.0;    // FD dV/dt vs analytic V_t
    double max_rel_vtt_gap = 0.0;   // FD d2V/dt2 vs 16E - (8k/p) Z
    double max_forms_gap = 0.0;     // the two analytic V_tt forms against each other
    int compared = 0;
};

/// Centered nonuniform finite differences of the sampled variance against the
/// analytic virial observables. Throws DomainError with fewer than 3 samples.
VirialCheck virial_consistency(const TrajectoryRecord& record, const EquationParams& params);

} // namespace ghartree
