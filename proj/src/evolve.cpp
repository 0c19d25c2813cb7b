#include "ghartree/evolve.hpp"

#include <algorithm>
#include <cmath>

namespace ghartree {

void EvolveConfig::validate() const {
    if (!(dt0 > dt_floor) || !(dt_floor > 0.0))
        throw InvalidParams("evolve config requires dt0 > dt_floor > 0");
    if (!(t_end > 0.0))
        throw InvalidParams("evolve config requires t_end > 0");
    if (!(phase_cap > 0.0) || !(phase_cap < 3.14159265358979323846))
        throw InvalidParams("phase cap must lie in (0, pi)");
    if (record_stride < 1)
        throw InvalidParams("record stride must be >= 1");
    if (!(blowup_gradient_factor > 1.0))
        throw InvalidParams("blow-up gradient factor must exceed 1");
}

const char* to_string(TerminalStatus s) noexcept {
    switch (s) {
        case TerminalStatus::ReachedTEnd: return "reached-t-end";
        case TerminalStatus::BlowupDetected: return "blowup-detected";
        case TerminalStatus::AbortedConservation: return "aborted-conservation";
        case TerminalStatus::AbortedBoundary: return "aborted-boundary";
    }
    return "unknown";
}

Evolver::Evolver(const EquationParams& params, const Grid& grid, SingularRule rule)
    : params_(params),
      kernel_(std::make_shared<const RieszKernel>(grid, params.potential_exponent, rule)),
      spectral_(grid),
      engine_(params, kernel_) {
    params_.validate();
}

ComplexField Evolver::linear_step(const ComplexField& u, double dt) const {
    ComplexField out = u;
    spectral_.free_propagate(out, dt);
    return out;
}

RealField Evolver::effective_potential(const ComplexField& u, double* vmax) const {
    const RealField density = abs_power(u, params_.power);
    RealField v = kernel_->convolve(density);
    const double q = params_.power - 2.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (q != 0.0)
            v.values[i] *= std::pow(std::norm(u.values[i]), 0.5 * q);
        peak = std::max(peak, std::abs(v.values[i]));
    }
    if (vmax != nullptr)
        *vmax = peak;
    return v;
}

void Evolver::phase_rotate(ComplexField& u, const RealField& v_eff, double dt) const {
    for (std::size_t i = 0; i < u.values.size(); ++i)
        u.values[i] *= std::polar(1.0, dt * v_eff.values[i]);
}

ComplexField Evolver::nonlinear_step(const ComplexField& u, double dt) const {
    u.require_finite();
    ComplexField out = u;
    const RealField v = effective_potential(u, nullptr);
    phase_rotate(out, v, dt);
    return out;
}

ComplexField Evolver::strang_step(const ComplexField& u, double dt) const {
    ComplexField out = linear_step(u, 0.5 * dt);
    const RealField v = effective_potential(out, nullptr);
    phase_rotate(out, v, dt);
    spectral_.free_propagate(out, 0.5 * dt);
    return out;
}

TrajectoryRecord Evolver::evolve(const ComplexField& u0, const EvolveConfig& config,
                                 const std::function<void(const ObservableSet&)>& on_record) const {
    config.validate();
    u0.require_finite();
    if (!(u0.grid == kernel_->grid()))
        throw GridMismatch("evolve: initial data grid does not match the evolver grid");

    TrajectoryRecord record;
    ComplexField u = u0;
    const double mass0 = engine_.mass(u0);
    const double grad_sq0 = engine_.grad_norm_sq(u0);
    record.initial_grad_norm = std::sqrt(grad_sq0);
    const double grad_sq_trigger =
        config.blowup_gradient_factor * config.blowup_gradient_factor * grad_sq0;

    ObservableSet first = engine_.observe(u0, 0.0);
    record.samples.push_back(first);
    if (on_record)
        on_record(first);

    double vmax = 0.0;
    effective_potential(u, &vmax);

    double t = 0.0;
    double grad_sq = grad_sq0;
    TerminalStatus status = TerminalStatus::ReachedTEnd;
    const double eps_t = 1e-12 * config.t_end;

    while (t < config.t_end - eps_t) {
        const double dt_phase = config.phase_cap / std::max(vmax, 1e-300);
        const bool refined = dt_phase < 4.0 * config.dt_floor;
        double dt = std::clamp(dt_phase, config.dt_floor, config.dt0);
        dt = std::min(dt, config.t_end - t);

        // Strang step, reusing the mid-step potential for the next dt choice.
        spectral_.free_propagate(u, 0.5 * dt);
        const RealField v_eff = effective_potential(u, &vmax);
        phase_rotate(u, v_eff, dt);
        spectral_.free_propagate(u, 0.5 * dt);

        t += dt;
        ++record.steps;

        const double mass = engine_.mass(u);
        grad_sq = engine_.grad_norm_sq(u);
        const double drift = std::abs(mass - mass0) / mass0;
        record.max_mass_drift = std::max(record.max_mass_drift, drift);

        const bool record_now = record.steps % config.record_stride == 0;
        if (record_now) {
            ObservableSet sample = engine_.observe(u, t);
            record.samples.push_back(sample);
            if (on_record)
                on_record(sample);
        }

        if (grad_sq >= grad_sq_trigger && refined) {
            status = TerminalStatus::BlowupDetected;
            break;
        }
        if (drift > config.conservation_abort) {
            status = TerminalStatus::AbortedConservation;
            break;
        }
        if (boundary_mass_fraction(u) > config.boundary_abort) {
            status = TerminalStatus::AbortedBoundary;
            break;
        }
    }

    if (record.samples.back().time < t - eps_t) {
        ObservableSet last = engine_.observe(u, t);
        record.samples.push_back(last);
        if (on_record)
            on_record(last);
    }
    record.status = status;
    record.final_time = t;
    record.final_grad_norm = std::sqrt(grad_sq);
    record.final_state = std::move(u);
    return record;
}

VirialCheck virial_consistency(const TrajectoryRecord& record, const EquationParams& params) {
    if (record.samples.size() < 3)
        throw DomainError("virial_consistency needs at least 3 samples");
    const CriticalityReport crit = classify(params);
    const double p = params.power;
    VirialCheck check;

    double vt_scale = 0.0, vtt_scale = 0.0;
    for (const ObservableSet& s : record.samples) {
        vt_scale = std::max(vt_scale, std::abs(s.variance_rate));
        vtt_scale = std::max(vtt_scale,
                             std::abs(16.0 * s.energy - 8.0 * crit.k / p * s.z_value));
    }
    vt_scale = std::max(vt_scale, 1e-30);
    vtt_scale = std::max(vtt_scale, 1e-30);

    for (std::size_t i = 1; i + 1 < record.samples.size(); ++i) {
        const ObservableSet& a = record.samples[i - 1];
        const ObservableSet& m = record.samples[i];
        const ObservableSet& b = record.samples[i + 1];
        const double h1 = m.time - a.time;
        const double h2 = b.time - m.time;
        // nonuniform centered first and second differences
        const double fd_vt = (-h2 / (h1 * (h1 + h2))) * a.variance +
                             ((h2 - h1) / (h1 * h2)) * m.variance +
                             (h1 / (h2 * (h1 + h2))) * b.variance;
        const double fd_vtt = 2.0 * (a.variance / (h1 * (h1 + h2)) - m.variance / (h1 * h2) +
                                     b.variance / (h2 * (h1 + h2)));
        const double vtt_form1 = 16.0 * m.energy - 8.0 * crit.k / p * m.z_value;
        const double vtt_form2 =
            16.0 * (crit.k + 1.0) * m.energy - 8.0 * crit.k * m.grad_norm_sq;
        check.max_rel_vt_gap =
            std::max(check.max_rel_vt_gap, std::abs(fd_vt - m.variance_rate) / vt_scale);
        check.max_rel_vtt_gap =
            std::max(check.max_rel_vtt_gap, std::abs(fd_vtt - vtt_form1) / vtt_scale);
        check.max_forms_gap =
            std::max(check.max_forms_gap, std::abs(vtt_form1 - vtt_form2) / vtt_scale);
        ++check.compared;
    }
    return check;
}

} // namespace ghartree
