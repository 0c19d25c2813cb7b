#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ghartree/eqparams.hpp"

namespace ghartree {

/// Scalar inputs of the blow-up criterion: conserved quantities plus the
/// initial variance data. Finite-variance hypothesis: variance0 > 0.
struct CriterionInput {
    double mass = 0.0;
    double energy = 0.0;
    double variance0 = 0.0;
    double variance_rate0 = 0.0;
    EquationParams params;

    void validate() const;
};

/// The rescaled "particle in a potential well" picture behind the criterion.
struct MechanicsState {
    double omega = 0.0;       // omega^2 = N^2 (N(p-2)+b-2) / (8 (N(p-2)+b))
    double k = 0.0;           // s_c (p-1)
    double alpha = 0.0;       // k/2
    double x0 = 0.0;          // E V(0) / (omega M)^2, the rescaled variance
    double slope0 = 0.0;      // V_t(0) / (omega M)
    double u_tilde_max = 0.0; // (alpha+1) / (2 alpha (2 alpha + 1))
};

/// Radicand 1/(k x^k) + x - (1+k)/k of the threshold function; >= 0 for all
/// x > 0 with the minimum 0 at x = 1.
double f_radicand(double x, double k);

/// Piecewise threshold function: +sqrt(radicand) for 0 < x < 1, -sqrt for
/// x >= 1. Radicands within -1e-14 of zero are clipped to 0.
double f_threshold(double x, double k);

struct BlowupVerdict {
    bool holds = false;
    double f_value = 0.0;
    MechanicsState state;
};

/// Sufficient blow-up condition V_t(0)/(omega M) < 4 sqrt(2) f(E V(0)/(omega M)^2)
/// for mass-supercritical (s_c > 0) data with E > 0. Throws WrongRegime for
/// s_c <= 0 and DomainError for E <= 0 (route those to the negative-energy
/// clause instead).
BlowupVerdict blowup_criterion(const CriterionInput& input);

enum class MechanicsCondition { I, II, III };

struct MechanicsReport {
    std::vector<MechanicsCondition> fired;
    double particle_energy = 0.0; // E(0) of the auxiliary particle
    double v0 = 0.0;              // initial coordinate
    double vs0 = 0.0;             // initial velocity
    bool any() const noexcept { return !fired.empty(); }
};

/// Conditions (I)-(III) of the mechanical analogy, evaluated from the same
/// MechanicsState. The union is equivalent to the f-criterion.
MechanicsReport mechanics_conditions(const MechanicsState& state);

/// Ground-state quantities the dichotomy normalizations need.
struct GroundStateQuantities {
    double mass = 0.0;    // ||Q||^2
    double grad_sq = 0.0; // ||grad Q||^2
    double z = 0.0;       // Z(Q)
    double energy = 0.0;  // E[Q]
};

GroundStateQuantities make_ground_quantities(double mass, double grad_sq, double z, double p);

struct MeGValues {
    double me = 0.0;
    double g = 0.0;
};

/// Normalized mass-energy and mass-gradient functionals (intercritical only).
MeGValues me_g_functionals(double mass, double energy, double grad_sq,
                           const GroundStateQuantities& ground, const EquationParams& params);

enum class Verdict {
    GlobalScatteringRegime,
    BlowupRegime,
    CriterionBlowup,
    NegativeEnergyBlowup,
    Undetermined,
};

const char* to_string(Verdict v) noexcept;

struct ClassificationReport {
    double me = 0.0; // or E/E[Q] in the energy-critical case
    double g = 0.0;
    Verdict verdict = Verdict::Undetermined;
    std::vector<std::string> clauses;
    double omega = 0.0;
    double k = 0.0;
    double x0 = 0.0;
    double f_value = 0.0;
    bool criterion_holds = false;
};

struct DichotomyInput {
    CriterionInput base;
    double grad_sq = 0.0;
    bool finite_variance = true;
    bool radial = false;
};

/// Merges the applicable theorem clauses into one report. Ground-state data is
/// required in the intercritical regime; the energy-critical regime uses the
/// Gamma-function closed forms internally.
ClassificationReport dichotomy_classify(const DichotomyInput& input,
                                        const std::optional<GroundStateQuantities>& ground);

/// Closed-form observables of u_g = beta exp(-gamma |x|^2 / 2).
struct GaussianObservables {
    double mass = 0.0;
    double variance0 = 0.0;
    double variance_rate0 = 0.0;
    double grad_sq = 0.0;
    double z = 0.0;
    double energy = 0.0;

    CriterionInput criterion_input(const EquationParams& params) const;
};

GaussianObservables gaussian_observables(double beta, double gamma, const EquationParams& params);

/// Z(u_g) in closed form for any admissible (N, p, b).
double gaussian_z_closed_form(double beta, double gamma, const EquationParams& params);

enum class ThresholdKind {
    NegativeEnergy,
    CriterionBlowup,
    MeLower,
    MeUpper,
    Gradient,
    EnergyCriticalLower,
    EnergyCriticalUpper,
};

const char* to_string(ThresholdKind k) noexcept;

/// Root of the relevant closed-form condition in the scale-invariant Gaussian
/// amplitude (gamma normalized to 1). Bisected to 1e-8 inside [1e-3, 10].
double threshold_solve(ThresholdKind kind, const EquationParams& params,
                       const std::optional<GroundStateQuantities>& ground = std::nullopt);

} // namespace ghartree
