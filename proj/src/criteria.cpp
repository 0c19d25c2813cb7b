#include "ghartree/criteria.hpp"
#include <functional>

#include <algorithm>
#include <cmath>

#include "ghartree/groundstate.hpp"

namespace ghartree {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt2 = 1.41421356237309504880;

} // namespace

void CriterionInput::validate() const {
    params.validate();
    if (!(mass > 0.0))
        throw InvalidParams("criterion input requires mass > 0");
    if (!(variance0 > 0.0) || !std::isfinite(variance0))
        throw InvalidParams("criterion input requires finite variance0 > 0");
    if (!std::isfinite(energy) || !std::isfinite(variance_rate0))
        throw InvalidParams("criterion input must be finite");
}

double f_radicand(double x, double k) {
    if (!(x > 0.0) || !(k > 0.0))
        throw DomainError("f_threshold requires x > 0 and k > 0");
    return 1.0 / (k * std::pow(x, k)) + x - (1.0 + k) / k;
}

double f_threshold(double x, double k) {
    double rad = f_radicand(x, k);
    if (rad < 0.0) {
        if (rad < -1e-14)
            throw DomainError("f_threshold: radicand unexpectedly negative");
        rad = 0.0; // analytically >= 0; clip float noise at the minimum x = 1
    }
    const double root = std::sqrt(rad);
    return x < 1.0 ? root : -root;
}

namespace {

MechanicsState make_mechanics_state(const CriterionInput& input, const CriticalityReport& crit) {
    MechanicsState st;
    st.k = crit.k;
    st.alpha = crit.alpha;
    const double N = input.params.dimension;
    const double p = input.params.power;
    const double b = input.params.potential_exponent;
    const double top = N * (p - 2.0) + b - 2.0; // = 2k
    const double bot = N * (p - 2.0) + b;       // = 2k + 2
    st.omega = std::sqrt(N * N * top / (8.0 * bot));
    const double om = st.omega * input.mass;
    st.x0 = input.energy * input.variance0 / (om * om);
    st.slope0 = input.variance_rate0 / om;
    st.u_tilde_max = (st.alpha + 1.0) / (2.0 * st.alpha * (2.0 * st.alpha + 1.0));
    return st;
}

} // namespace

BlowupVerdict blowup_criterion(const CriterionInput& input) {
    input.validate();
    const CriticalityReport crit = classify(input.params);
    if (!(crit.s_c > 0.0))
        throw WrongRegime("blow-up criterion applies in the mass-supercritical case only");
    if (!(input.energy > 0.0))
        throw DomainError("blow-up criterion assumes E > 0; use the negative-energy clause");
    BlowupVerdict verdict;
    verdict.state = make_mechanics_state(input, crit);
    verdict.f_value = f_threshold(verdict.state.x0, verdict.state.k);
    verdict.holds = verdict.state.slope0 < 4.0 * kSqrt2 * verdict.f_value;
    return verdict;
}

MechanicsReport mechanics_conditions(const MechanicsState& state) {
    if (!(state.alpha > 0.0) || !(state.x0 > 0.0))
        throw DomainError("mechanics_conditions: need alpha > 0 and x0 > 0");
    MechanicsReport rep;
    const double a = state.alpha;
    const double c = (a + 1.0) * (2.0 * a + 1.0) / 2.0;
    // v = Vtilde^{alpha+1}; Vtilde(0) = x0, Vtilde_s(0) = slope0 / (4 sqrt 2)
    const double vt0 = state.x0;
    const double vts0 = state.slope0 / (4.0 * kSqrt2);
    rep.v0 = std::pow(vt0, a + 1.0);
    rep.vs0 = (a + 1.0) * std::pow(vt0, a) * vts0;
    const auto u_tilde = [a](double v) {
        return (a + 1.0) / (2.0 * a) * std::pow(v, 2.0 * a / (a + 1.0)) -
               (a + 1.0) / (2.0 * a + 1.0) * std::pow(v, (2.0 * a + 1.0) / (a + 1.0));
    };
    rep.particle_energy = rep.vs0 * rep.vs0 / (2.0 * c) + u_tilde(rep.v0);
    const double umax = state.u_tilde_max;
    if (rep.particle_energy < umax && rep.v0 < 1.0)
        rep.fired.push_back(MechanicsCondition::I);
    if (rep.particle_energy > umax && rep.vs0 < 0.0)
        rep.fired.push_back(MechanicsCondition::II);
    if (rep.particle_energy == umax && rep.vs0 < 0.0 && rep.v0 < 1.0)
        rep.fired.push_back(MechanicsCondition::III);
    return rep;
}

GroundStateQuantities make_ground_quantities(double mass, double grad_sq, double z, double p) {
    GroundStateQuantities q;
    q.mass = mass;
    q.grad_sq = grad_sq;
    q.z = z;
    q.energy = 0.5 * grad_sq - z / (2.0 * p);
    return q;
}

MeGValues me_g_functionals(double mass, double energy, double grad_sq,
                           const GroundStateQuantities& ground, const EquationParams& params) {
    const CriticalityReport crit = classify(params);
    if (!(crit.s_c > 0.0) || !(crit.s_c < 1.0))
        throw WrongRegime("ME/G functionals are defined in the intercritical regime");
    const double ex = (1.0 - crit.s_c) / crit.s_c;
    MeGValues v;
    v.me = std::pow(mass / ground.mass, ex) * (energy / ground.energy);
    v.g = std::pow(mass / ground.mass, 0.5 * ex) * std::sqrt(grad_sq / ground.grad_sq);
    return v;
}

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::GlobalScatteringRegime: return "global-scattering-regime";
        case Verdict::BlowupRegime: return "blowup-regime";
        case Verdict::CriterionBlowup: return "criterion-blowup";
        case Verdict::NegativeEnergyBlowup: return "negative-energy-blowup";
        case Verdict::Undetermined: return "undetermined";
    }
    return "unknown";
}

ClassificationReport dichotomy_classify(const DichotomyInput& input,
                                        const std::optional<GroundStateQuantities>& ground) {
    input.base.validate();
    const EquationParams& params = input.base.params;
    const CriticalityReport crit = classify(params);
    ClassificationReport rep;
    rep.k = crit.k;

    // Nonpositive energy: classical virial blow-up, any criticality with V finite.
    if (input.base.energy <= 0.0) {
        rep.verdict = Verdict::NegativeEnergyBlowup;
        rep.clauses.push_back("E<=0: virial blow-up (finite variance)");
        return rep;
    }

    bool criterion = false;
    if (crit.s_c > 0.0 && input.finite_variance) {
        const BlowupVerdict bv = blowup_criterion(input.base);
        rep.omega = bv.state.omega;
        rep.x0 = bv.state.x0;
        rep.f_value = bv.f_value;
        criterion = bv.holds;
        rep.criterion_holds = criterion;
    }

    if (crit.cls == Criticality::Intercritical) {
        if (!ground.has_value())
            throw WrongRegime("intercritical dichotomy needs ground-state data");
        const MeGValues meg =
            me_g_functionals(input.base.mass, input.base.energy, input.grad_sq, *ground, params);
        rep.me = meg.me;
        rep.g = meg.g;
        if (meg.me < 1.0 && meg.g < 1.0) {
            rep.verdict = Verdict::GlobalScatteringRegime;
            rep.clauses.push_back("ME<1, G<1: global existence + H^1 scattering");
            return rep;
        }
        if (meg.me < 1.0 && meg.g > 1.0) {
            rep.verdict = Verdict::BlowupRegime;
            if (input.finite_variance || input.radial)
                rep.clauses.push_back("ME<1, G>1, finite variance or radial: finite-time blow-up");
            else
                rep.clauses.push_back(
                    "ME<1, G>1, infinite variance nonradial: blow-up or unbounded gradient "
                    "sequence (reported verbatim)");
            return rep;
        }
        // above the mass-energy threshold the criterion can still fire
        if (criterion) {
            rep.verdict = Verdict::CriterionBlowup;
            rep.clauses.push_back("E>0 and inequality (variance criterion): finite-time blow-up");
            return rep;
        }
        rep.verdict = Verdict::Undetermined;
        rep.clauses.push_back("ME>=1 and no criterion clause: open band");
        return rep;
    }

    if (crit.cls == Criticality::EnergyCritical) {
        const SharpConstants sc =
            critical_constants(params.dimension, params.potential_exponent);
        rep.me = input.base.energy / sc.energy_Q_critical; // E[u]/E[Q]
        rep.g = std::sqrt(input.grad_sq / sc.grad_Q_sq_critical);
        if (rep.me < 1.0 && rep.g < 1.0) {
            rep.verdict = Verdict::GlobalScatteringRegime;
            rep.clauses.push_back("E/E[Q]<1, G<1: global existence (no scattering claim)");
            return rep;
        }
        if (rep.me < 1.0 && rep.g > 1.0) {
            if (input.radial || input.finite_variance) {
                rep.verdict = Verdict::BlowupRegime;
                rep.clauses.push_back(
                    "E/E[Q]<1, G>1, radial or finite variance: finite-time blow-up");
            } else {
                rep.verdict = Verdict::Undetermined;
                rep.clauses.push_back(
                    "E/E[Q]<1, G>1, infinite variance nonradial: deferred by the theory");
            }
            return rep;
        }
        if (criterion) {
            rep.verdict = Verdict::CriterionBlowup;
            rep.clauses.push_back("E>0 and inequality (variance criterion): finite-time blow-up");
            return rep;
        }
        rep.verdict = Verdict::Undetermined;
        rep.clauses.push_back("above the energy threshold: open band");
        return rep;
    }

    // supercritical (and mass-critical s_c = 0): only the criterion clause is available
    if (criterion) {
        rep.verdict = Verdict::CriterionBlowup;
        rep.clauses.push_back("E>0 and inequality (variance criterion): finite-time blow-up");
        return rep;
    }
    rep.verdict = Verdict::Undetermined;
    rep.clauses.push_back("no applicable clause in this regime");
    return rep;
}

GaussianObservables gaussian_observables(double beta, double gamma, const EquationParams& params) {
    params.validate();
    if (!(beta > 0.0) || !(gamma > 0.0))
        throw InvalidParams("gaussian observables need beta, gamma > 0");
    const double N = params.dimension;
    const double p = params.power;
    GaussianObservables g;
    g.mass = beta * beta * std::pow(kPi / gamma, 0.5 * N);
    g.variance0 = beta * beta * N * std::pow(kPi, 0.5 * N) / (2.0 * std::pow(gamma, 0.5 * N + 1.0));
    g.variance_rate0 = 0.0; // real data
    g.grad_sq = N * std::pow(kPi, 0.5 * N) / 2.0 * beta * beta / std::pow(gamma, 0.5 * (N - 2.0));
    g.z = gaussian_z_closed_form(beta, gamma, params);
    g.energy = 0.5 * g.grad_sq - g.z / (2.0 * p);
    return g;
}

double gaussian_z_closed_form(double beta, double gamma, const EquationParams& params) {
    params.validate();
    const double N = params.dimension;
    const double p = params.power;
    const double b = params.potential_exponent;
    // Z(u_g) = beta^{2p} pi^N 2^{-b/2} a^{(b-2N)/2} Gamma((N-b)/2)/Gamma(N/2), a = p gamma / 2
    const double a = 0.5 * p * gamma;
    return std::pow(beta, 2.0 * p) * std::pow(kPi, N) * std::pow(2.0, -0.5 * b) *
           std::pow(a, 0.5 * (b - 2.0 * N)) * std::tgamma(0.5 * (N - b)) / std::tgamma(0.5 * N);
}

CriterionInput GaussianObservables::criterion_input(const EquationParams& params) const {
    CriterionInput in;
    in.mass = mass;
    in.energy = energy;
    in.variance0 = variance0;
    in.variance_rate0 = variance_rate0;
    in.params = params;
    return in;
}

const char* to_string(ThresholdKind k) noexcept {
    switch (k) {
        case ThresholdKind::NegativeEnergy: return "negative-energy";
        case ThresholdKind::CriterionBlowup: return "criterion-blowup";
        case ThresholdKind::MeLower: return "me-lower";
        case ThresholdKind::MeUpper: return "me-upper";
        case ThresholdKind::Gradient: return "gradient";
        case ThresholdKind::EnergyCriticalLower: return "energy-critical-lower";
        case ThresholdKind::EnergyCriticalUpper: return "energy-critical-upper";
    }
    return "unknown";
}

namespace {

// Scans a log-spaced grid for sign changes of F and bisects the one selected
// by `which` (0-based among the roots found).
double bisect_root(const std::function<double(double)>& F, int which) {
    constexpr double lo = 1e-3, hi = 10.0;
    constexpr int scan = 4000;
    double prev_x = lo;
    double prev_f = F(lo);
    int found = 0;
    for (int i = 1; i <= scan; ++i) {
        const double x = lo * std::pow(hi / lo, static_cast<double>(i) / scan);
        const double fx = F(x);
        if (prev_f == 0.0)
            return prev_x;
        if ((prev_f < 0.0) != (fx < 0.0)) {
            if (found == which) {
                double a = prev_x, bb = x, fa = prev_f;
                while (bb - a > 1e-8) {
                    const double m = 0.5 * (a + bb);
                    const double fm = F(m);
                    if ((fa < 0.0) != (fm < 0.0))
                        bb = m;
                    else {
                        a = m;
                        fa = fm;
                    }
                }
                return 0.5 * (a + bb);
            }
            ++found;
        }
        prev_x = x;
        prev_f = fx;
    }
    throw NoRootInBracket("threshold_solve: no root of the requested index in [1e-3, 10]");
}

} // namespace

double threshold_solve(ThresholdKind kind, const EquationParams& params,
                       const std::optional<GroundStateQuantities>& ground) {
    params.validate();
    const CriticalityReport crit = classify(params);
    const auto gauss = [&](double beta) { return gaussian_observables(beta, 1.0, params); };

    switch (kind) {
        case ThresholdKind::NegativeEnergy:
            return bisect_root([&](double beta) { return gauss(beta).energy; }, 0);
        case ThresholdKind::CriterionBlowup: {
            if (!(crit.s_c > 0.0))
                throw WrongRegime("criterion threshold needs s_c > 0");
            // real data: criterion holds iff V(0) E < (omega M)^2
            const double N = params.dimension;
            const double p = params.power;
            const double b = params.potential_exponent;
            const double om_sq =
                N * N * (N * (p - 2.0) + b - 2.0) / (8.0 * (N * (p - 2.0) + b));
            return bisect_root(
                [&](double beta) {
                    const GaussianObservables g = gauss(beta);
                    return g.variance0 * g.energy - om_sq * g.mass * g.mass;
                },
                0);
        }
        case ThresholdKind::MeLower:
        case ThresholdKind::MeUpper: {
            if (crit.cls != Criticality::Intercritical)
                throw WrongRegime("ME thresholds are intercritical");
            if (!ground.has_value())
                throw WrongRegime("ME thresholds need ground-state data");
            const auto F = [&](double beta) {
                const GaussianObservables g = gauss(beta);
                return me_g_functionals(g.mass, g.energy, g.grad_sq, *ground, params).me - 1.0;
            };
            return bisect_root(F, kind == ThresholdKind::MeLower ? 0 : 1);
        }
        case ThresholdKind::Gradient: {
            if (crit.cls == Criticality::Intercritical) {
                if (!ground.has_value())
                    throw WrongRegime("gradient threshold needs ground-state data");
                const auto F = [&](double beta) {
                    const GaussianObservables g = gauss(beta);
                    return me_g_functionals(g.mass, g.energy, g.grad_sq, *ground, params).g -
                           1.0;
                };
                return bisect_root(F, 0);
            }
            if (crit.cls == Criticality::EnergyCritical) {
                const SharpConstants sc =
                    critical_constants(params.dimension, params.potential_exponent);
                return bisect_root(
                    [&](double beta) {
                        return gauss(beta).grad_sq - sc.grad_Q_sq_critical;
                    },
                    0);
            }
            throw WrongRegime("gradient threshold needs 0 < s_c <= 1");
        }
        case ThresholdKind::EnergyCriticalLower:
        case ThresholdKind::EnergyCriticalUpper: {
            if (crit.cls != Criticality::EnergyCritical)
                throw WrongRegime("energy thresholds need s_c = 1");
            const SharpConstants sc =
                critical_constants(params.dimension, params.potential_exponent);
            const auto F = [&](double beta) {
                return gauss(beta).energy / sc.energy_Q_critical - 1.0;
            };
            return bisect_root(F, kind == ThresholdKind::EnergyCriticalLower ? 0 : 1);
        }
    }
    throw InvalidParams("unknown threshold kind");
}

} // namespace ghartree
