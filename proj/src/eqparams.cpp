#include "ghartree/eqparams.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ghartree {

void EquationParams::validate() const {
    if (dimension < 1)
        throw InvalidParams("dimension must be a positive integer");
    if (!(potential_exponent > 0.0) || !(potential_exponent < dimension))
        throw InvalidParams("potential exponent b must satisfy 0 < b < N");
    if (!(power >= 2.0))
        throw InvalidParams("power p must satisfy p >= 2");
    if (!std::isfinite(power) || !std::isfinite(potential_exponent))
        throw InvalidParams("parameters must be finite");
}

bool EquationParams::valid() const noexcept {
    try {
        validate();
        return true;
    } catch (const InvalidParams&) {
        return false;
    }
}

std::string EquationParams::describe() const {
    std::ostringstream os;
    os << "N=" << dimension << " p=" << power << " b=" << potential_exponent;
    return os.str();
}

const char* to_string(Criticality c) noexcept {
    switch (c) {
        case Criticality::MassSubcritical: return "mass-subcritical";
        case Criticality::MassCritical: return "mass-critical";
        case Criticality::Intercritical: return "intercritical";
        case Criticality::EnergyCritical: return "energy-critical";
        case Criticality::EnergySupercritical: return "energy-supercritical";
    }
    return "unknown";
}

double scaling_index(const EquationParams& params) {
    params.validate();
    const double N = params.dimension;
    const double p = params.power;
    const double b = params.potential_exponent;
    return N / 2.0 - (N - b + 2.0) / (2.0 * (p - 1.0));
}

namespace {

bool is_even_integer(double p) {
    const double r = std::round(p / 2.0) * 2.0;
    return std::abs(p - r) < 1e-12;
}

} // namespace

CriticalityReport classify(const EquationParams& params) {
    CriticalityReport rep;
    rep.s_c = scaling_index(params);
    rep.k = rep.s_c * (params.power - 1.0);
    rep.alpha = rep.k / 2.0;
    if (std::abs(rep.s_c) <= kCriticalityTol)
        rep.cls = Criticality::MassCritical;
    else if (std::abs(rep.s_c - 1.0) <= kCriticalityTol)
        rep.cls = Criticality::EnergyCritical;
    else if (rep.s_c < 0.0)
        rep.cls = Criticality::MassSubcritical;
    else if (rep.s_c < 1.0)
        rep.cls = Criticality::Intercritical;
    else
        rep.cls = Criticality::EnergySupercritical;
    rep.lwp_regularity_ok = is_even_integer(params.power) || rep.s_c < params.power - 1.0;
    rep.a1_exponent_ok = params.potential_exponent + rep.s_c < params.dimension;
    return rep;
}

AdmissiblePair canonical_pair(const EquationParams& params) {
    params.validate();
    const double N = params.dimension;
    const double p = params.power;
    if (!(N * p > 2.0))
        throw InvalidParams("canonical pair requires Np > 2");
    AdmissiblePair pair;
    pair.q = 2.0 * p;
    pair.r = 2.0 * N * p / (N * p - 2.0);
    pair.q_dual = pair.q / (pair.q - 1.0);
    pair.r_dual = pair.r / (pair.r - 1.0);
    return pair;
}

double hls_partner_exponent(double r2, const EquationParams& params) {
    params.validate();
    const double N = params.dimension;
    const double b = params.potential_exponent;
    if (!(r2 > 1.0) || !std::isfinite(r2))
        throw DomainError("hls_partner_exponent: r2 must lie in (1, inf)");
    // 1/r1 = 1/r2 + b/N - 1
    const double inv_r1 = 1.0 / r2 + b / N - 1.0;
    if (!(inv_r1 > 0.0) || !(inv_r1 < 1.0))
        throw DomainError("hls_partner_exponent: partner exponent leaves (1, inf)");
    return 1.0 / inv_r1;
}

bool is_admissible(const AdmissiblePair& pair, int dimension, double tol) {
    const double N = dimension;
    if (pair.q < 2.0 - tol || pair.r < 2.0 - tol)
        return false;
    if (dimension == 2 && std::isinf(pair.r))
        return false;
    const double lhs = 2.0 / pair.q + N / pair.r;
    return std::abs(lhs - N / 2.0) <= tol;
}

} // namespace ghartree
