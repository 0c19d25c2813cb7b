#pragma once

#include <string>

#include "ghartree/errors.hpp"

namespace ghartree {

/// The triple (N, p, b) of iu_t + Lap u + (|x|^{-b} * |u|^p)|u|^{p-2}u = 0.
/// Standing assumptions: 0 < b < N and p >= 2. p and b are reals; integer
/// values have no special semantics.
struct EquationParams {
    int dimension = 3;             // N
    double power = 3.0;            // p
    double potential_exponent = 1; // b

    void validate() const;
    bool valid() const noexcept;
    std::string describe() const; // "N=3 p=3 b=1"
};

enum class Criticality {
    MassSubcritical, // s_c < 0; outside the paper's scope, reported for completeness
    MassCritical,    // s_c = 0
    Intercritical,   // 0 < s_c < 1
    EnergyCritical,  // s_c = 1
    EnergySupercritical,
};

const char* to_string(Criticality c) noexcept;

/// Criticality data derived from (N, p, b).
struct CriticalityReport {
    double s_c = 0;    // critical Sobolev index
    Criticality cls = Criticality::Intercritical;
    double k = 0;      // s_c (p - 1)
    double alpha = 0;  // k / 2
    bool lwp_regularity_ok = false; // s_c < p-1 when p is not an even integer
    bool a1_exponent_ok = false;    // b + s_c < N (diagnostic only, never enforced)
};

/// Strichartz-admissible exponent pair with its Hoelder duals.
struct AdmissiblePair {
    double q = 0;
    double r = 0;
    double q_dual = 0;
    double r_dual = 0;
};

/// Tolerance used to place s_c on the enum boundaries {0, 1}. Classification
/// drives branching downstream and must be deterministic under float noise.
inline constexpr double kCriticalityTol = 1e-12;

double scaling_index(const EquationParams& params);
CriticalityReport classify(const EquationParams& params);
AdmissiblePair canonical_pair(const EquationParams& params);

/// Solves 1/r2 + b/N = 1 + 1/r1 for r1. Throws DomainError when the solved
/// exponent leaves (1, inf).
double hls_partner_exponent(double r2, const EquationParams& params);

bool is_admissible(const AdmissiblePair& pair, int dimension, double tol = 1e-12);

} // namespace ghartree
