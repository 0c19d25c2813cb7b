#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ghartree/eqparams.hpp"

using namespace ghartree;

TEST_CASE("scaling index matches the worked cases") {
    CHECK(scaling_index({3, 3.0, 1.0}) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(scaling_index({3, 2.0, 2.0}) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(scaling_index({3, 7.0, 1.0}) == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
    CHECK(scaling_index({3, 5.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(scaling_index({4, 3.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("scaling index rejects invalid parameters") {
    CHECK_THROWS_AS(scaling_index({3, 3.0, 0.0}), InvalidParams);
    CHECK_THROWS_AS(scaling_index({3, 3.0, 3.0}), InvalidParams);
    CHECK_THROWS_AS(scaling_index({3, 1.5, 1.0}), InvalidParams);
    CHECK_THROWS_AS(scaling_index({0, 3.0, 1.0}), InvalidParams);
}

TEST_CASE("classification lands on the enum boundaries") {
    const CriticalityReport ec = classify({3, 5.0, 1.0});
    CHECK(ec.cls == Criticality::EnergyCritical);
    CHECK(ec.s_c == doctest::Approx(1.0));
    CHECK(ec.k == doctest::Approx(4.0));

    const CriticalityReport ic = classify({3, 3.0, 1.0});
    CHECK(ic.cls == Criticality::Intercritical);
    CHECK(ic.k == doctest::Approx(1.0)); // s_c (p-1) = 1/2 * 2
    CHECK(ic.alpha == doctest::Approx(0.5));
    CHECK(ic.k == doctest::Approx(2.0 * ic.alpha));

    CHECK(classify({4, 3.0, 2.0}).cls == Criticality::EnergyCritical);
    CHECK(classify({3, 2.0, 2.0}).cls == Criticality::MassCritical);
    CHECK(classify({3, 7.0, 1.0}).cls == Criticality::EnergySupercritical);
}

TEST_CASE("classification side conditions") {
    // p = 3 (odd): needs s_c < p - 1 = 2
    CHECK(classify({3, 3.0, 1.0}).lwp_regularity_ok);
    // even p: no extra condition
    CHECK(classify({3, 2.0, 2.0}).lwp_regularity_ok);
    // b + s_c < N diagnostic
    CHECK(classify({3, 3.0, 1.0}).a1_exponent_ok); // 1 + 0.5 < 3
}

TEST_CASE("canonical admissible pair") {
    const AdmissiblePair p33 = canonical_pair({3, 3.0, 1.0});
    CHECK(p33.q == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(p33.r == doctest::Approx(18.0 / 7.0).epsilon(1e-14));
    CHECK(is_admissible(p33, 3, 1e-14));
    CHECK(1.0 / p33.q + 1.0 / p33.q_dual == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(1.0 / p33.r + 1.0 / p33.r_dual == doctest::Approx(1.0).epsilon(1e-14));

    const AdmissiblePair p35 = canonical_pair({3, 5.0, 1.0});
    CHECK(p35.q == doctest::Approx(10.0));
    CHECK(p35.r == doctest::Approx(30.0 / 13.0));
    CHECK(is_admissible(p35, 3, 1e-14));
}

TEST_CASE("canonical pair is admissible across a parameter sweep") {
    for (int N = 1; N <= 4; ++N) {
        for (double p = 2.0; p <= 8.0; p += 0.37) {
            for (double b = 0.25; b < N; b += 0.5) {
                const EquationParams params{N, p, b};
                if (N * p <= 2.0)
                    continue;
                CHECK(is_admissible(canonical_pair(params), N, 1e-13));
                // substituting s_c back: (N-b+2)/(2(p-1)) = N/2 - s_c
                const double s_c = scaling_index(params);
                CHECK((N - b + 2.0) / (2.0 * (p - 1.0)) ==
                      doctest::Approx(N / 2.0 - s_c).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("HLS partner exponent") {
    const EquationParams p31{3, 3.0, 1.0};
    CHECK(hls_partner_exponent(6.0 / 5.0, p31) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(hls_partner_exponent(4.0 / 3.0, {4, 3.0, 2.0}) == doctest::Approx(4.0).epsilon(1e-13));
    // r2 = 3/2 with b/N = 1/3 solves to 1/r1 = 0: out of range
    CHECK_THROWS_AS(hls_partner_exponent(1.5, p31), DomainError);
    CHECK_THROWS_AS(hls_partner_exponent(1.0, p31), DomainError);
}
