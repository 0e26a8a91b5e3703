#include <hvstab/stability.hpp>

#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace hvstab;

namespace {

ConditionPolys conditions_for(long L, long R) {
    return condition_polys(symbols(build_ddo(stencil_from_LR(L, R))));
}

}  // namespace

TEST_SUITE_BEGIN("stability");

TEST_CASE("condition polynomials, order-seven family") {
    // (4,3): the second condition reduces to -(1/1458)(13 + x) after five
    // factors of (1 - x) come out — strictly negative on [-1, 1).
    ConditionPolys c43 = conditions_for(4, 3);
    CHECK(c43.mult_S == 5);
    CHECK(c43.P_S == make_rational(-1, 1458) * poly_from_longs({13, 1}));
    CHECK(c43.mult_H == 0);
    CHECK(c43.P_H == make_rational(1, 9) * (poly_from_longs({1, 1}) * poly_from_longs({7, 1})) +
                         Poly({make_rational(1, 6)}));

    // (5,2): same multiplicity, but the reduced polynomial (1/324)(2 + 5x)
    // changes sign at x = -2/5.
    ConditionPolys c52 = conditions_for(5, 2);
    CHECK(c52.mult_S == 5);
    CHECK(c52.P_S == make_rational(1, 324) * poly_from_longs({2, 5}));

    // (7,0): the trace condition itself fails; its cosine polynomial is
    // (32/3)x^3 + 36x^2 + 16x - 61/6.
    ConditionPolys c70 = conditions_for(7, 0);
    CHECK(c70.mult_H == 0);
    CHECK(c70.P_H == Poly({make_rational(-61, 6), Rational(16), Rational(36),
                           make_rational(32, 3)}));
}

TEST_CASE("classification of the order-seven family") {
    StabilityVerdict v43 = classify(stencil_from_LR(4, 3));
    CHECK(v43.status == StabilityStatus::Stable);
    CHECK(!v43.witness_theta.has_value());

    StabilityVerdict v52 = classify(stencil_from_LR(5, 2));
    CHECK(v52.status == StabilityStatus::UnstableTracePositive);
    REQUIRE(v52.witness_theta.has_value());
    Rational w52 = *v52.witness_theta;
    CHECK(w52 > make_rational(-2, 5));
    CHECK(w52 < 1);
    CHECK(v52.conditions.P_S.eval(w52) > 0);

    StabilityVerdict v70 = classify(stencil_from_LR(7, 0));
    CHECK(v70.status == StabilityStatus::UnstableTraceViolated);
    REQUIRE(v70.witness_theta.has_value());
    Rational w70 = *v70.witness_theta;
    CHECK(w70 >= -1);
    CHECK(w70 < make_rational(46, 100));
    CHECK(v70.conditions.P_H.eval(w70) < 0);
}

TEST_CASE("classification table through order eight") {
    using S = StabilityStatus;
    // Verdicts for 0 <= R < L, R ascending within each L.
    const std::vector<std::vector<S>> expected = {
        {S::Stable},
        {S::Stable, S::Stable},
        {S::Stable, S::Stable, S::Stable},
        {S::UnstableTraceViolated, S::UnstableTracePositive, S::Stable, S::Stable},
        {S::UnstableTraceViolated, S::UnstableTraceViolated, S::UnstableTracePositive,
         S::Stable, S::Stable},
        {S::UnstableTraceViolated, S::UnstableTraceViolated, S::UnstableTraceViolated,
         S::UnstableTracePositive, S::Stable, S::Stable},
        {S::UnstableTraceViolated, S::UnstableTraceViolated, S::UnstableTraceViolated,
         S::UnstableTraceViolated, S::UnstableTracePositive, S::Stable, S::Stable},
        {S::UnstableTraceViolated, S::UnstableTraceViolated, S::UnstableTraceViolated,
         S::UnstableTraceViolated, S::UnstableTraceViolated, S::UnstableTracePositive,
         S::Stable, S::Stable},
    };

    auto table = stability_table(8);
    std::size_t idx = 0;
    for (long L = 1; L <= 8; ++L) {
        for (long R = 0; R < L; ++R, ++idx) {
            REQUIRE(idx < table.size());
            CHECK(table[idx].L == L);
            CHECK(table[idx].R == R);
            CHECK(table[idx].verdict.status == expected[L - 1][R]);
        }
    }
    CHECK(idx == table.size());
}

TEST_CASE("parallel table equals serial table") {
    auto par = stability_table(7, true);
    auto ser = stability_table(7, false);
    REQUIRE(par.size() == ser.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
        CHECK(par[i].L == ser[i].L);
        CHECK(par[i].R == ser[i].R);
        CHECK(par[i].verdict.status == ser[i].verdict.status);
        CHECK(par[i].verdict.witness_theta == ser[i].verdict.witness_theta);
    }
}

TEST_CASE("coefficient bound check") {
    TrigPoly ok;
    ok.add_cos(0, Rational(1));
    ok.add_cos(1, Rational(1));
    CHECK(coefficient_bound_check(ok).passes);

    TrigPoly bad;
    bad.add_cos(0, Rational(1));
    bad.add_cos(1, Rational(3));
    auto rep = coefficient_bound_check(bad);
    CHECK(!rep.passes);
    CHECK(rep.failing_k == 1);

    // The trace symbol of the widest fully one-sided sixth-order stencil has
    // a harmonic exceeding twice its mean, certifying a sign change.
    auto [hre, him] = split_complex(closed_beta(6, 0, 6, 0));
    CHECK(!coefficient_bound_check(hre).passes);

    TrigPoly with_sin;
    with_sin.add_sin(1, Rational(1));
    CHECK_THROWS_AS(coefficient_bound_check(with_sin), std::domain_error);
}

TEST_CASE("imbalance barrier") {
    BarrierBound b0 = barrier_bound(0);
    CHECK(b0.linear == 7);
    CHECK(b0.max_admissible_gap == 6);
    CHECK(b0.admits(6));
    CHECK(!b0.admits(7));

    // At R = 9 both branches allow the same largest gap.
    CHECK(barrier_bound(9).max_admissible_gap == 24);

    BarrierBound b100 = barrier_bound(100);
    CHECK(!b100.linear_branch_binding);
    CHECK(b100.admits(154));
    CHECK(b100.admits(155));
    CHECK(!b100.admits(156));
}

TEST_CASE("barrier is necessary for stability") {
    for (long L = 1; L <= 14; ++L) {
        for (long R = 0; R < L; ++R) {
            auto v = classify(stencil_from_LR(L, R));
            if (v.status != StabilityStatus::UnstableTraceViolated) {
                CHECK(barrier_bound(R).admits(L));
            }
            // Moderate imbalance already rules out full stability.
            if (L - R >= 4 && L - R <= 7) {
                CHECK(v.status != StabilityStatus::Stable);
            }
        }
    }
}

TEST_CASE("stability pattern matches the conjectured window") {
    for (long L = 1; L <= 12; ++L) {
        for (long R = 0; R < L; ++R) {
            bool stable = classify(stencil_from_LR(L, R)).status == StabilityStatus::Stable;
            bool window = (L > R && L < R + 3) || (L == 3 && R == 0);
            CHECK(stable == window);
        }
    }
}

TEST_CASE("every condition assembly is pure cosine") {
    for (long L = 0; L <= 12; ++L) {
        for (long R = 0; R <= 12 - L; ++R) {
            if (L + R == 0) continue;
            CHECK_NOTHROW(conditions_for(L, R));
        }
    }
}

TEST_CASE("eigenvalue sweep agrees with the exact verdicts") {
    auto sweep43 = eigen_sweep(symbols(build_ddo(stencil_from_LR(4, 3))), 1000);
    double min43 = 0.0;
    for (const auto& [theta, re] : sweep43) min43 = std::min(min43, re);
    CHECK(min43 >= -1e-9);

    auto sweep52 = eigen_sweep(symbols(build_ddo(stencil_from_LR(5, 2))), 1000);
    double min52 = 0.0;
    for (const auto& [theta, re] : sweep52) min52 = std::min(min52, re);
    CHECK(min52 < -1e-5);

    for (long R = 0; R < 10; ++R) {
        for (long L = R + 1; L <= 10; ++L) {
            auto sym = symbols(build_ddo(stencil_from_LR(L, R)));
            double worst = 0.0;
            for (const auto& [theta, re] : eigen_sweep(sym, 400)) worst = std::min(worst, re);
            bool stable = classify(stencil_from_LR(L, R)).status == StabilityStatus::Stable;
            if (stable) {
                CHECK(worst >= -1e-9);
            } else {
                CHECK(worst < -1e-8);
            }
        }
    }
}

TEST_SUITE_END();
