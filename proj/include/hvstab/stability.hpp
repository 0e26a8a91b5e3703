#pragma once

#include <hvstab/ddo.hpp>

#include <optional>
#include <vector>

namespace hvstab {

// Both linear-stability conditions as polynomials in x = cos theta: the trace
// condition P_H (= ReH) and the second condition P_S (= ReH * Re(conj(H) F) +
// (ImF)^2), each with its (1 - x) factors divided out and the multiplicity
// recorded. Signs on [-1, 1) are unchanged by the extraction since 1 - x > 0
// there.
struct ConditionPolys {
    Poly P_H;
    Poly P_S;
    int mult_H = 0;
    int mult_S = 0;
};

// Assembles the two condition polynomials from the scheme symbols. Both
// assembled trig expressions must be pure cosine series (their sin parts
// cancel by symmetry); a nonzero sin part signals an internal bug and raises
// std::logic_error. The second condition always vanishes at theta = 0, so
// mult_S >= 1 is enforced the same way.
ConditionPolys condition_polys(const SchemeSymbols& sym);

enum class StabilityStatus { Stable, UnstableTracePositive, UnstableTraceViolated };

// Exact classification of the semi-discretization. witness_theta is a cos
// theta value in [-1, 1) where the decisive strict inequality fails (absent
// for Stable); witness_kind distinguishes an outright sign violation from a
// tangential zero, which already breaks strictness.
struct StabilityVerdict {
    StabilityStatus status = StabilityStatus::Stable;
    std::optional<Rational> witness_theta;
    WitnessKind witness_kind = WitnessKind::SignChange;
    ConditionPolys conditions;
};

// Three-way verdict: the scheme is stable iff P_H is strictly positive and
// P_S strictly negative on [-1, 1), checked exactly.
StabilityVerdict classify(const Stencil& s);

// One verdict per stencil with 0 <= R < L <= max_L, row-major in L then R.
// The parallel path distributes cells over OpenMP threads; the serial path
// is the reference implementation.
struct TableEntry {
    long L = 0, R = 0;
    StabilityVerdict verdict;
};

std::vector<TableEntry> stability_table(long max_L, bool parallel = true);

// Necessary-condition scan: a cosine polynomial that is non-negative on
// [0, pi] must have |c_k| < 2 c_0 for every k >= 1; the first failing k
// certifies mixed sign. Requires an empty sin part (std::domain_error).
struct CoefficientBoundReport {
    bool passes = true;
    std::optional<long> failing_k;
};

CoefficientBoundReport coefficient_bound_check(const TrigPoly& c);

// The stability barrier on the stencil imbalance: L - R must stay below
// min(2R + 7, 9 + sqrt(21R + 49)). admits() decides that comparison in pure
// integer arithmetic; max_admissible_gap is the largest L - R it accepts.
struct BarrierBound {
    long R = 0;
    long linear = 0;                    // 2R + 7
    long max_admissible_gap = 0;
    bool linear_branch_binding = true;  // min attained by the linear branch

    [[nodiscard]] bool admits(long L) const;
};

BarrierBound barrier_bound(long R);

// Floating-point cross-check: solves the symbol quadratic
// lambda^2 - H lambda - F = 0 on a uniform theta grid over (0, 2 pi) and
// reports min Re(lambda) per sample; negative values flag instability.
std::vector<std::pair<double, double>> eigen_sweep(const SchemeSymbols& sym,
                                                   long n_samples);

}  // namespace hvstab
