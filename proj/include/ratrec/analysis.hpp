#pragma once

/**
 * @file analysis.hpp
 * @brief Regime classification and long-run behaviour of solutions.
 *
 * Regimes split on |A/alpha|. With uv the seed product of a pair:
 *  - |A/alpha| > 1: every subsequence tends to 0 unless A - alpha + B uv = 0,
 *    in which case the pair's subsequences are constant.
 *  - A = alpha: everything tends to 0.
 *  - A = -alpha: x_{4n-3} = d rho^{-n}, x_{4n-1} = b rho^n with
 *    rho = -(A + B bd)/A (same in a, c); one of the two blows up.
 *  - |A/alpha| < 1: the four subsequences converge to a period-4 cycle whose
 *    limits are paired by the involution f(x) = (alpha - A)/(B x).
 */

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ratrec/recurrence.hpp"

namespace ratrec {

enum class RegimeKind { ModGreater, EqualPos, EqualNeg, ModLess, DegenerateAlphaZero, DegenerateBZero };

std::string_view to_string(RegimeKind r);
std::optional<RegimeKind> regime_from_string(std::string_view s);

// Throws BothDegenerate when alpha = 0 and A = 0.
RegimeKind regime(const Parameters& params);

struct ZeroConditions {
    bool bd_zero = false;  // A - alpha + B b d == 0
    bool ac_zero = false;  // A - alpha + B a c == 0

    friend bool operator==(const ZeroConditions&, const ZeroConditions&) = default;
};

ZeroConditions zero_conditions(const Parameters& params, const InitialConditions& init);

struct RegimeQuantities {
    Scalar e_bd;    // A / (B b d)
    Scalar e_ac;    // A / (B a c)
    Scalar rho_bd;  // -(A + B b d) / A
    Scalar rho_ac;  // -(A + B a c) / A
};

struct LimitCycle {
    enum class Exactness { ExactFromZeroConditions, NumericEstimate };

    Scalar l3;  // lim x_{4n-3}
    Scalar l2;  // lim x_{4n-2}
    Scalar l1;  // lim x_{4n-1}
    Scalar l0;  // lim x_{4n}
    Exactness exactness = Exactness::NumericEstimate;
};

// B = 0 only: x_{n+4} = ratio * x_n.
struct GeometricRatio {
    Scalar ratio;
};

enum class AsymptoticClass {
    ConvergesToZero,
    ConstantSubsequences,
    ConvergesToPeriod4,
    Unbounded,
    MarginalUnclassified,
    Forbidden,
};

std::string_view to_string(AsymptoticClass c);
std::optional<AsymptoticClass> class_from_string(std::string_view s);

using Witness = std::variant<std::monostate, LimitCycle, RegimeQuantities, GeometricRatio>;

struct Verdict {
    RegimeKind regime = RegimeKind::ModGreater;
    ZeroConditions zero_conditions;
    AsymptoticClass asymptotic_class = AsymptoticClass::ConvergesToZero;
    Witness witness;
    std::vector<std::string> notes;

    bool has_note(std::string_view n) const;
};

struct ClassifyOptions {
    long verification_horizon = 200;  // exact iteration checked for forbidden steps
    double limit_tol = 1e-9;
    long limit_horizon = 10000;
};

// Exact mode only. Throws ForbiddenInitialConditions (with the index) when
// the iteration hits a zero denominator within the verification horizon.
Verdict classify(const Parameters& params, const InitialConditions& init, const ClassifyOptions& opts = {});

// A = -alpha only (WrongRegime otherwise).
RegimeQuantities growth_rates(const Parameters& params, const InitialConditions& init);

// |A/alpha| < 1 only. Exact cycle when both zero-conditions hold, otherwise
// a float iteration until every subsequence moved less than tol on four
// consecutive terms (NoConvergenceWithinHorizon if that never happens).
LimitCycle limit_cycle(const Parameters& params, const InitialConditions& init, double tol = 1e-9,
                       long horizon = 10000);

// |B l1 l3 - (alpha - A)| <= tol and |B l0 l2 - (alpha - A)| <= tol.
// Exact when everything is exact. ZeroLimit if any limit is zero.
bool verify_limit_relation(const LimitCycle& lc, const Parameters& params, double tol);

// f(x) = (alpha - A) / (B x).
Scalar limit_involution(const Parameters& params, const Scalar& x);

// Smallest p <= max_period with |x_{n+p} - x_n| <= tol over the last third
// of a Complete trajectory. Exact trajectories compare exactly.
std::optional<long> detect_period(const Trajectory& traj, long max_period, double tol = 0.0);

// First trajectory index with a zero denominator, over all n, decided from
// the factor structure: S_k = 0 iff (A/alpha)^k = B uv / (A - alpha + B uv)
// for A != alpha, and iff A/(B uv) = -k for A = alpha. Exact mode only.
std::optional<long> analytic_forbidden_index(const Parameters& params, const InitialConditions& init);

// For A = alpha: the good-set condition as printed (A/(Buv) outside
// {1} U 2Z for both pairs) versus the rule derived from the factors
// (A/(Buv) not a negative integer, A != 0).
struct EqualCaseGoodSet {
    bool printed_condition_holds;
    bool factor_rule_holds;
};

EqualCaseGoodSet equal_case_good_set(const Parameters& params, const InitialConditions& init);

// key: value report and JSON (regime, zero_conditions, class, witness, notes).
std::string verdict_report(const Verdict& v);
std::string verdict_to_json(const Verdict& v);
// Inverse of verdict_to_json; numbers come back exact when written as p/q.
Verdict verdict_from_json(std::string_view text);

}  // namespace ratrec
