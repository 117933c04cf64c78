#pragma once

/**
 * @file recurrence.hpp
 * @brief Direct iteration of x_{n+1} = alpha x_{n-3} / (A + B x_{n-1} x_{n-3}).
 *
 * Trajectories are indexed from -3 (the seed d) through 0 (the seed a), so
 * x_{4n-3}, x_{4n-2}, x_{4n-1}, x_{4n} line up with the closed-form residue
 * classes. A zero denominator is detected exactly at each step; this engine is
 * the reference every closed form is checked against.
 */

#include <optional>
#include <string>
#include <vector>

#include "ratrec/numerics.hpp"

namespace ratrec {

class Parameters {
public:
    // Throws ModeMismatch unless all three share one mode.
    Parameters(Scalar alpha, Scalar cap_a, Scalar cap_b);

    const Scalar& alpha() const { return alpha_; }
    const Scalar& cap_a() const { return cap_a_; }
    const Scalar& cap_b() const { return cap_b_; }
    Mode mode() const { return alpha_.mode(); }

    bool degenerate_alpha() const { return alpha_.is_zero(); }
    bool degenerate_b() const { return cap_b_.is_zero(); }

    Parameters to_mode(Mode m) const;

private:
    Scalar alpha_;
    Scalar cap_a_;
    Scalar cap_b_;
};

// Seeds in index order: d = x_{-3}, c = x_{-2}, b = x_{-1}, a = x_0.
// All four must be nonzero and share one mode.
class InitialConditions {
public:
    InitialConditions(Scalar d, Scalar c, Scalar b, Scalar a);

    const Scalar& d() const { return d_; }
    const Scalar& c() const { return c_; }
    const Scalar& b() const { return b_; }
    const Scalar& a() const { return a_; }
    Mode mode() const { return a_.mode(); }

    InitialConditions to_mode(Mode m) const;

private:
    Scalar d_;
    Scalar c_;
    Scalar b_;
    Scalar a_;
};

struct TrajectoryStatus {
    enum class Kind { Complete, ForbiddenAt, Overflowed, ExactBlowupAt };

    Kind kind = Kind::Complete;
    long index = 0;  // meaningless for Complete

    static TrajectoryStatus complete() { return {}; }
    static TrajectoryStatus forbidden_at(long k) { return {Kind::ForbiddenAt, k}; }
    static TrajectoryStatus overflowed(long k) { return {Kind::Overflowed, k}; }
    static TrajectoryStatus exact_blowup_at(long k) { return {Kind::ExactBlowupAt, k}; }

    bool is_complete() const { return kind == Kind::Complete; }
    // "Complete", "ForbiddenAt 7", ...
    std::string str() const;

    friend bool operator==(const TrajectoryStatus&, const TrajectoryStatus&) = default;
};

struct Trajectory {
    static constexpr long start_index = -3;

    Mode mode = Mode::Exact;
    std::vector<Scalar> values;  // values[i] is x_{i-3}
    TrajectoryStatus status;

    long last_index() const { return static_cast<long>(values.size()) + start_index - 1; }
    // x_n for -3 <= n <= last_index(); throws InvalidArgument outside.
    const Scalar& at(long n) const;
};

Scalar denominator(const Parameters& params, const Scalar& x_prev1, const Scalar& x_prev3);

// alpha x_prev3 / (A + B x_prev1 x_prev3). Throws DivisionByZero when the
// denominator is exactly zero (exact) or zero/non-finite (float).
Scalar step(const Parameters& params, const Scalar& x_prev1, const Scalar& x_prev3);

// Iterates up to x_horizon. Stops early on a zero denominator (ForbiddenAt),
// a non-finite float value (Overflowed, the saturated value is kept), or an
// exact value larger than bit_limit() (ExactBlowupAt, the value is dropped).
// Throws DegenerateUndefined when A = B = 0 and InvalidArgument when
// horizon < 1 or modes disagree.
Trajectory simulate(const Parameters& params, const InitialConditions& init, long horizon);

// Smallest k <= horizon whose step has a zero denominator. Exact mode only.
std::optional<long> first_forbidden_index(const Parameters& params, const InitialConditions& init,
                                          long horizon);

}  // namespace ratrec
