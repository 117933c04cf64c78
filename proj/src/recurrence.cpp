#include "ratrec/recurrence.hpp"

#include <cmath>

namespace ratrec {

Parameters::Parameters(Scalar alpha, Scalar cap_a, Scalar cap_b)
    : alpha_(std::move(alpha)), cap_a_(std::move(cap_a)), cap_b_(std::move(cap_b)) {
    require_same_mode(alpha_, cap_a_);
    require_same_mode(alpha_, cap_b_);
}

Parameters Parameters::to_mode(Mode m) const {
    return Parameters(alpha_.to_mode(m), cap_a_.to_mode(m), cap_b_.to_mode(m));
}

InitialConditions::InitialConditions(Scalar d, Scalar c, Scalar b, Scalar a)
    : d_(std::move(d)), c_(std::move(c)), b_(std::move(b)), a_(std::move(a)) {
    require_same_mode(a_, b_);
    require_same_mode(a_, c_);
    require_same_mode(a_, d_);
    if (a_.is_zero() || b_.is_zero() || c_.is_zero() || d_.is_zero())
        throw Error(ErrorKind::InvalidArgument, "initial conditions must be nonzero");
}

InitialConditions InitialConditions::to_mode(Mode m) const {
    return InitialConditions(d_.to_mode(m), c_.to_mode(m), b_.to_mode(m), a_.to_mode(m));
}

std::string TrajectoryStatus::str() const {
    switch (kind) {
    case Kind::Complete: return "Complete";
    case Kind::ForbiddenAt: return "ForbiddenAt " + std::to_string(index);
    case Kind::Overflowed: return "Overflowed " + std::to_string(index);
    case Kind::ExactBlowupAt: return "ExactBlowupAt " + std::to_string(index);
    }
    return "Complete";
}

const Scalar& Trajectory::at(long n) const {
    if (n < start_index || n > last_index())
        throw Error(ErrorKind::InvalidArgument, "index " + std::to_string(n) + " outside trajectory");
    return values[static_cast<std::size_t>(n - start_index)];
}

Scalar denominator(const Parameters& params, const Scalar& x_prev1, const Scalar& x_prev3) {
    require_same_mode(params.alpha(), x_prev1);
    require_same_mode(params.alpha(), x_prev3);
    return params.cap_a() + params.cap_b() * x_prev1 * x_prev3;
}

Scalar step(const Parameters& params, const Scalar& x_prev1, const Scalar& x_prev3) {
    Scalar den = denominator(params, x_prev1, x_prev3);
    if (den.is_zero() || !den.is_finite())
        throw Error(ErrorKind::DivisionByZero, "A + B x_{n-1} x_{n-3} vanishes");
    return params.alpha() * x_prev3 / den;
}

Trajectory simulate(const Parameters& params, const InitialConditions& init, long horizon) {
    if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
    if (params.mode() != init.mode())
        throw Error(ErrorKind::ModeMismatch, "parameters and initial conditions use different modes");
    if (params.cap_a().is_zero() && params.cap_b().is_zero())
        throw Error(ErrorKind::DegenerateUndefined, "A = B = 0 makes every denominator vanish");

    Trajectory traj;
    traj.mode = params.mode();
    traj.values.reserve(static_cast<std::size_t>(horizon) + 4);
    traj.values = {init.d(), init.c(), init.b(), init.a()};

    for (long k = 1; k <= horizon; ++k) {
        const Scalar& x_prev1 = traj.at(k - 2);
        const Scalar& x_prev3 = traj.at(k - 4);
        Scalar den = denominator(params, x_prev1, x_prev3);
        if (den.is_zero() || !den.is_finite()) {
            traj.status = TrajectoryStatus::forbidden_at(k);
            return traj;
        }
        Scalar next = params.alpha() * x_prev3 / den;
        if (next.is_exact()) {
            if (next.rational().bit_size() > bit_limit()) {
                traj.status = TrajectoryStatus::exact_blowup_at(k);
                return traj;
            }
        } else if (!next.is_finite()) {
            double v = next.to_double();
            // 0 * inf style NaNs saturate with the sign of the numerator.
            if (std::isnan(v)) {
                double s = (params.alpha() * x_prev3).to_double();
                v = std::signbit(s) == std::signbit(den.to_double()) ? HUGE_VAL : -HUGE_VAL;
            }
            traj.values.emplace_back(v);
            traj.status = TrajectoryStatus::overflowed(k);
            return traj;
        }
        traj.values.push_back(std::move(next));
    }
    return traj;
}

std::optional<long> first_forbidden_index(const Parameters& params, const InitialConditions& init,
                                          long horizon) {
    if (params.mode() != Mode::Exact || init.mode() != Mode::Exact)
        throw Error(ErrorKind::FloatModeUnsupported, "forbidden-set detection needs exact inputs");
    Trajectory traj = simulate(params, init, horizon);
    if (traj.status.kind == TrajectoryStatus::Kind::ForbiddenAt) return traj.status.index;
    if (traj.status.kind == TrajectoryStatus::Kind::ExactBlowupAt)
        throw Error(ErrorKind::ExactBlowup, "exact iteration exceeded the bit limit", traj.status.index);
    return std::nullopt;
}

}  // namespace ratrec
