#include "ratrec/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ratrec {

namespace {

void require_exact(const Parameters& params, const InitialConditions& init, std::string_view what) {
    if (params.mode() != Mode::Exact || init.mode() != Mode::Exact)
        throw Error(ErrorKind::FloatModeUnsupported, std::string(what) + " needs exact inputs");
}

// Smallest k >= 1 with S_k = 0 for one seed pair, or nothing.
std::optional<long> vanishing_factor(const Rational& alpha, const Rational& cap_a, const Rational& cap_b,
                                     const Rational& uv) {
    Rational buv = cap_b * uv;
    if (cap_b.is_zero()) return std::nullopt;  // S_k = A^k, A != 0 here
    if (alpha.is_zero()) {
        // S_k = A^{k-1} (A + B uv)
        if ((cap_a + buv).is_zero()) return 1;
        if (cap_a.is_zero()) return 2;
        return std::nullopt;
    }
    if (cap_a == alpha) {
        // S_k = A^{k-1} (A + k B uv)
        Rational k = -(cap_a / buv);
        if (k.is_integer() && k.sign() > 0 && k.num().fits_slong_p()) return k.num().get_si();
        return std::nullopt;
    }
    Rational lead = cap_a - alpha + buv;
    if (lead.is_zero() || cap_a.is_zero()) return std::nullopt;
    // (A/alpha)^k = t; reduced powers stay reduced, so k is bounded by the
    // bit size of t.
    Rational t = buv / lead;
    Rational lambda = cap_a / alpha;
    Rational power = lambda;
    const long bound = static_cast<long>(t.bit_size()) + 2;
    for (long k = 1; k <= bound; ++k) {
        if (power == t) return k;
        if (power.bit_size() > t.bit_size() + 1 && lambda.abs() != Rational(1)) break;
        power *= lambda;
    }
    return std::nullopt;
}

Scalar zero_like(const Scalar& s) { return s.is_exact() ? Scalar(Rational(0)) : Scalar(0.0); }

}  // namespace

std::string_view to_string(RegimeKind r) {
    switch (r) {
    case RegimeKind::ModGreater: return "ModGreater";
    case RegimeKind::EqualPos: return "EqualPos";
    case RegimeKind::EqualNeg: return "EqualNeg";
    case RegimeKind::ModLess: return "ModLess";
    case RegimeKind::DegenerateAlphaZero: return "DegenerateAlphaZero";
    case RegimeKind::DegenerateBZero: return "DegenerateBZero";
    }
    return "ModGreater";
}

std::optional<RegimeKind> regime_from_string(std::string_view s) {
    for (auto r : {RegimeKind::ModGreater, RegimeKind::EqualPos, RegimeKind::EqualNeg, RegimeKind::ModLess,
                   RegimeKind::DegenerateAlphaZero, RegimeKind::DegenerateBZero})
        if (to_string(r) == s) return r;
    return std::nullopt;
}

std::string_view to_string(AsymptoticClass c) {
    switch (c) {
    case AsymptoticClass::ConvergesToZero: return "ConvergesToZero";
    case AsymptoticClass::ConstantSubsequences: return "ConstantSubsequences";
    case AsymptoticClass::ConvergesToPeriod4: return "ConvergesToPeriod4";
    case AsymptoticClass::Unbounded: return "Unbounded";
    case AsymptoticClass::MarginalUnclassified: return "MarginalUnclassified";
    case AsymptoticClass::Forbidden: return "Forbidden";
    }
    return "ConvergesToZero";
}

std::optional<AsymptoticClass> class_from_string(std::string_view s) {
    for (auto c : {AsymptoticClass::ConvergesToZero, AsymptoticClass::ConstantSubsequences,
                   AsymptoticClass::ConvergesToPeriod4, AsymptoticClass::Unbounded,
                   AsymptoticClass::MarginalUnclassified, AsymptoticClass::Forbidden})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

bool Verdict::has_note(std::string_view n) const {
    return std::find(notes.begin(), notes.end(), n) != notes.end();
}

RegimeKind regime(const Parameters& params) {
    const Scalar& alpha = params.alpha();
    const Scalar& cap_a = params.cap_a();
    if (alpha.is_zero()) {
        if (cap_a.is_zero()) throw Error(ErrorKind::BothDegenerate, "alpha = 0 and A = 0");
        return RegimeKind::DegenerateAlphaZero;
    }
    if (params.cap_b().is_zero()) return RegimeKind::DegenerateBZero;
    if (cap_a == alpha) return RegimeKind::EqualPos;
    if (cap_a == -alpha) return RegimeKind::EqualNeg;
    return alpha.abs() < cap_a.abs() ? RegimeKind::ModGreater : RegimeKind::ModLess;
}

ZeroConditions zero_conditions(const Parameters& params, const InitialConditions& init) {
    require_exact(params, init, "zero-condition tests");
    Scalar base = params.cap_a() - params.alpha();
    const Scalar& cap_b = params.cap_b();
    return {(base + cap_b * init.b() * init.d()).is_zero(), (base + cap_b * init.a() * init.c()).is_zero()};
}

RegimeQuantities growth_rates(const Parameters& params, const InitialConditions& init) {
    if (regime(params) != RegimeKind::EqualNeg)
        throw Error(ErrorKind::WrongRegime, "growth rates are defined for A = -alpha");
    const Scalar& cap_a = params.cap_a();
    const Scalar& cap_b = params.cap_b();
    Scalar bd = init.b() * init.d();
    Scalar ac = init.a() * init.c();
    return {cap_a / (cap_b * bd), cap_a / (cap_b * ac), -(cap_a + cap_b * bd) / cap_a,
            -(cap_a + cap_b * ac) / cap_a};
}

Scalar limit_involution(const Parameters& params, const Scalar& x) {
    return (params.alpha() - params.cap_a()) / (params.cap_b() * x);
}

LimitCycle limit_cycle(const Parameters& params, const InitialConditions& init, double tol, long horizon) {
    if (regime(params) != RegimeKind::ModLess)
        throw Error(ErrorKind::WrongRegime, "limit cycles are defined for |A/alpha| < 1");

    if (params.mode() == Mode::Exact && init.mode() == Mode::Exact) {
        ZeroConditions z = zero_conditions(params, init);
        if (z.bd_zero && z.ac_zero) {
            Scalar gap = params.alpha() - params.cap_a();
            const Scalar& cap_b = params.cap_b();
            return {gap / (cap_b * init.b()), gap / (cap_b * init.a()), gap / (cap_b * init.d()),
                    gap / (cap_b * init.c()), LimitCycle::Exactness::ExactFromZeroConditions};
        }
    }

    Trajectory traj = simulate(params.to_mode(Mode::Float), init.to_mode(Mode::Float), horizon);
    std::array<int, 4> settled{};
    for (long m = 1; m <= traj.last_index(); ++m) {
        if (m - 4 < Trajectory::start_index) continue;
        double delta = std::fabs(traj.at(m).to_double() - traj.at(m - 4).to_double());
        int& run = settled[static_cast<std::size_t>((m + 3) % 4)];
        run = (delta < tol) ? run + 1 : 0;
        if (std::all_of(settled.begin(), settled.end(), [](int r) { return r >= 4; })) {
            // m is the latest index; step back to the latest member of each class.
            auto latest = [&](long residue_offset) {
                long idx = m;
                while ((idx - residue_offset) % 4 != 0) --idx;
                return traj.at(idx);
            };
            return {latest(-3), latest(-2), latest(-1), latest(0), LimitCycle::Exactness::NumericEstimate};
        }
    }
    throw Error(ErrorKind::NoConvergenceWithinHorizon,
                "subsequences did not settle within " + std::to_string(horizon) + " steps (" +
                    traj.status.str() + ")");
}

bool verify_limit_relation(const LimitCycle& lc, const Parameters& params, double tol) {
    for (const Scalar* l : {&lc.l3, &lc.l2, &lc.l1, &lc.l0})
        if (l->is_zero()) throw Error(ErrorKind::ZeroLimit, "the limit relation is vacuous for a zero limit");

    const bool exact = params.mode() == Mode::Exact && lc.l3.is_exact() && lc.l2.is_exact() &&
                       lc.l1.is_exact() && lc.l0.is_exact();
    if (exact) {
        Rational gap = params.alpha().rational() - params.cap_a().rational();
        const Rational& cap_b = params.cap_b().rational();
        Rational bound = Rational::from_double(tol);
        Rational r1 = (cap_b * lc.l1.rational() * lc.l3.rational() - gap).abs();
        Rational r2 = (cap_b * lc.l0.rational() * lc.l2.rational() - gap).abs();
        return r1 <= bound && r2 <= bound;
    }
    double gap = params.alpha().to_double() - params.cap_a().to_double();
    double cap_b = params.cap_b().to_double();
    double r1 = std::fabs(cap_b * lc.l1.to_double() * lc.l3.to_double() - gap);
    double r2 = std::fabs(cap_b * lc.l0.to_double() * lc.l2.to_double() - gap);
    return r1 <= tol && r2 <= tol;
}

std::optional<long> detect_period(const Trajectory& traj, long max_period, double tol) {
    if (!traj.status.is_complete())
        throw Error(ErrorKind::InvalidArgument, "period detection needs a complete trajectory");
    const long len = static_cast<long>(traj.values.size());
    if (max_period < 1 || max_period > traj.last_index() / 3)
        throw Error(ErrorKind::InvalidArgument, "max_period must lie in [1, horizon/3]");

    const long window_start = len - len / 3;
    const bool exact = traj.mode == Mode::Exact;
    const Rational exact_tol = exact ? Rational::from_double(tol) : Rational();

    auto close = [&](const Scalar& x, const Scalar& y) {
        if (exact) return (x.rational() - y.rational()).abs() <= exact_tol;
        double dx = x.to_double(), dy = y.to_double();
        return std::isfinite(dx) && std::isfinite(dy) && std::fabs(dx - dy) <= tol;
    };

    for (long p = 1; p <= max_period; ++p) {
        bool periodic = true;
        for (long i = window_start; i < len && periodic; ++i)
            periodic = close(traj.values[static_cast<std::size_t>(i)], traj.values[static_cast<std::size_t>(i - p)]);
        if (periodic) return p;
    }
    return std::nullopt;
}

std::optional<long> analytic_forbidden_index(const Parameters& params, const InitialConditions& init) {
    require_exact(params, init, "analytic forbidden-set detection");
    const Rational& alpha = params.alpha().rational();
    const Rational& cap_a = params.cap_a().rational();
    const Rational& cap_b = params.cap_b().rational();
    if (cap_a.is_zero() && cap_b.is_zero())
        throw Error(ErrorKind::DegenerateUndefined, "A = B = 0 makes every denominator vanish");

    std::optional<long> best;
    auto consider = [&](std::optional<long> k, bool odd_pair) {
        if (!k) return;
        long idx = odd_pair ? 2 * *k - 1 : 2 * *k;
        if (!best || idx < *best) best = idx;
    };
    consider(vanishing_factor(alpha, cap_a, cap_b, init.b().rational() * init.d().rational()), true);
    consider(vanishing_factor(alpha, cap_a, cap_b, init.a().rational() * init.c().rational()), false);
    return best;
}

EqualCaseGoodSet equal_case_good_set(const Parameters& params, const InitialConditions& init) {
    require_exact(params, init, "good-set checks");
    if (regime(params) != RegimeKind::EqualPos)
        throw Error(ErrorKind::WrongRegime, "the good-set condition concerns A = alpha");
    const Rational& cap_a = params.cap_a().rational();
    const Rational& cap_b = params.cap_b().rational();

    auto printed_ok = [](const Rational& e) {
        if (e == Rational(1)) return false;
        return !(e.is_integer() && e.num() % 2 == 0);
    };
    auto factor_ok = [](const Rational& e) { return !(e.is_integer() && e.sign() < 0); };

    Rational e_bd = cap_a / (cap_b * init.b().rational() * init.d().rational());
    Rational e_ac = cap_a / (cap_b * init.a().rational() * init.c().rational());
    return {printed_ok(e_bd) && printed_ok(e_ac), factor_ok(e_bd) && factor_ok(e_ac)};
}

Verdict classify(const Parameters& params, const InitialConditions& init, const ClassifyOptions& opts) {
    require_exact(params, init, "classification");
    Verdict v;
    v.regime = regime(params);
    if (params.cap_a().is_zero() && params.cap_b().is_zero())
        throw Error(ErrorKind::DegenerateUndefined, "A = B = 0 makes every denominator vanish");

    if (auto k = first_forbidden_index(params, init, opts.verification_horizon))
        throw Error(ErrorKind::ForbiddenInitialConditions,
                    "zero denominator at step " + std::to_string(*k), *k);

    v.zero_conditions = zero_conditions(params, init);
    if (auto k = analytic_forbidden_index(params, init)) {
        v.asymptotic_class = AsymptoticClass::Forbidden;
        v.notes.push_back("forbidden_at=" + std::to_string(*k));
        return v;
    }

    const Scalar& a = init.a();
    const Scalar& b = init.b();
    const Scalar& c = init.c();
    const Scalar& d = init.d();
    const ZeroConditions& z = v.zero_conditions;

    switch (v.regime) {
    case RegimeKind::DegenerateAlphaZero:
        v.asymptotic_class = AsymptoticClass::ConvergesToZero;
        v.notes.push_back("degenerate_alpha_zero");
        break;

    case RegimeKind::DegenerateBZero: {
        Scalar ratio = params.alpha() / params.cap_a();
        v.witness = GeometricRatio{ratio};
        v.notes.push_back("degenerate_b_zero");
        Scalar mag = ratio.abs();
        if (mag < Scalar(1)) {
            v.asymptotic_class = AsymptoticClass::ConvergesToZero;
        } else if (ratio == Scalar(1)) {
            v.asymptotic_class = AsymptoticClass::ConstantSubsequences;
            v.witness = LimitCycle{d, c, b, a, LimitCycle::Exactness::ExactFromZeroConditions};
        } else if (ratio == Scalar(-1)) {
            v.asymptotic_class = AsymptoticClass::MarginalUnclassified;
            v.notes.push_back("period8_sign_alternation");
        } else {
            v.asymptotic_class = AsymptoticClass::Unbounded;
        }
        break;
    }

    case RegimeKind::ModGreater:
        if (!z.bd_zero && !z.ac_zero) {
            v.asymptotic_class = AsymptoticClass::ConvergesToZero;
        } else if (z.bd_zero && z.ac_zero) {
            v.asymptotic_class = AsymptoticClass::ConstantSubsequences;
            v.witness = LimitCycle{d, c, b, a, LimitCycle::Exactness::ExactFromZeroConditions};
            if (a == b && b == c && c == d) v.notes.push_back("converges_to_constant");
            if (d == b && c == a && !(b == c)) v.notes.push_back("two_prime_periodic");
        } else {
            // One pair is frozen, the other decays to zero.
            Scalar zero = zero_like(a);
            v.asymptotic_class = AsymptoticClass::ConvergesToPeriod4;
            v.witness = LimitCycle{z.bd_zero ? d : zero, z.ac_zero ? c : zero, z.bd_zero ? b : zero,
                                   z.ac_zero ? a : zero, LimitCycle::Exactness::ExactFromZeroConditions};
            v.notes.push_back("mixed_zero_conditions");
            v.notes.push_back(z.bd_zero ? "pair_bd_constant" : "pair_bd_to_zero");
            v.notes.push_back(z.ac_zero ? "pair_ac_constant" : "pair_ac_to_zero");
        }
        break;

    case RegimeKind::EqualPos: {
        v.asymptotic_class = AsymptoticClass::ConvergesToZero;
        EqualCaseGoodSet gs = equal_case_good_set(params, init);
        if (gs.printed_condition_holds != gs.factor_rule_holds) v.notes.push_back("good_set_condition_mismatch");
        break;
    }

    case RegimeKind::EqualNeg: {
        RegimeQuantities q = growth_rates(params, init);
        bool marginal_bd = q.rho_bd.abs() == Scalar(1);
        bool marginal_ac = q.rho_ac.abs() == Scalar(1);
        if (marginal_bd) v.notes.push_back("marginal_ratio_bd");
        if (marginal_ac) v.notes.push_back("marginal_ratio_ac");
        v.asymptotic_class = (marginal_bd && marginal_ac) ? AsymptoticClass::MarginalUnclassified
                                                          : AsymptoticClass::Unbounded;
        v.witness = q;
        break;
    }

    case RegimeKind::ModLess:
        v.asymptotic_class = AsymptoticClass::ConvergesToPeriod4;
        if (z.bd_zero != z.ac_zero) v.notes.push_back("mixed_zero_conditions");
        try {
            v.witness = limit_cycle(params, init, opts.limit_tol, opts.limit_horizon);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoConvergenceWithinHorizon) throw;
            v.notes.push_back("limit_not_reached");
        }
        break;
    }
    return v;
}

}  // namespace ratrec
