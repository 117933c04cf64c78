// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ratrec/analysis.hpp"
#include "ratrec/cli.hpp"
#include "ratrec/closedform.hpp"
#include "ratrec/sampling.hpp"
#include "ratrec/scenario_io.hpp"

using namespace ratrec;

namespace {

Rational q(long p, long r) { return Rational(mpz_class(p), mpz_class(r)); }

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome ok(std::string d) { return {true, std::move(d)}; }
Outcome fail(std::string d) { return {false, std::move(d)}; }

constexpr std::uint64_t kSeed = 0x5eed2026;
const RegimeKind kRegimes[] = {RegimeKind::ModGreater, RegimeKind::EqualPos, RegimeKind::EqualNeg,
                               RegimeKind::ModLess};

Outcome closed_form_matches_iteration() {
    long scenarios = 0, compared = 0;
    for (RegimeKind r : kRegimes) {
        for (int i = 0; i < 100; ++i) {
            Rng rng(trial_seed(kSeed, static_cast<std::uint64_t>(i) * 4 + static_cast<std::uint64_t>(r)));
            SampledScenario s = draw_scenario(rng, r, 50);
            Trajectory t = simulate(s.params, s.init, 50);
            if (!t.status.is_complete()) return fail("iteration stopped: " + t.status.str());
            for (long m = 1; m <= 50; ++m, ++compared) {
                if (!(closed_form(s.params, s.init, m) == t.at(m))) {
                    std::ostringstream os;
                    os << to_string(r) << " scenario " << i << " differs at m=" << m;
                    return fail(os.str());
                }
            }
            ++scenarios;
        }
    }
    return ok(std::to_string(scenarios) + " scenarios, " + std::to_string(compared) + " exact comparisons");
}

Outcome example2_two_periodic() {
    Scenario s = paper_example(2);
    Trajectory t = simulate(s.params, s.init, s.horizon);
    if (!t.status.is_complete()) return fail(t.status.str());
    for (long n = -3; n <= t.last_index(); ++n)
        if (!(t.at(n) == Scalar(n % 2 != 0 ? -2 : 2))) return fail("x_" + std::to_string(n) + " = " + t.at(n).str());
    auto p = detect_period(t, 12);
    if (p != 2) return fail("detect_period gave " + (p ? std::to_string(*p) : std::string("none")));
    Verdict v = classify(s.params, s.init);
    if (v.asymptotic_class != AsymptoticClass::ConstantSubsequences)
        return fail(std::string("class ") + std::string(to_string(v.asymptotic_class)));
    if (!v.has_note("two_prime_periodic")) return fail("missing two_prime_periodic note");
    return ok("alternates -2, 2 over n = -3.." + std::to_string(t.last_index()) + ", period 2");
}

Outcome example4_four_periodic() {
    Scenario s = paper_example(4);
    if (!(s.init.a() == Scalar(-q(6, 5)) && s.init.b() == Scalar(q(2, 5)) && s.init.c() == Scalar(-q(3, 10)) &&
          s.init.d() == Scalar(q(9, 10)) && s.params.cap_a() == Scalar(q(16, 25))))
        return fail("unexpected example inputs");
    if (!(zero_conditions(s.params, s.init) == ZeroConditions{true, true})) return fail("zero conditions fail");
    Trajectory t = simulate(s.params, s.init, 400);
    if (!t.status.is_complete()) return fail(t.status.str());
    for (long n = -3; n <= 396; ++n)
        if (!(t.at(n + 4) == t.at(n))) return fail("x_" + std::to_string(n + 4) + " != x_" + std::to_string(n));
    if (detect_period(t, 12) != 4) return fail("detect_period is not 4");
    LimitCycle lc = limit_cycle(s.params, s.init);
    if (lc.exactness != LimitCycle::Exactness::ExactFromZeroConditions) return fail("limit cycle not exact");
    if (!(lc.l3 == Scalar(q(9, 10)) && lc.l2 == Scalar(-q(3, 10)) && lc.l1 == Scalar(q(2, 5)) &&
          lc.l0 == Scalar(-q(6, 5))))
        return fail("cycle " + lc.l3.str() + ", " + lc.l2.str() + ", " + lc.l1.str() + ", " + lc.l0.str());
    if (!verify_limit_relation(lc, s.params, 0.0)) return fail("limit relation fails at tol 0");
    return ok("x_{n+4} = x_n for -3 <= n <= 396, cycle 9/10, -3/10, 2/5, -6/5");
}

Outcome example1_decays() {
    Scenario s = paper_example(1);
    Verdict v = classify(s.params, s.init);
    if (v.asymptotic_class != AsymptoticClass::ConvergesToZero)
        return fail(std::string("class ") + std::string(to_string(v.asymptotic_class)));
    Trajectory t = simulate(s.params.to_mode(Mode::Float), s.init.to_mode(Mode::Float), 5100);
    if (!t.status.is_complete()) return fail(t.status.str());
    for (long n = 1; n <= 5000; ++n) {
        double worst = 0;
        for (long i = n; i <= n + 100; ++i) worst = std::max(worst, std::fabs(t.at(i).to_double()));
        if (worst <= 1e-3) {
            std::ostringstream os;
            os << "max |x_n| over [" << n << ", " << n + 100 << "] = " << worst;
            return ok(os.str());
        }
    }
    return fail("no window of 101 terms below 1e-3 starting at N <= 5000");
}

Outcome example3_grows() {
    Scenario s = paper_example(3);
    Verdict v = classify(s.params, s.init);
    if (v.asymptotic_class != AsymptoticClass::Unbounded)
        return fail(std::string("class ") + std::string(to_string(v.asymptotic_class)));
    Trajectory t = simulate(s.params, s.init, 120);
    if (!t.status.is_complete()) return fail(t.status.str());
    Scalar r_ac(-q(53, 50)), r_bd(-q(21, 25));
    for (long n = 1; n <= 30; ++n) {
        if (!(t.at(4 * n) / int_pow(r_ac, static_cast<unsigned long>(n)) == Scalar(q(1, 10))))
            return fail("x_{4n} rate law fails at n=" + std::to_string(n));
        if (!(t.at(4 * n - 3) * int_pow(r_bd, static_cast<unsigned long>(n)) == Scalar(-q(2, 5))))
            return fail("x_{4n-3} rate law fails at n=" + std::to_string(n));
    }
    Trajectory f = simulate(s.params.to_mode(Mode::Float), s.init.to_mode(Mode::Float), 200);
    double seed_max = 0, worst = 0;
    for (long n = -3; n <= 0; ++n) seed_max = std::max(seed_max, std::fabs(f.at(n).to_double()));
    for (long n = 1; n <= f.last_index(); ++n) worst = std::max(worst, std::fabs(f.at(n).to_double()));
    if (!(worst > 10 * seed_max)) return fail("max |x_n| = " + format_double(worst));
    return ok("rate laws exact for n <= 30; max |x_n| = " + format_double(worst) + " vs seeds " +
              format_double(seed_max));
}

Outcome equal_neg_products() {
    for (int i = 0; i < 50; ++i) {
        Rng rng(trial_seed(kSeed ^ 0x6, static_cast<std::uint64_t>(i)));
        SampledScenario s = draw_scenario(rng, RegimeKind::EqualNeg, 120);
        Trajectory t = simulate(s.params, s.init, 120);
        if (!t.status.is_complete()) return fail(t.status.str());
        Scalar bd = s.init.b() * s.init.d(), ac = s.init.a() * s.init.c();
        for (long n = 1; n <= 30; ++n) {
            if (!(t.at(4 * n - 3) * t.at(4 * n - 1) == bd) || !(t.at(4 * n - 2) * t.at(4 * n) == ac))
                return fail("scenario " + std::to_string(i) + " breaks at n=" + std::to_string(n));
        }
    }
    return ok("50 scenarios, products conserved for n <= 30");
}

Outcome mod_less_limits() {
    int converged = 0, skipped = 0;
    double worst = 0;
    for (std::uint64_t i = 0; converged < 50 && i < 500; ++i) {
        Rng rng(trial_seed(kSeed ^ 0x7, i));
        SampledScenario s = draw_scenario(rng, RegimeKind::ModLess, 200);
        Parameters p = s.params.to_mode(Mode::Float);
        LimitCycle lc;
        try {
            lc = limit_cycle(p, s.init.to_mode(Mode::Float), 1e-9, 10000);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoConvergenceWithinHorizon) throw;
            ++skipped;
            continue;
        }
        double gap = p.alpha().to_double() - p.cap_a().to_double(), b = p.cap_b().to_double();
        double r1 = std::fabs(b * lc.l1.to_double() * lc.l3.to_double() - gap);
        double r2 = std::fabs(b * lc.l0.to_double() * lc.l2.to_double() - gap);
        worst = std::max({worst, r1, r2});
        if (r1 > 1e-6 || r2 > 1e-6 || !verify_limit_relation(lc, p, 1e-6))
            return fail("scenario " + std::to_string(i) + " residual " + format_double(std::max(r1, r2)));
        ++converged;
    }
    if (converged < 50) return fail("only " + std::to_string(converged) + " scenarios converged");
    return ok("50 converged scenarios (" + std::to_string(skipped) + " skipped), worst residual " +
              format_double(worst));
}

Outcome forms_agree() {
    long compared = 0;
    for (int i = 0; i < 50; ++i) {
        Rng rng(trial_seed(kSeed ^ 0x8, static_cast<std::uint64_t>(i)));
        RegimeKind r = (i % 3 == 0) ? RegimeKind::ModGreater : (i % 3 == 1 ? RegimeKind::EqualNeg : RegimeKind::ModLess);
        SampledScenario s = draw_scenario(rng, r, 50);
        SampledScenario e = draw_scenario(rng, RegimeKind::EqualPos, 50);
        for (long m = 1; m <= 50; ++m, compared += 2) {
            if (!(theorem1_term(s.params, s.init, m) == corollary1_term(s.params, s.init, m)))
                return fail("P form differs, scenario " + std::to_string(i) + " m=" + std::to_string(m));
            if (!(theorem1_term(e.params, e.init, m) == corollary2_term(e.params, e.init, m)))
                return fail("Gamma form differs, scenario " + std::to_string(i) + " m=" + std::to_string(m));
        }
    }
    Parameters ones(1, 1, 1);
    int special = 0;
    Rng rng(trial_seed(kSeed ^ 0x9, 0));
    while (special < 50) {
        InitialConditions init(draw_rational(rng), draw_rational(rng), draw_rational(rng), draw_rational(rng));
        if (first_forbidden_index(ones, init, 50)) continue;
        for (long m = 1; m <= 50; ++m, ++compared)
            if (!(special_case_elsayed(init, m) == theorem1_term(ones, init, m)))
                return fail("special case differs at m=" + std::to_string(m));
        ++special;
    }
    return ok(std::to_string(compared) + " exact comparisons across 150 scenarios");
}

// S_k vanishes for the pair with seed product uv when
// uv = -A^k / (B G_k), G_k = sum_{i<k} A^i alpha^{k-1-i}.
Outcome forbidden_detection() {
    // A + B b d = 0 gives a zero denominator at the first step
    for (int i = 0; i < 5; ++i) {
        Rng rng(trial_seed(kSeed ^ 0xa, static_cast<std::uint64_t>(i)));
        Parameters p(draw_rational(rng), draw_rational(rng), draw_rational(rng));
        Rational b = draw_rational(rng);
        Rational d = -p.cap_a().rational() / (p.cap_b().rational() * b);
        InitialConditions init(d, draw_rational(rng), b, draw_rational(rng));
        if (simulate(p, init, 20).status != TrajectoryStatus::forbidden_at(1)) return fail("A + B b d = 0 case");
    }

    int built = 0;
    std::uint64_t attempt = 0;
    while (built < 20 && attempt < 10000) {
        Rng rng(trial_seed(kSeed ^ 0xb, attempt++));
        Rational alpha = draw_rational(rng), cap_a = draw_rational(rng), cap_b = draw_rational(rng);
        long k = rng.uniform(1, 8);
        bool odd_pair = rng.uniform(0, 1) == 0;
        Rational g(0), a_pow(1);
        for (long i = 0; i < k; ++i) {
            g += a_pow * int_pow(alpha, static_cast<unsigned long>(k - 1 - i));
            a_pow *= cap_a;
        }
        if (g.is_zero()) continue;
        Rational uv = -a_pow / (cap_b * g);
        Rational u = draw_rational(rng), x = draw_rational(rng), y = draw_rational(rng);
        InitialConditions init = odd_pair ? InitialConditions(uv / u, x, u, y) : InitialConditions(x, uv / u, y, u);
        Parameters p(alpha, cap_a, cap_b);
        long expected = odd_pair ? 2 * k - 1 : 2 * k;
        auto oracle = first_forbidden_index(p, init, 40);
        auto factor = first_vanishing_factor_index(p, init, 40);
        if (oracle != factor) return fail("oracle and factor indices disagree, attempt " + std::to_string(attempt));
        if (!oracle || *oracle != expected) continue;  // an earlier factor of either pair vanished first
        if (simulate(p, init, 40).status != TrajectoryStatus::forbidden_at(expected))
            return fail("simulate status disagrees at index " + std::to_string(expected));
        ++built;
    }
    if (built < 20) return fail("only " + std::to_string(built) + " cases constructed");
    return ok("5 first-step cases and 20 constructed factor cases agree");
}

Outcome determinism() {
    std::ostringstream a, b, c, err;
    int ca = cli::run({"verify", "--trials", "40", "--seed", "2026", "--horizon", "40"}, a, err);
    int cb = cli::run({"verify", "--trials", "40", "--seed", "2026", "--horizon", "40"}, b, err);
    int cc = cli::run({"verify", "--trials", "40", "--seed", "2026", "--horizon", "40", "--jobs", "3"}, c, err);
    if (ca != 0 || cb != 0 || cc != 0) return fail("verify failed: " + err.str());
    if (a.str() != b.str() || a.str() != c.str()) return fail("verify reports differ");
    for (int id = 1; id <= 4; ++id) {
        Scenario s = paper_example(id);
        std::string p1 = emit_plot(simulate_scenario(s), s.label);
        std::string p2 = emit_plot(simulate_scenario(s), s.label);
        if (p1 != p2) return fail("plot differs for example " + std::to_string(id));
    }
    return ok("verify reports and plots byte-identical");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "closed form equals iteration exactly", closed_form_matches_iteration},
        {2, "example 2 is 2-periodic", example2_two_periodic},
        {3, "example 4 is 4-periodic with exact cycle", example4_four_periodic},
        {4, "example 1 converges to zero", example1_decays},
        {5, "example 3 is unbounded", example3_grows},
        {6, "A = -alpha conserves products", equal_neg_products},
        {7, "|A/alpha| < 1 limit relation", mod_less_limits},
        {8, "closed forms agree", forms_agree},
        {9, "forbidden-set detection", forbidden_detection},
        {10, "determinism", determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << ": " << o.detail << " (" << secs
             << " s)";
        std::cout << line.str() << std::endl;
        failures += !o.pass;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << '\n';
    return failures == 0 ? 0 : 1;
}
