#include "ratrec/closedform.hpp"

#include <vector>

namespace ratrec {

namespace {

struct ExactInputs {
    Rational alpha;
    Rational cap_a;
    Rational cap_b;
    Rational a, b, c, d;
};

ExactInputs exact_inputs(const Parameters& params, const InitialConditions& init) {
    if (params.mode() != Mode::Exact || init.mode() != Mode::Exact)
        throw Error(ErrorKind::FloatModeUnsupported, "closed forms are evaluated in exact mode only");
    return {params.alpha().rational(), params.cap_a().rational(), params.cap_b().rational(),
            init.a().rational(),       init.b().rational(),       init.c().rational(),
            init.d().rational()};
}

// Everything a residue-class formula needs: n, the seed in front, the other
// seed of the pair and the pair product uv.
struct Term {
    SubsequenceId id;
    PairSelector pair;
    Rational lead;
    Rational partner;
    Rational uv;
    long factors;  // K: S_1..S_K enter the formula
};

Term term_for(const ExactInputs& in, long m) {
    SubsequenceId id = subsequence_of(m);
    switch (id.residue) {
    case Residue::M3: return {id, PairSelector::BD, in.d, in.b, in.b * in.d, 2 * id.n - 1};
    case Residue::M1: return {id, PairSelector::BD, in.b, in.d, in.b * in.d, 2 * id.n};
    case Residue::M2: return {id, PairSelector::AC, in.c, in.a, in.a * in.c, 2 * id.n - 1};
    case Residue::M0: return {id, PairSelector::AC, in.a, in.c, in.a * in.c, 2 * id.n};
    }
    throw Error(ErrorKind::InvalidArgument, "bad residue");
}

long trajectory_index(PairSelector pair, long k) { return pair == PairSelector::BD ? 2 * k - 1 : 2 * k; }

[[noreturn]] void throw_forbidden(PairSelector pair, long k) {
    long idx = trajectory_index(pair, k);
    throw Error(ErrorKind::ForbiddenInput,
                "factor k=" + std::to_string(k) + " vanishes (x_" + std::to_string(idx) + " undefined)", idx);
}

bool odd_lead(Residue r) { return r == Residue::M3 || r == Residue::M2; }

// S_1..S_K straight from the defining sum, built with the running geometric
// sum G_{k+1} = A^k + alpha G_k.
std::vector<Rational> theorem1_factors(const ExactInputs& in, const Rational& uv, long count) {
    std::vector<Rational> s(static_cast<std::size_t>(count) + 1);
    Rational geometric;  // G_0 = 0
    Rational a_pow(1);   // A^0
    for (long k = 1; k <= count; ++k) {
        geometric = a_pow + in.alpha * geometric;
        a_pow *= in.cap_a;
        s[static_cast<std::size_t>(k)] = a_pow + in.cap_b * uv * geometric;
        guard_size(s[static_cast<std::size_t>(k)]);
    }
    return s;
}

// Shared product layout of the product and P forms: odd-lead residues take
// evens up to K-1 over odds up to K, even-lead residues the reverse.
Rational product_ratio(const std::vector<Rational>& f, const Term& t) {
    Rational num(1), den(1);
    for (long k = 1; k <= t.factors; ++k) {
        bool odd_k = (k % 2) == 1;
        bool in_denominator = odd_lead(t.id.residue) ? odd_k : !odd_k;
        (in_denominator ? den : num) *= f[static_cast<std::size_t>(k)];
    }
    return num / den;
}

void check_factors(const std::vector<Rational>& f, const Term& t) {
    for (long k = 1; k <= t.factors; ++k)
        if (f[static_cast<std::size_t>(k)].is_zero()) throw_forbidden(t.pair, k);
}

void require_term_index(long m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "closed-form terms start at m = 1");
}

}  // namespace

SubsequenceId subsequence_of(long m) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "subsequence index needs m >= 1");
    long n = (m + 3) / 4;
    switch (m - 4 * n) {
    case -3: return {Residue::M3, n};
    case -2: return {Residue::M2, n};
    case -1: return {Residue::M1, n};
    default: return {Residue::M0, n};
    }
}

long global_index(SubsequenceId id) {
    switch (id.residue) {
    case Residue::M3: return 4 * id.n - 3;
    case Residue::M2: return 4 * id.n - 2;
    case Residue::M1: return 4 * id.n - 1;
    case Residue::M0: return 4 * id.n;
    }
    return 0;
}

PairSelector pair_of(Residue r) {
    return (r == Residue::M3 || r == Residue::M1) ? PairSelector::BD : PairSelector::AC;
}

Scalar p_poly(unsigned long p, const Parameters& params, const Scalar& u, const Scalar& v) {
    const Scalar& alpha = params.alpha();
    const Scalar& cap_a = params.cap_a();
    Scalar buv = params.cap_b() * u * v;
    return int_pow(cap_a, p) * (cap_a - alpha + buv) - buv * int_pow(alpha, p);
}

Scalar theorem1_term(const Parameters& params, const InitialConditions& init, long m) {
    require_term_index(m);
    ExactInputs in = exact_inputs(params, init);
    Term t = term_for(in, m);
    auto f = theorem1_factors(in, t.uv, t.factors);
    check_factors(f, t);
    Rational x = t.lead * int_pow(in.alpha, static_cast<unsigned long>(t.id.n)) * product_ratio(f, t);
    guard_size(x);
    return Scalar(std::move(x));
}

Scalar corollary1_term(const Parameters& params, const InitialConditions& init, long m) {
    require_term_index(m);
    ExactInputs in = exact_inputs(params, init);
    if (in.cap_a == in.alpha) throw Error(ErrorKind::RequiresANeqAlpha, "the P form divides by A - alpha");
    Term t = term_for(in, m);

    Scalar u(t.pair == PairSelector::BD ? in.b : in.a);
    Scalar v(t.pair == PairSelector::BD ? in.d : in.c);
    std::vector<Rational> f(static_cast<std::size_t>(t.factors) + 1);
    for (long k = 1; k <= t.factors; ++k) {
        f[static_cast<std::size_t>(k)] = p_poly(static_cast<unsigned long>(k), params, u, v).rational();
        guard_size(f[static_cast<std::size_t>(k)]);
    }
    check_factors(f, t);

    Rational x = t.lead * int_pow(in.alpha, static_cast<unsigned long>(t.id.n)) * product_ratio(f, t);
    if (odd_lead(t.id.residue)) x *= in.cap_a - in.alpha;
    guard_size(x);
    return Scalar(std::move(x));
}

Scalar corollary2_term(const Parameters& params, const InitialConditions& init, long m) {
    require_term_index(m);
    ExactInputs in = exact_inputs(params, init);
    if (in.cap_a != in.alpha) throw Error(ErrorKind::RequiresAEqAlpha, "the Gamma form needs A = alpha");
    if (in.cap_b.is_zero()) throw Error(ErrorKind::InvalidArgument, "the Gamma form needs B != 0");
    Term t = term_for(in, m);

    // With A = alpha the factors collapse to S_k = A^{k-1} (A + k B uv)
    // = A^{k-1} B uv (e + k), e = A / (B uv).
    Rational e = in.cap_a / (in.cap_b * t.uv);
    for (long k = 1; k <= t.factors; ++k) {
        if (k >= 2 && in.cap_a.is_zero()) throw_forbidden(t.pair, k);
        if ((e + Rational(k)).is_zero()) throw_forbidden(t.pair, k);
    }

    const auto n = static_cast<unsigned long>(t.id.n);
    Rational half_shift = e / Rational(2) + Rational(1);
    Rational x;
    if (odd_lead(t.id.residue)) {
        // A 2^{2n-2} G(e/2+n)^2 G(e+1) / (B u G(e/2+1)^2 G(e+2n)), u the partner seed
        Rational r = rising_factorial(half_shift, n - 1);
        x = in.cap_a / (in.cap_b * t.partner) * int_pow(Rational(2), 2 * n - 2) * r * r /
            rising_factorial(e + Rational(1), 2 * n - 1);
    } else {
        // lead G(e+2n+1) G(e/2+1)^2 / (2^{2n} G(e+1) G(e/2+n+1)^2)
        Rational r = rising_factorial(half_shift, n);
        x = t.lead * rising_factorial(e + Rational(1), 2 * n) / (int_pow(Rational(2), 2 * n) * r * r);
    }
    guard_size(x);
    return Scalar(std::move(x));
}

Scalar special_case_elsayed(const InitialConditions& init, long m) {
    require_term_index(m);
    if (init.mode() != Mode::Exact)
        throw Error(ErrorKind::FloatModeUnsupported, "closed forms are evaluated in exact mode only");
    Parameters unit(Scalar(1), Scalar(1), Scalar(1));
    ExactInputs in = exact_inputs(unit, init);
    Term t = term_for(in, m);

    auto factor = [&](long k) {
        Rational f = Rational(1) + Rational(k) * t.uv;
        if (f.is_zero()) throw_forbidden(t.pair, k);
        return f;
    };

    // x_{4n-3} = d prod_{i<n} (1 + 2i uv) / prod_{i<n} (1 + (2i+1) uv)
    // x_{4n-1} = b prod_{i<n} (1 + (2i+1) uv) / prod_{i<n} (1 + (2i+2) uv)
    Rational num(1), den(1);
    for (long i = 0; i < t.id.n; ++i) {
        if (odd_lead(t.id.residue)) {
            num *= Rational(1) + Rational(2 * i) * t.uv;
            den *= factor(2 * i + 1);
        } else {
            num *= factor(2 * i + 1);
            den *= factor(2 * i + 2);
        }
    }
    // Even factors below K guard the odd-lead numerator too.
    for (long k = 2; k < t.factors; k += 2) factor(k);
    return Scalar(t.lead * num / den);
}

std::string_view to_string(Form f) {
    switch (f) {
    case Form::Auto: return "auto";
    case Form::Theorem1: return "theorem1";
    case Form::Corollary1: return "corollary1";
    case Form::Corollary2: return "corollary2";
    case Form::Elsayed: return "elsayed";
    }
    return "auto";
}

std::optional<Form> form_from_string(std::string_view s) {
    for (Form f : {Form::Auto, Form::Theorem1, Form::Corollary1, Form::Corollary2, Form::Elsayed})
        if (to_string(f) == s) return f;
    return std::nullopt;
}

ClosedFormValue evaluate_closed_form(const Parameters& params, const InitialConditions& init, long m,
                                     Form form) {
    ExactInputs in = exact_inputs(params, init);
    if (m < Trajectory::start_index)
        throw Error(ErrorKind::InvalidArgument, "index " + std::to_string(m) + " precedes the seeds");
    if (m <= 0) {
        const Scalar* seeds[] = {&init.d(), &init.c(), &init.b(), &init.a()};
        return {*seeds[m + 3], Form::Theorem1};
    }

    if (form == Form::Auto) {
        if (in.cap_a == in.alpha)
            form = (!in.cap_a.is_zero() && !in.cap_b.is_zero()) ? Form::Corollary2 : Form::Theorem1;
        else
            form = Form::Corollary1;
    }
    switch (form) {
    case Form::Theorem1: return {theorem1_term(params, init, m), form};
    case Form::Corollary1: return {corollary1_term(params, init, m), form};
    case Form::Corollary2: return {corollary2_term(params, init, m), form};
    case Form::Elsayed:
        if (in.alpha != Rational(1) || in.cap_a != Rational(1) || in.cap_b != Rational(1))
            throw Error(ErrorKind::InvalidArgument, "the special case needs alpha = A = B = 1");
        return {special_case_elsayed(init, m), form};
    case Form::Auto: break;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown form");
}

Scalar closed_form(const Parameters& params, const InitialConditions& init, long m) {
    return evaluate_closed_form(params, init, m).value;
}

std::optional<long> first_vanishing_factor_index(const Parameters& params, const InitialConditions& init,
                                                 long horizon) {
    ExactInputs in = exact_inputs(params, init);
    if (horizon < 1) return std::nullopt;
    auto bd = theorem1_factors(in, in.b * in.d, (horizon + 1) / 2);
    auto ac = theorem1_factors(in, in.a * in.c, horizon / 2);
    for (long m = 1; m <= horizon; ++m) {
        long k = (m + 1) / 2;
        const auto& f = (m % 2 == 1) ? bd : ac;
        if (f[static_cast<std::size_t>(k)].is_zero()) return m;
    }
    return std::nullopt;
}

CumulativeClosedForm::CumulativeClosedForm(const Parameters& params, const InitialConditions& init) {
    ExactInputs in = exact_inputs(params, init);
    alpha_ = in.alpha;
    cap_a_ = in.cap_a;
    cap_b_ = in.cap_b;
    bd_ = PairState{in.d, in.b, in.b * in.d, Rational(0), Rational(1)};
    ac_ = PairState{in.c, in.a, in.a * in.c, Rational(0), Rational(1)};
}

Rational CumulativeClosedForm::advance(PairState& st, long index) {
    ++st.k;
    st.geometric = st.a_pow + alpha_ * st.geometric;
    st.a_pow *= cap_a_;
    Rational s = st.a_pow + cap_b_ * st.uv * st.geometric;
    if (s.is_zero())
        throw Error(ErrorKind::ForbiddenInput, "factor k=" + std::to_string(st.k) + " vanishes", index);
    const bool odd_k = (st.k % 2) == 1;
    (odd_k ? st.odd_product : st.even_product) *= s;
    guard_size(odd_k ? st.odd_product : st.even_product);

    if (odd_k) {
        auto n = static_cast<unsigned long>((st.k + 1) / 2);
        return st.lead_odd * int_pow(alpha_, n) * st.even_product / st.odd_product;
    }
    auto n = static_cast<unsigned long>(st.k / 2);
    return st.lead_even * int_pow(alpha_, n) * st.odd_product / st.even_product;
}

Scalar CumulativeClosedForm::next() {
    long m = next_;
    Rational x = (m % 2 == 1) ? advance(bd_, m) : advance(ac_, m);
    ++next_;
    return Scalar(std::move(x));
}

}  // namespace ratrec
