#include "ratrec/numerics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>

namespace ratrec {

namespace {

std::atomic<std::size_t> g_bit_limit{kDefaultBitLimit};

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (ch < '0' || ch > '9') return false;
    return true;
}

mpz_class parse_digits(std::string_view s) {
    return mpz_class(std::string(s), 10);
}

[[noreturn]] void throw_mismatch() {
    throw Error(ErrorKind::ModeMismatch, "exact and float scalars cannot be mixed");
}

}  // namespace

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0) throw Error(ErrorKind::ZeroDenominator, "denominator is zero");
    q_.canonicalize();
}

Rational Rational::from_double(double v) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite double has no exact value");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), v);
    return Rational(std::move(q));
}

Rational Rational::abs() const {
    Rational r;
    r.q_ = ::abs(q_);
    return r;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw Error(ErrorKind::DivisionByZero, "reciprocal of zero");
    Rational r;
    mpq_inv(r.q_.get_mpq_t(), q_.get_mpq_t());
    return r;
}

std::size_t Rational::bit_size() const {
    std::size_t n = mpz_sizeinbase(num().get_mpz_t(), 2);
    std::size_t d = mpz_sizeinbase(den().get_mpz_t(), 2);
    return n > d ? n : d;
}

std::string Rational::str() const {
    return num().get_str() + "/" + den().get_str();
}

Rational Rational::operator-() const {
    Rational r;
    r.q_ = -q_;
    return r;
}

Rational& Rational::operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by zero");
    q_ /= o.q_;
    return *this;
}

Rational rat_from_string(std::string_view s) {
    const std::string original(s);
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto top = s.substr(0, slash);
        auto bottom = s.substr(slash + 1);
        if (!all_digits(top) || !all_digits(bottom))
            throw Error(ErrorKind::MalformedNumber, "'" + original + "' is not a number");
        mpz_class den = parse_digits(bottom);
        if (den == 0) throw Error(ErrorKind::ZeroDenominator, "'" + original + "' has a zero denominator");
        value = Rational(parse_digits(top), den);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac))
            throw Error(ErrorKind::MalformedNumber, "'" + original + "' is not a number");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        value = Rational(parse_digits(whole) * scale + parse_digits(frac), scale);
    } else {
        if (!all_digits(s)) throw Error(ErrorKind::MalformedNumber, "'" + original + "' is not a number");
        value = Rational(parse_digits(s), mpz_class(1));
    }
    return negative ? -value : value;
}

Rational rising_factorial(const Rational& z, unsigned long k) {
    Rational acc(1);
    Rational term = z;
    for (unsigned long i = 0; i < k; ++i) {
        acc *= term;
        term += Rational(1);
    }
    return acc;
}

Rational int_pow(const Rational& x, unsigned long p) {
    Rational result(1);
    Rational base = x;
    while (p != 0) {
        if (p & 1UL) result *= base;
        p >>= 1;
        if (p != 0) base *= base;
    }
    return result;
}

std::size_t bit_limit() { return g_bit_limit.load(std::memory_order_relaxed); }

void set_bit_limit(std::size_t bits) { g_bit_limit.store(bits, std::memory_order_relaxed); }

void guard_size(const Rational& r) {
    if (r.bit_size() > bit_limit())
        throw Error(ErrorKind::ExactBlowup,
                    "value needs " + std::to_string(r.bit_size()) + " bits, limit is " +
                        std::to_string(bit_limit()));
}

std::string_view to_string(Mode m) { return m == Mode::Exact ? "exact" : "float"; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

const Rational& Scalar::rational() const {
    if (auto* r = std::get_if<Rational>(&v_)) return *r;
    throw Error(ErrorKind::ModeMismatch, "float scalar has no exact value");
}

double Scalar::to_double() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->to_double();
    return std::get<double>(v_);
}

Scalar Scalar::to_mode(Mode m) const {
    if (m == mode()) return *this;
    if (m == Mode::Float) return Scalar(to_double());
    return Scalar(Rational::from_double(std::get<double>(v_)));
}

bool Scalar::is_zero() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->is_zero();
    return std::get<double>(v_) == 0.0;
}

bool Scalar::is_finite() const {
    if (is_exact()) return true;
    return std::isfinite(std::get<double>(v_));
}

int Scalar::sign() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->sign();
    double d = std::get<double>(v_);
    return (d > 0) - (d < 0);
}

Scalar Scalar::abs() const {
    if (auto* r = std::get_if<Rational>(&v_)) return Scalar(r->abs());
    return Scalar(std::fabs(std::get<double>(v_)));
}

std::string Scalar::str() const {
    if (auto* r = std::get_if<Rational>(&v_)) return r->str();
    return format_double(std::get<double>(v_));
}

Scalar Scalar::operator-() const {
    if (auto* r = std::get_if<Rational>(&v_)) return Scalar(-*r);
    return Scalar(-std::get<double>(v_));
}

void require_same_mode(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) throw_mismatch();
}

#define RATREC_SCALAR_BINOP(op)                                                       \
    Scalar operator op(const Scalar& a, const Scalar& b) {                           \
        require_same_mode(a, b);                                                       \
        if (a.is_exact()) return Scalar(std::get<Rational>(a.v_) op std::get<Rational>(b.v_)); \
        return Scalar(std::get<double>(a.v_) op std::get<double>(b.v_));              \
    }

RATREC_SCALAR_BINOP(+)
RATREC_SCALAR_BINOP(-)
RATREC_SCALAR_BINOP(*)
RATREC_SCALAR_BINOP(/)

#undef RATREC_SCALAR_BINOP

bool operator==(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact()) return std::get<Rational>(a.v_) == std::get<Rational>(b.v_);
    return std::get<double>(a.v_) == std::get<double>(b.v_);
}

bool operator<(const Scalar& a, const Scalar& b) {
    require_same_mode(a, b);
    if (a.is_exact()) return std::get<Rational>(a.v_) < std::get<Rational>(b.v_);
    return std::get<double>(a.v_) < std::get<double>(b.v_);
}

Scalar int_pow(const Scalar& x, unsigned long p) {
    if (x.is_exact()) return Scalar(int_pow(x.rational(), p));
    double result = 1.0;
    double base = x.to_double();
    while (p != 0) {
        if (p & 1UL) result *= base;
        p >>= 1;
        if (p != 0) base *= base;
    }
    return Scalar(result);
}

}  // namespace ratrec
