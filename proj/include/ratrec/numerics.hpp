#pragma once

/**
 * @file numerics.hpp
 * @brief Exact rationals, mode-tagged scalars, powers and rising factorials.
 *
 * Rational wraps a GMP mpq and is always stored reduced with a positive
 * denominator. Scalar is either an exact Rational or an IEEE double; the two
 * modes never mix implicitly.
 */

#include <concepts>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "ratrec/error.hpp"

namespace ratrec {

class Rational {
public:
    Rational() = default;
    template <std::signed_integral T>
    Rational(T v) : q_(static_cast<long>(v)) {}
    template <std::unsigned_integral T>
    Rational(T v) : q_(static_cast<unsigned long>(v)) {}
    Rational(const mpz_class& num, const mpz_class& den);
    explicit Rational(mpq_class q);

    // Exact binary value of a finite double.
    static Rational from_double(double v);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    const mpq_class& mpq() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return den() == 1; }
    Rational abs() const;
    Rational reciprocal() const;
    double to_double() const { return q_.get_d(); }

    // Larger of the numerator and denominator bit lengths.
    std::size_t bit_size() const;

    // Always "p/q", including integers ("3/1").
    std::string str() const;

    Rational operator-() const;
    Rational& operator+=(const Rational& o);
    Rational& operator-=(const Rational& o);
    Rational& operator*=(const Rational& o);
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

// Parses "[-]digits", "[-]digits/digits" or "[-]digits.digits".
Rational rat_from_string(std::string_view s);

// z (z+1) ... (z+k-1); 1 when k == 0.
Rational rising_factorial(const Rational& z, unsigned long k);

Rational int_pow(const Rational& x, unsigned long p);

// Digit-growth guard shared by every exact computation. The default is
// 1,000,000 bits; ExactBlowup is thrown when a value exceeds it.
inline constexpr std::size_t kDefaultBitLimit = 1'000'000;
std::size_t bit_limit();
void set_bit_limit(std::size_t bits);
void guard_size(const Rational& r);

enum class Mode { Exact, Float };

std::string_view to_string(Mode m);

class Scalar {
public:
    Scalar() : v_(Rational{}) {}
    Scalar(Rational r) : v_(std::move(r)) {}
    template <std::integral T>
    Scalar(T v) : v_(Rational(v)) {}
    explicit Scalar(double v) : v_(v) {}

    static Scalar exact(Rational r) { return Scalar(std::move(r)); }
    static Scalar floating(double v) { return Scalar(v); }

    Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::Exact : Mode::Float; }
    bool is_exact() const { return mode() == Mode::Exact; }

    // Throws ModeMismatch when the scalar is in Float mode.
    const Rational& rational() const;
    // The float value, or the rounded value of an exact scalar.
    double to_double() const;
    // Exact -> Float rounds; Float -> Exact is the exact binary value.
    Scalar to_mode(Mode m) const;

    bool is_zero() const;
    bool is_finite() const;
    int sign() const;
    Scalar abs() const;

    // Exact: "p/q"; Float: 17 significant digits.
    std::string str() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    // Exact division by zero throws DivisionByZero; float follows IEEE.
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    // Comparisons across modes throw ModeMismatch.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);

private:
    std::variant<Rational, double> v_;
};

Scalar int_pow(const Scalar& x, unsigned long p);

// Throws ModeMismatch unless all arguments share one mode.
void require_same_mode(const Scalar& a, const Scalar& b);

std::string format_double(double v);

}  // namespace ratrec
