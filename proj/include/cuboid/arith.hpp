// Exact integer and rational arithmetic kernel. Everything downstream
// (cuboid verification, the rational parametrization, the characteristic
// polynomial, the search) relies on these primitives being exact for
// arbitrary magnitudes, so they are backed by GMP.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace cuboid {

// Arbitrary-precision signed integer.
using Integer = mpz_class;
// Alias used where a value is non-negative by contract.
using Natural = mpz_class;

/// floor(sqrt(n)). Exact for any magnitude. Throws std::domain_error for n < 0.
Integer isqrt(const Integer& n);

/// The root r with r*r == n when n is a perfect square, empty otherwise.
/// Negative inputs are never squares.
std::optional<Integer> is_perfect_square(const Integer& n);

/// LCM of a nonempty list of positive integers.
/// Throws std::invalid_argument on an empty list or a non-positive entry.
Integer lcm_many(std::span<const Integer> values);

/// GCD of a list; 0 for an empty list.
Integer gcd_many(std::span<const Integer> values);

// Exact rational number, always stored reduced with positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    explicit Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den);
    Rational(long num, long den);

    /// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on
    /// malformed input, std::domain_error on a zero denominator.
    static Rational parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }

    Rational squared() const { return Rational(q_ * q_); }
    Rational abs() const { return sign() < 0 ? Rational(-q_) : *this; }
    /// 1/r. Throws std::domain_error when zero.
    Rational reciprocal() const;

    /// Always "p/q", q > 0, reduced (so 0 prints as "0/1").
    std::string str() const;

    double to_double() const { return q_.get_d(); }

    friend Rational operator-(const Rational& r) { return Rational(-r.q_); }
    friend Rational operator+(const Rational& a, const Rational& b) { return Rational(a.q_ + b.q_); }
    friend Rational operator-(const Rational& a, const Rational& b) { return Rational(a.q_ - b.q_); }
    friend Rational operator*(const Rational& a, const Rational& b) { return Rational(a.q_ * b.q_); }
    friend Rational operator/(const Rational& a, const Rational& b);

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) >= 0; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

/// Exact square root of a non-negative rational, when one exists: the reduced
/// numerator and denominator must both be perfect squares.
/// Throws std::domain_error for r < 0.
std::optional<Rational> rational_sqrt(const Rational& r);

// Closed rational enclosure lo <= x <= hi.
struct Interval {
    Rational lo;
    Rational hi;
    Rational width() const { return hi - lo; }
};

/// Enclosure of sqrt(r) of width <= 2^-bits; exact (lo == hi) when r is a
/// rational square. Throws std::domain_error for r < 0.
Interval sqrt_enclosure(const Rational& r, unsigned bits);

}  // namespace cuboid
