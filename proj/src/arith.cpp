#include "cuboid/arith.hpp"

#include <stdexcept>

namespace cuboid {

Integer isqrt(const Integer& n) {
    if (sgn(n) < 0) {
        throw std::domain_error("isqrt: negative argument");
    }
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    return root;
}

std::optional<Integer> is_perfect_square(const Integer& n) {
    if (sgn(n) < 0) {
        return std::nullopt;
    }
    Integer root;
    Integer rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), n.get_mpz_t());
    if (sgn(rem) != 0) {
        return std::nullopt;
    }
    return root;
}

Integer lcm_many(std::span<const Integer> values) {
    if (values.empty()) {
        throw std::invalid_argument("lcm_many: empty list");
    }
    Integer acc = 1;
    for (const Integer& v : values) {
        if (sgn(v) <= 0) {
            throw std::invalid_argument("lcm_many: non-positive entry");
        }
        mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
    }
    return acc;
}

Integer gcd_many(std::span<const Integer> values) {
    Integer acc = 0;
    for (const Integer& v : values) {
        mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), v.get_mpz_t());
    }
    return acc;
}

Rational::Rational(const Integer& num, const Integer& den) {
    if (sgn(den) == 0) {
        throw std::domain_error("Rational: zero denominator");
    }
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

Rational Rational::parse(std::string_view text) {
    if (text.empty()) {
        throw std::invalid_argument("Rational::parse: empty input");
    }
    const auto slash = text.find('/');
    try {
        if (slash == std::string_view::npos) {
            return Rational(Integer(std::string(text)));
        }
        const Integer num(std::string(text.substr(0, slash)));
        const Integer den(std::string(text.substr(slash + 1)));
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: malformed rational '" + std::string(text) + "'");
    }
}

Rational Rational::reciprocal() const {
    if (is_zero()) {
        throw std::domain_error("Rational: reciprocal of zero");
    }
    return Rational(den(), num());
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) {
        throw std::domain_error("Rational: division by zero");
    }
    return Rational(a.q_ / b.q_);
}

std::optional<Rational> rational_sqrt(const Rational& r) {
    if (r.sign() < 0) {
        throw std::domain_error("rational_sqrt: negative argument");
    }
    const auto num_root = is_perfect_square(r.num());
    if (!num_root) {
        return std::nullopt;
    }
    const auto den_root = is_perfect_square(r.den());
    if (!den_root) {
        return std::nullopt;
    }
    return Rational(*num_root, *den_root);
}

Interval sqrt_enclosure(const Rational& r, unsigned bits) {
    if (r.sign() < 0) {
        throw std::domain_error("sqrt_enclosure: negative argument");
    }
    if (auto exact = rational_sqrt(r)) {
        return Interval{*exact, *exact};
    }
    // sqrt(n/d) = sqrt(n*d)/d; scale by 4^bits so the integer floor root
    // gives an enclosure of width 1/(2^bits * d) <= 2^-bits.
    Integer scaled = r.num() * r.den();
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * bits);
    const Integer root = isqrt(scaled);
    Integer denom = r.den();
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), bits);
    return Interval{Rational(root, denom), Rational(root + 1, denom)};
}

}  // namespace cuboid
