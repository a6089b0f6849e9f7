#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "cuboid/arith.hpp"
#include "test_util.hpp"

using namespace cuboid;

TEST_CASE("isqrt on small and derived values") {
    CHECK(isqrt(Integer(0)) == 0);
    CHECK(isqrt(Integer(2)) == 1);
    // 153^2 + 104^2 + 672^2 = 485809; confirm the root by direct multiplication.
    CHECK(Integer(697) * 697 == 485809);
    CHECK(isqrt(Integer(485809)) == 697);
    CHECK_THROWS_AS(isqrt(Integer(-1)), std::domain_error);
}

TEST_CASE("isqrt bracketing invariant on random magnitudes") {
    auto rng = testutil::make_rng();
    for (unsigned bits : {16u, 40u, 64u, 128u, 256u}) {
        for (int i = 0; i < 200; ++i) {
            const Integer n = testutil::random_integer(rng, bits);
            const Integer r = isqrt(n);
            CHECK(r * r <= n);
            CHECK((r + 1) * (r + 1) > n);
        }
    }
}

TEST_CASE("is_perfect_square examples") {
    // 153^2 + 104^2 = 34225 and 185^2 = 34225.
    CHECK(Integer(153) * 153 + Integer(104) * 104 == 34225);
    CHECK(Integer(185) * 185 == 34225);
    CHECK(is_perfect_square(Integer(34225)) == Integer(185));
    // 672^2 + 153^2 = 474993; isqrt gives 689 and 689^2 != 474993.
    CHECK(Integer(672) * 672 + Integer(153) * 153 == 474993);
    CHECK(isqrt(Integer(474993)) == 689);
    CHECK(Integer(689) * 689 != 474993);
    CHECK_FALSE(is_perfect_square(Integer(474993)).has_value());
    CHECK(is_perfect_square(Integer(1)) == Integer(1));
    CHECK(is_perfect_square(Integer(0)) == Integer(0));
    CHECK_FALSE(is_perfect_square(Integer(-4)).has_value());
}

TEST_CASE("is_perfect_square agrees with squaring on randoms") {
    auto rng = testutil::make_rng();
    for (int i = 0; i < 500; ++i) {
        const Integer n = testutil::random_integer(rng, 80);
        CHECK(is_perfect_square(n * n) == n);
        const auto r = is_perfect_square(n);
        if (r) {
            CHECK(*r * *r == n);
        } else {
            const Integer s = isqrt(n);
            CHECK(s * s != n);
        }
    }
}

TEST_CASE("rational_sqrt") {
    CHECK(rational_sqrt(Rational(16, 25)) == Rational(4, 5));
    CHECK(Rational(4, 5).squared() == Rational(16, 25));
    // 481 = 13 * 37 is squarefree; brute-check that no integer square hits it.
    for (long k = 0; k * k <= 481; ++k) {
        CHECK(k * k != 481);
    }
    CHECK_FALSE(rational_sqrt(Rational(481, 625)).has_value());
    CHECK(rational_sqrt(Rational(0)) == Rational(0));
    CHECK_THROWS_AS(rational_sqrt(Rational(-1, 4)), std::domain_error);

    auto rng = testutil::make_rng();
    for (int i = 0; i < 500; ++i) {
        const Rational r = testutil::random_unit_rational(rng);
        CHECK(rational_sqrt(r.squared()) == r);
        if (const auto s = rational_sqrt(r)) {
            CHECK(s->squared() == r);
        }
    }
}

TEST_CASE("lcm_many") {
    const std::vector<Integer> coprime = {5, 4};
    CHECK(lcm_many(coprime) == 20);
    const std::vector<Integer> same = {6, 6, 6};
    CHECK(lcm_many(same) == 6);
    const std::vector<Integer> face(6, Integer(697));
    CHECK(lcm_many(face) == 697);
    const std::vector<Integer> empty;
    CHECK_THROWS_AS(lcm_many(empty), std::invalid_argument);
    const std::vector<Integer> with_zero = {3, 0};
    CHECK_THROWS_AS(lcm_many(with_zero), std::invalid_argument);
}

namespace {

// Independent oracle: rational arithmetic on raw numerator/denominator
// pairs, reduced only when comparing.
struct NaiveRat {
    Integer num;
    Integer den;

    static NaiveRat add(const NaiveRat& a, const NaiveRat& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    static NaiveRat sub(const NaiveRat& a, const NaiveRat& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    static NaiveRat mul(const NaiveRat& a, const NaiveRat& b) {
        return {a.num * b.num, a.den * b.den};
    }
    static NaiveRat div(const NaiveRat& a, const NaiveRat& b) {
        return {a.num * b.den, a.den * b.num};
    }
    Rational reduced() const { return Rational(num, den); }
};

}  // namespace

TEST_CASE("rational arithmetic stays reduced and matches a naive oracle") {
    auto rng = testutil::make_rng();
    for (int i = 0; i < 2000; ++i) {
        const Rational x = testutil::random_rational(rng);
        Rational y = testutil::random_rational(rng);
        const NaiveRat nx{x.num(), x.den()};
        const NaiveRat ny{y.num(), y.den()};

        const auto check_reduced = [](const Rational& r) {
            CHECK(sgn(r.den()) > 0);
            Integer g;
            mpz_gcd(g.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
            CHECK(g == 1);
        };

        check_reduced(x);
        CHECK((x + y) == NaiveRat::add(nx, ny).reduced());
        CHECK((x - y) == NaiveRat::sub(nx, ny).reduced());
        CHECK((x * y) == NaiveRat::mul(nx, ny).reduced());
        check_reduced(x + y);
        check_reduced(x * y);
        if (!y.is_zero()) {
            CHECK((x / y) == NaiveRat::div(nx, ny).reduced());
            check_reduced(x / y);
        }
    }
}

TEST_CASE("rational construction, parsing and printing") {
    CHECK(Rational(4, 6) == Rational(2, 3));
    CHECK(Rational(4, 6).str() == "2/3");
    CHECK(Rational(-4, 6).str() == "-2/3");
    CHECK(Rational(4, -6).str() == "-2/3");
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational::parse("2/3") == Rational(2, 3));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
    CHECK_THROWS_AS(Rational::parse("foo"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(1, 3));

    auto rng = testutil::make_rng();
    for (int i = 0; i < 500; ++i) {
        const Rational r = testutil::random_rational(rng);
        CHECK(Rational::parse(r.str()) == r);
    }
}

TEST_CASE("sqrt_enclosure") {
    // Exact on rational squares.
    const Interval exact = sqrt_enclosure(Rational(16, 25), 64);
    CHECK(exact.lo == Rational(4, 5));
    CHECK(exact.hi == Rational(4, 5));

    auto rng = testutil::make_rng();
    const Rational tol(Integer(1), Integer(1) << 64);
    for (int i = 0; i < 200; ++i) {
        const Rational r = testutil::random_unit_rational(rng);
        const Interval iv = sqrt_enclosure(r, 64);
        CHECK(iv.lo.squared() <= r);
        CHECK(iv.hi.squared() >= r);
        CHECK(iv.width() <= tol);
    }
    CHECK_THROWS_AS(sqrt_enclosure(Rational(-1), 16), std::domain_error);
}
