#include "cuboid/characteristic.hpp"

#include <algorithm>
#include <stdexcept>

namespace cuboid {

namespace {

const Rational kOne(1);

bool strictly_between_0_1(const Rational& t) {
    return t > Rational(0) && t < kOne;
}

}  // namespace

CharCoefficients char_coefficients(const Rational& a_sq, const Rational& b_sq) {
    const Rational a4 = a_sq.squared();
    const Rational b4 = b_sq.squared();
    const Rational A = a4 * b4 - Rational(2) * a4 * b_sq - Rational(2) * a_sq * b4 -
                       Rational(12) * a_sq * b_sq + a4 + b4 - Rational(2) * a_sq -
                       Rational(2) * b_sq + kOne;
    const Rational B = Rational(6) * a4 * b4 + Rational(4) * a_sq * b4 + Rational(4) * a4 * b_sq -
                       Rational(8) * a_sq * b_sq + Rational(6) * a4 + Rational(6) * b4 +
                       Rational(4) * a_sq + Rational(4) * b_sq + Rational(6);
    return CharCoefficients{A, B, A};
}

Rational char_eval(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq) {
    const CharCoefficients k = char_coefficients(a_sq, b_sq);
    return (k.A * u_sq + k.B) * u_sq + k.C;
}

Integer char_eval_homogeneous(const Integer& u, const Integer& a, const Integer& b,
                              const Integer& c) {
    const Integer u2 = u * u, a2 = a * a, b2 = b * b, c2 = c * c;
    const Integer u4 = u2 * u2, a4 = a2 * a2, b4 = b2 * b2, c4 = c2 * c2;
    const Integer c6 = c4 * c2, c8 = c4 * c4, c10 = c8 * c2, c12 = c8 * c4;
    return u4 * a4 * b4 + 6 * a4 * u2 * b4 * c2 - 2 * u4 * a4 * b2 * c2 - 2 * u4 * a2 * b4 * c2 +
           4 * u2 * b4 * a2 * c4 + 4 * a4 * u2 * b2 * c4 - 12 * u4 * a2 * b2 * c4 + u4 * a4 * c4 +
           u4 * b4 * c4 + a4 * b4 * c4 + 6 * a4 * u2 * c6 + 6 * u2 * b4 * c6 -
           8 * a2 * b2 * u2 * c6 - 2 * u4 * a2 * c6 - 2 * u4 * b2 * c6 - 2 * a4 * b2 * c6 -
           2 * b4 * a2 * c6 + u4 * c8 + b4 * c8 + a4 * c8 + 4 * a2 * u2 * c8 + 4 * b2 * u2 * c8 -
           12 * b2 * a2 * c8 + 6 * u2 * c10 - 2 * a2 * c10 - 2 * b2 * c10 + c12;
}

Rational residual_5_10(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq) {
    const Rational au = kOne - a_sq * u_sq;
    const Rational one_plus_bsq = kOne + b_sq;
    if (au.is_zero() || one_plus_bsq.is_zero()) {
        throw std::domain_error("residual_5_10: zero denominator");
    }
    const Rational lhs = ((kOne + u_sq) * (kOne - b_sq) * (kOne + a_sq)).squared() /
                         (Rational(4) * one_plus_bsq.squared() * au.squared());
    const Rational rhs = (a_sq - u_sq) / au;
    return lhs - rhs;
}

bool root_in_unit_interval(const RootValue& r) {
    if (const auto* exact = std::get_if<Rational>(&r)) {
        return strictly_between_0_1(*exact);
    }
    const auto& iv = std::get<RootInterval>(r);
    return iv.lo >= Rational(0) && iv.hi <= kOne;
}

namespace {

Rational root_lower_bound(const RootValue& r) {
    if (const auto* exact = std::get_if<Rational>(&r)) {
        return *exact;
    }
    return std::get<RootInterval>(r).lo;
}

// Brackets for both irrational roots (-B -+ sqrt(disc)) / (2A), refined until
// each has width <= 2^-64 and is separated from 0 and 1. Sign-certified
// against the quadratic at the rational endpoints.
std::vector<RootValue> bracket_irrational_roots(const Rational& A, const Rational& B,
                                                const Rational& C, const Rational& disc) {
    const Rational two_a = Rational(2) * A;
    const Rational tol = Rational(Integer(1), Integer(1) << 64);
    for (unsigned bits = 96;; bits += 64) {
        const Interval s = sqrt_enclosure(disc, bits);
        std::vector<RootInterval> brackets;
        for (int which = 0; which < 2; ++which) {
            const Rational e1 = (-B - (which == 0 ? s.hi : -s.lo)) / two_a;
            const Rational e2 = (-B - (which == 0 ? s.lo : -s.hi)) / two_a;
            brackets.push_back(e1 < e2 ? RootInterval{e1, e2} : RootInterval{e2, e1});
        }
        bool good = true;
        for (const RootInterval& iv : brackets) {
            if (iv.hi - iv.lo > tol) {
                good = false;
                break;
            }
            // The roots are irrational, so they cannot sit on a rational
            // endpoint; require separation from the unit-interval boundary.
            for (const Rational& boundary : {Rational(0), kOne}) {
                if (iv.lo <= boundary && boundary <= iv.hi) {
                    good = false;
                    break;
                }
            }
            const auto value = [&](const Rational& t) { return (A * t + B) * t + C; };
            if (value(iv.lo).sign() * value(iv.hi).sign() >= 0) {
                throw std::logic_error("solve_char_for_u: bracket lost the sign change");
            }
        }
        if (good) {
            std::vector<RootValue> roots;
            std::sort(brackets.begin(), brackets.end(),
                      [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
            for (RootInterval& iv : brackets) {
                roots.emplace_back(std::move(iv));
            }
            return roots;
        }
    }
}

}  // namespace

CharRoots solve_char_for_u(const Rational& a_sq, const Rational& b_sq) {
    const auto [A, B, C] = char_coefficients(a_sq, b_sq);
    CharRoots out;
    out.discriminant = B * B - Rational(4) * A * C;

    if (A.is_zero()) {
        if (B.is_zero()) {
            if (C.is_zero()) {
                throw std::domain_error("solve_char_for_u: identically zero on this input");
            }
            return out;  // no roots
        }
        out.roots.emplace_back(-C / B);
    } else if (out.discriminant.sign() < 0) {
        return out;  // no real roots
    } else if (auto s = rational_sqrt(out.discriminant)) {
        const Rational two_a = Rational(2) * A;
        Rational r1 = (-B - *s) / two_a;
        Rational r2 = (-B + *s) / two_a;
        if (r2 < r1) {
            std::swap(r1, r2);
        }
        out.roots.emplace_back(r1);
        if (r1 != r2) {
            out.roots.emplace_back(r2);
        }
    } else {
        out.roots = bracket_irrational_roots(A, B, C, out.discriminant);
    }

    for (const RootValue& r : out.roots) {
        if (root_in_unit_interval(r)) {
            if (!out.selection ||
                root_lower_bound(r) < root_lower_bound(*out.selection)) {
                out.selection = r;
            }
        }
    }
    return out;
}

std::optional<ParamUZ> invert_ab(const Rational& a_sq, const Rational& b_sq) {
    if (!strictly_between_0_1(a_sq) || !strictly_between_0_1(b_sq)) {
        throw std::domain_error("invert_ab: a^2 and b^2 must lie in (0,1)");
    }
    const CharRoots roots = solve_char_for_u(a_sq, b_sq);
    if (!roots.selection) {
        return std::nullopt;
    }
    const auto* t = std::get_if<Rational>(&*roots.selection);
    if (t == nullptr) {
        return std::nullopt;  // irrational u^2: no rational inversion
    }
    const auto u = rational_sqrt(*t);
    if (!u || !strictly_between_0_1(*u)) {
        return std::nullopt;
    }
    const Rational z = z_from_abu(*t, a_sq, b_sq);
    if (!in_domain_uz(*u, z)) {
        return std::nullopt;
    }
    const ParamUZ p{*u, z};
    const SquaredAB round_trip = ab_squared(p);
    if (round_trip.a_sq != a_sq || round_trip.b_sq != b_sq) {
        return std::nullopt;  // (a_sq, b_sq) is not in the image of the map
    }
    return p;
}

}  // namespace cuboid
