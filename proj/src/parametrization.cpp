#include "cuboid/parametrization.hpp"

#include <stdexcept>
#include <utility>

namespace cuboid {

namespace {

const Rational kOne(1);

void require_domain(const ParamUZ& p, const char* what) {
    if (!in_domain_uz(p.u, p.z)) {
        throw std::domain_error(std::string(what) + ": (u,z) outside the open unit square");
    }
}

}  // namespace

bool in_domain_uz(const Rational& u, const Rational& z) {
    const Rational zero(0);
    return u > zero && u < kOne && z > zero && z < kOne;
}

std::pair<Rational, Rational> circle_point(const Rational& u) {
    if (!(u > Rational(0) && u < kOne)) {
        throw std::domain_error("circle_point: u outside (0,1)");
    }
    const Rational u2 = u.squared();
    const Rational den = kOne + u2;
    return {Rational(2) * u / den, (kOne - u2) / den};
}

ForwardPoint forward(const ParamUZ& p) {
    require_domain(p, "forward");
    const auto [x1, d1] = circle_point(p.u);
    const Rational u2 = p.u.squared();
    const Rational z2 = p.z.squared();
    const Rational den = (kOne + u2) * (kOne + z2);
    const Rational x2 = Rational(2) * p.z * (kOne - u2) / den;
    const Rational x3 = (kOne - u2) * (kOne - z2) / den;
    return ForwardPoint{x1, x2, x3, d1};
}

Rational d3_squared(const ParamUZ& p) {
    require_domain(p, "d3_squared");
    const Rational u2 = p.u.squared();
    const Rational z2 = p.z.squared();
    const Rational den = (kOne + u2) * (kOne + z2);
    return Rational(4) * (u2 * z2 + kOne) * (u2 + z2) / den.squared();
}

Rational d2_squared(const ParamUZ& p) {
    require_domain(p, "d2_squared");
    const Rational u2 = p.u.squared();
    const Rational z2 = p.z.squared();
    const Rational prod = (kOne + u2) * (kOne + z2);
    const Rational cross = Rational(2) * p.z * (kOne - u2);
    return (prod + cross) * (prod - cross) / prod.squared();
}

SquaredAB ab_squared(const ParamUZ& p) {
    require_domain(p, "ab_squared");
    const Rational u2 = p.u.squared();
    const Rational z2 = p.z.squared();
    const Rational a_sq = (u2 + z2) / (u2 * z2 + kOne);
    const Rational prod = (kOne + u2) * (kOne + z2);
    const Rational cross = Rational(2) * p.z * (kOne - u2);
    const Rational b_sq = (prod - cross) / (prod + cross);
    return SquaredAB{a_sq, b_sq};
}

AuxQuantities aux_from_uz(const ParamUZ& p) {
    require_domain(p, "aux_from_uz");
    const Rational u2 = p.u.squared();
    const Rational z2 = p.z.squared();
    return AuxQuantities{
        u2 * z2 + kOne,
        (kOne + u2) * (kOne + z2) + Rational(2) * p.z * (kOne - u2),
        z2,
    };
}

std::pair<Rational, Rational> xi_zeta_from_ab(const Rational& z, const Rational& u,
                                              const Rational& a_sq, const Rational& b_sq) {
    const Rational one_minus_bsq = kOne - b_sq;
    const Rational one_plus_asq = kOne + a_sq;
    if (one_minus_bsq.is_zero() || one_plus_asq.is_zero()) {
        throw std::domain_error("xi_zeta_from_ab: zero denominator");
    }
    const Rational common = Rational(2) * z * (kOne - u.squared());
    const Rational xi = common * (kOne + b_sq) / (one_minus_bsq * one_plus_asq);
    const Rational zeta = Rational(2) * common / one_minus_bsq;
    return {xi, zeta};
}

Rational theta_from_a_u(const Rational& u_sq, const Rational& a_sq) {
    const Rational den = kOne - a_sq * u_sq;
    if (den.is_zero()) {
        throw std::domain_error("theta_from_a_u: a^2 u^2 = 1");
    }
    return (a_sq - u_sq) / den;
}

Rational z_from_abu(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq) {
    const Rational den = Rational(2) * (kOne + b_sq) * (kOne - a_sq * u_sq);
    if (den.is_zero()) {
        throw std::domain_error("z_from_abu: zero denominator");
    }
    return (kOne + u_sq) * (kOne - b_sq) * (kOne + a_sq) / den;
}

Rational recover_d2(const ParamUZ& p, const Rational& b) {
    const SquaredAB sq = ab_squared(p);
    if (b.sign() <= 0 || b.squared() != sq.b_sq) {
        throw std::domain_error("recover_d2: b does not square to b^2(u,z)");
    }
    const AuxQuantities aux = aux_from_uz(p);
    const Rational prod = (kOne + p.u.squared()) * (kOne + p.z.squared());
    return aux.zeta * b / prod;
}

Rational recover_d3(const ParamUZ& p, const Rational& a) {
    const SquaredAB sq = ab_squared(p);
    if (a.sign() <= 0 || a.squared() != sq.a_sq) {
        throw std::domain_error("recover_d3: a does not square to a^2(u,z)");
    }
    const AuxQuantities aux = aux_from_uz(p);
    const Rational prod = (kOne + p.u.squared()) * (kOne + p.z.squared());
    return Rational(2) * aux.xi * a / prod;
}

std::pair<Rational, Rational> recover_d2_d3(const ParamUZ& p, const Rational& a, const Rational& b) {
    return {recover_d2(p, b), recover_d3(p, a)};
}

bool in_domain_ab(const Rational& a, const Rational& b) {
    const Rational zero(0);
    if (!(a > zero && a < kOne && b > zero && b < kOne)) {
        return false;
    }
    // b > -1 + 2/(a+1)  <=>  ab + a + b > 1  (a+1 > 0).
    return a * b + a + b > kOne;
}

Containment in_domain_ab_squares(const Rational& a_sq, const Rational& b_sq, unsigned max_bits) {
    const Rational zero(0);
    // Side conditions are exact on the squares: 0 < x < 1 iff 0 < x^2 < 1.
    if (!(a_sq > zero && a_sq < kOne && b_sq > zero && b_sq < kOne)) {
        return Containment::Outside;
    }
    for (unsigned bits = 32;; bits *= 2) {
        if (bits > max_bits) {
            bits = max_bits;
        }
        const Interval a = sqrt_enclosure(a_sq, bits);
        const Interval b = sqrt_enclosure(b_sq, bits);
        const Interval ab = sqrt_enclosure(a_sq * b_sq, bits);
        // s = ab + a + b - 1, outward rounded.
        const Rational lo = ab.lo + a.lo + b.lo - kOne;
        const Rational hi = ab.hi + a.hi + b.hi - kOne;
        if (lo > zero) {
            return Containment::Inside;
        }
        if (hi < zero) {
            return Containment::Outside;
        }
        if (bits == max_bits) {
            return Containment::Indeterminate;
        }
    }
}

FaceLabeling relabel_face_cuboid(const TripleClassification& t) {
    if (t.cls != CuboidClass::FaceCuboid || !t.d) {
        throw std::domain_error("relabel_face_cuboid: classification is not a face cuboid");
    }
    // Exactly one face diagonal is missing; move its two adjacent edges into
    // the (a,b) slots, larger first.
    Integer a, b, c;
    if (!t.alpha) {  // (b,c) face missing
        a = t.b;
        b = t.c;
        c = t.a;
    } else if (!t.beta) {  // (c,a) face missing
        a = t.c;
        b = t.a;
        c = t.b;
    } else {  // (a,b) face missing
        a = t.a;
        b = t.b;
        c = t.c;
    }
    if (a < b) {
        std::swap(a, b);
    }
    const auto alpha = is_perfect_square(b * b + c * c);
    const auto beta = is_perfect_square(c * c + a * a);
    if (!alpha || !beta) {
        throw std::logic_error("relabel_face_cuboid: relabeled diagonals not integral");
    }
    return FaceLabeling{a, b, c, *alpha, *beta, *t.d};
}

ParamUZ lift_face_cuboid(const TripleClassification& t) {
    const FaceLabeling f = relabel_face_cuboid(t);
    // u inverts x1 = 2u/(1+u^2) with d1 = (1-u^2)/(1+u^2):
    //   u = x1/(1+d1) = a/(d+alpha).
    // z inverts x2/d1 = 2z/(1+z^2):  z = x2/(d1+x3) = b/(alpha+c).
    const ParamUZ p{Rational(f.a, f.d + f.alpha), Rational(f.b, f.alpha + f.c)};
    if (!in_domain_uz(p.u, p.z)) {
        throw std::logic_error("lift_face_cuboid: lift fell outside the domain");
    }
    return p;
}

}  // namespace cuboid
