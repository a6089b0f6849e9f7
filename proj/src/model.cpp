#include "cuboid/model.hpp"

#include <array>
#include <stdexcept>

namespace cuboid {

namespace {

void require_positive(const Integer& v, const char* what) {
    if (sgn(v) <= 0) {
        throw std::invalid_argument(std::string(what) + ": entries must be positive");
    }
}

}  // namespace

bool verify_perfect(const CuboidSeptuple& s) {
    for (const Integer* v : {&s.a, &s.b, &s.c, &s.alpha, &s.beta, &s.gamma, &s.d}) {
        require_positive(*v, "verify_perfect");
    }
    const Integer a2 = s.a * s.a, b2 = s.b * s.b, c2 = s.c * s.c;
    return a2 + b2 == s.gamma * s.gamma && b2 + c2 == s.alpha * s.alpha &&
           c2 + a2 == s.beta * s.beta && a2 + b2 + c2 == s.d * s.d;
}

const char* to_string(CuboidClass c) {
    switch (c) {
        case CuboidClass::Perfect: return "PERFECT";
        case CuboidClass::EulerBrick: return "EULER_BRICK";
        case CuboidClass::FaceCuboid: return "FACE_CUBOID";
        case CuboidClass::Other: return "OTHER";
    }
    return "OTHER";
}

TripleClassification classify_triple(const Integer& a, const Integer& b, const Integer& c) {
    require_positive(a, "classify_triple");
    require_positive(b, "classify_triple");
    require_positive(c, "classify_triple");

    TripleClassification t;
    t.a = a;
    t.b = b;
    t.c = c;
    const Integer a2 = a * a, b2 = b * b, c2 = c * c;
    t.gamma = is_perfect_square(a2 + b2);
    t.alpha = is_perfect_square(b2 + c2);
    t.beta = is_perfect_square(c2 + a2);
    t.d = is_perfect_square(a2 + b2 + c2);

    const int faces = t.face_count();
    if (faces == 3 && t.d) {
        t.cls = CuboidClass::Perfect;
    } else if (faces == 3) {
        t.cls = CuboidClass::EulerBrick;
    } else if (faces == 2 && t.d) {
        t.cls = CuboidClass::FaceCuboid;
    } else {
        t.cls = CuboidClass::Other;
    }
    return t;
}

bool satisfies_unit_equations(const UnitVectorPoint& p) {
    for (const Rational* r : {&p.x1, &p.x2, &p.x3, &p.d1, &p.d2, &p.d3}) {
        if (r->sign() <= 0) {
            return false;
        }
    }
    const Rational x1s = p.x1.squared(), x2s = p.x2.squared(), x3s = p.x3.squared();
    return x1s + x2s + x3s == Rational(1) && x2s + x3s == p.d1.squared() &&
           x3s + x1s == p.d2.squared() && x1s + x2s == p.d3.squared();
}

UnitVectorPoint normalize(const CuboidSeptuple& s) {
    if (!verify_perfect(s)) {
        throw std::domain_error("normalize: septuple is not a perfect cuboid");
    }
    return UnitVectorPoint{Rational(s.a, s.d),     Rational(s.b, s.d),    Rational(s.c, s.d),
                           Rational(s.alpha, s.d), Rational(s.beta, s.d), Rational(s.gamma, s.d)};
}

CuboidSeptuple denormalize(const UnitVectorPoint& p) {
    if (!satisfies_unit_equations(p)) {
        throw std::domain_error("denormalize: point violates the unit-vector equations");
    }
    const std::array<Rational, 6> vals = {p.x1, p.x2, p.x3, p.d1, p.d2, p.d3};
    auto [scaled, d] = scale_to_integers(vals);
    CuboidSeptuple s{scaled[0], scaled[1], scaled[2], scaled[3], scaled[4], scaled[5], d};
    if (!verify_perfect(s)) {
        throw std::logic_error("denormalize: scaled septuple fails verification");
    }
    return s;
}

std::pair<std::vector<Integer>, Integer> scale_to_integers(std::span<const Rational> values) {
    if (values.empty()) {
        throw std::invalid_argument("scale_to_integers: empty span");
    }
    std::vector<Integer> dens;
    dens.reserve(values.size());
    for (const Rational& r : values) {
        dens.push_back(r.den());
    }
    const Integer d = lcm_many(dens);
    std::vector<Integer> scaled;
    scaled.reserve(values.size());
    for (const Rational& r : values) {
        Integer q;
        Integer rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), Integer(r.num() * d).get_mpz_t(), r.den().get_mpz_t());
        if (sgn(rem) != 0) {
            throw std::logic_error("scale_to_integers: non-integral product");
        }
        scaled.push_back(q);
    }
    return {std::move(scaled), d};
}

}  // namespace cuboid
