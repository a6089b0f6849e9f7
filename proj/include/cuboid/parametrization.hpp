// The rational parametrization of the unit-vector coordinates by two
// parameters (u,z) in the open unit square, the derived squared quantities
// a^2, b^2, the xi/zeta/theta elimination system, and membership tests for
// the parameter domain and its curvilinear-triangle image.
#pragma once

#include <utility>

#include "cuboid/arith.hpp"
#include "cuboid/model.hpp"

namespace cuboid {

struct ParamUZ {
    Rational u;
    Rational z;
};

/// True iff 0 < u < 1 and 0 < z < 1 (strict; boundary excluded).
bool in_domain_uz(const Rational& u, const Rational& z);

/// (x1, d1) = (2u/(1+u^2), (1-u^2)/(1+u^2)); x1^2 + d1^2 = 1.
/// Throws std::domain_error when u is outside (0,1).
std::pair<Rational, Rational> circle_point(const Rational& u);

struct ForwardPoint {
    Rational x1, x2, x3, d1;
};

/// The two-parameter map onto (x1, x2, x3, d1). Throws std::domain_error
/// outside the domain.
ForwardPoint forward(const ParamUZ& p);

/// 4(u^2 z^2 + 1)(u^2 + z^2) / ((1+u^2)^2 (1+z^2)^2) = x1^2 + x2^2.
Rational d3_squared(const ParamUZ& p);

/// ((1+u^2)(1+z^2) + 2z(1-u^2)) ((1+u^2)(1+z^2) - 2z(1-u^2))
///   / ((1+u^2)^2 (1+z^2)^2) = x3^2 + x1^2.
Rational d2_squared(const ParamUZ& p);

// a^2 and b^2 as exact rationals. a and b themselves are irrational in
// general; all downstream formulas use only even powers, so squares are the
// primary representation.
struct SquaredAB {
    Rational a_sq;
    Rational b_sq;
};

/// a^2 = (u^2+z^2)/(u^2 z^2 + 1), b^2 = ((1+u^2)(1+z^2) - 2z(1-u^2)) / zeta.
/// Both lie strictly in (0,1) on the domain.
SquaredAB ab_squared(const ParamUZ& p);

struct AuxQuantities {
    Rational xi;    // u^2 z^2 + 1
    Rational zeta;  // (1+u^2)(1+z^2) + 2z(1-u^2)
    Rational theta; // z^2
};

AuxQuantities aux_from_uz(const ParamUZ& p);

/// Solution of the linear system for (xi, zeta) in terms of z, u, a^2, b^2:
/// xi = 2z(1-u^2)(1+b^2) / ((1-b^2)(1+a^2)), zeta = 4z(1-u^2)/(1-b^2).
/// Throws std::domain_error when a denominator vanishes (b_sq = 1 or
/// a_sq = -1).
std::pair<Rational, Rational> xi_zeta_from_ab(const Rational& z, const Rational& u,
                                              const Rational& a_sq, const Rational& b_sq);

/// theta = (a^2 - u^2) / (1 - a^2 u^2). Throws std::domain_error when
/// a_sq * u_sq = 1.
Rational theta_from_a_u(const Rational& u_sq, const Rational& a_sq);

/// z = (1+u^2)(1-b^2)(1+a^2) / (2(1+b^2)(1 - a^2 u^2)). Throws
/// std::domain_error on a zero denominator.
Rational z_from_abu(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq);

/// d2 = zeta * b / ((1+u^2)(1+z^2)). Requires b > 0 with b^2 = b_sq of
/// ab_squared(p); throws std::domain_error otherwise.
Rational recover_d2(const ParamUZ& p, const Rational& b);

/// d3 = 2(u^2 z^2 + 1) * a / ((1+u^2)(1+z^2)). Requires a > 0 with
/// a^2 = a_sq of ab_squared(p); throws std::domain_error otherwise.
Rational recover_d3(const ParamUZ& p, const Rational& a);

std::pair<Rational, Rational> recover_d2_d3(const ParamUZ& p, const Rational& a, const Rational& b);

/// Exact membership in the image domain for rational coordinates:
/// 0 < a < 1, 0 < b < 1 and b > -1 + 2/(a+1).
bool in_domain_ab(const Rational& a, const Rational& b);

enum class Containment { Inside, Outside, Indeterminate };

/// Membership of (sqrt(a_sq), sqrt(b_sq)) in the image domain, decided with
/// outward-rounded interval arithmetic. Indeterminate when the point cannot
/// be separated from the boundary within max_bits of refinement.
Containment in_domain_ab_squares(const Rational& a_sq, const Rational& b_sq,
                                 unsigned max_bits = 128);

// A face cuboid relabeled so the missing face diagonal is the (a,b) face:
// gamma is irrational, alpha = sqrt(b^2+c^2) and beta = sqrt(c^2+a^2) are
// integers, and a >= b.
struct FaceLabeling {
    Integer a, b, c;
    Integer alpha, beta, d;
};

/// Relabels a FACE_CUBOID classification into the lifting convention.
/// Throws std::domain_error unless the class is FaceCuboid with an integer
/// space diagonal.
FaceLabeling relabel_face_cuboid(const TripleClassification& t);

/// Inverts the two tangent-half-angle maps on a face cuboid:
/// u = x1/(1+d1), z = x2/(d1+x3) with x_i = edge/d, d1 = alpha/d.
/// The result lies in the domain and forward() reproduces the normalized
/// coordinates exactly.
ParamUZ lift_face_cuboid(const TripleClassification& t);

}  // namespace cuboid
