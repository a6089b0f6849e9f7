// The characteristic polynomial relating u^2 to a^2 and b^2: an exact
// quadratic in t = u^2 with palindromic coefficients (A = C), its
// homogeneous degree-12 integer form, exact/certified root solving, and the
// inverse map (a^2, b^2) -> (u, z).
#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cuboid/arith.hpp"
#include "cuboid/parametrization.hpp"

namespace cuboid {

// Coefficients of A t^2 + B t + C with t = u^2, as exact functions of
// a^2 and b^2. A = C identically.
struct CharCoefficients {
    Rational A;
    Rational B;
    Rational C;
};

CharCoefficients char_coefficients(const Rational& a_sq, const Rational& b_sq);

/// A u_sq^2 + B u_sq + C; zero exactly when (u, a, b) satisfies the
/// characteristic equation.
Rational char_eval(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq);

/// The homogeneous degree-12 form in (u, a, b, c); an independent
/// transcription, related to char_eval by hom(p,q,r,c) = c^12 *
/// char_eval((p/c)^2, (q/c)^2, (r/c)^2).
Integer char_eval_homogeneous(const Integer& u, const Integer& a, const Integer& b,
                              const Integer& c);

/// LHS - RHS of the pre-polynomial identity
///   (1+u^2)^2 (1-b^2)^2 (1+a^2)^2 / (4 (1+b^2)^2 (1-a^2 u^2)^2)
///     = (a^2-u^2)/(1-a^2 u^2),
/// evaluated exactly. Zero iff char_eval is zero where the denominators are
/// nonzero. Throws std::domain_error when a^2 u^2 = 1 or b^2 = -1.
Rational residual_5_10(const Rational& u_sq, const Rational& a_sq, const Rational& b_sq);

// Certified open bracket lo < root < hi around an irrational root; the
// quadratic has opposite signs at the endpoints.
struct RootInterval {
    Rational lo;
    Rational hi;
};

using RootValue = std::variant<Rational, RootInterval>;

bool root_in_unit_interval(const RootValue& r);

struct CharRoots {
    Rational discriminant;            // B^2 - 4AC
    std::vector<RootValue> roots;     // real roots of A t^2 + B t + C, ascending
    std::optional<RootValue> selection;  // the root with 0 < t < 1, when one exists
};

/// Solves A t^2 + B t + C = 0 for t = u^2. Rational roots are exact;
/// irrational roots are certified brackets of width <= 2^-64. When both
/// roots exist their product is C/A = 1, so at most one lies in (0,1); a
/// boundary double root (t = 1) yields an empty selection. Throws
/// std::domain_error on the degenerate locus A = B = C = 0.
CharRoots solve_char_for_u(const Rational& a_sq, const Rational& b_sq);

/// Rational inversion of the parametrization: when the selected root t is
/// the square of a rational u in (0,1), returns (u, z) with z from the
/// closed-form expression, verified to map back onto (a_sq, b_sq) exactly.
/// Empty when no in-range rational inversion exists. Throws
/// std::domain_error unless both inputs lie in (0,1).
std::optional<ParamUZ> invert_ab(const Rational& a_sq, const Rational& b_sq);

}  // namespace cuboid
