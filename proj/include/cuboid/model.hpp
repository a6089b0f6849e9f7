// Integer cuboids: septuple verification, classification of near-perfect
// triples, and the normalization to/from rational unit-vector points.
#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cuboid/arith.hpp"

namespace cuboid {

// Edges a,b,c; face diagonals alpha (bc face), beta (ca face), gamma (ab
// face); space diagonal d. All strictly positive.
struct CuboidSeptuple {
    Integer a, b, c;
    Integer alpha, beta, gamma;
    Integer d;
};

/// True iff a^2+b^2=gamma^2, b^2+c^2=alpha^2, c^2+a^2=beta^2 and
/// a^2+b^2+c^2=d^2 all hold exactly. Throws std::invalid_argument if any
/// entry is non-positive.
bool verify_perfect(const CuboidSeptuple& s);

enum class CuboidClass {
    Perfect,     // all three face diagonals and the space diagonal integral
    EulerBrick,  // three face diagonals, space diagonal irrational
    FaceCuboid,  // space diagonal plus exactly two face diagonals
    Other,
};

const char* to_string(CuboidClass c);

// Which of the four diagonal sums of an edge triple are perfect squares,
// with the integer roots where they exist.
struct TripleClassification {
    Integer a, b, c;
    std::optional<Integer> gamma;  // sqrt(a^2+b^2)
    std::optional<Integer> alpha;  // sqrt(b^2+c^2)
    std::optional<Integer> beta;   // sqrt(c^2+a^2)
    std::optional<Integer> d;      // sqrt(a^2+b^2+c^2)
    CuboidClass cls = CuboidClass::Other;

    int face_count() const {
        return static_cast<int>(gamma.has_value()) + static_cast<int>(alpha.has_value()) +
               static_cast<int>(beta.has_value());
    }
};

/// Classifies an edge triple. Throws std::invalid_argument unless a,b,c >= 1.
TripleClassification classify_triple(const Integer& a, const Integer& b, const Integer& c);

// Normalized coordinates of a perfect cuboid: x_i = edge/d, d_i = face
// diagonal/d. Valid instances satisfy x1^2+x2^2+x3^2 = 1 and the three
// face-diagonal relations exactly.
struct UnitVectorPoint {
    Rational x1, x2, x3;
    Rational d1, d2, d3;
};

/// True iff all six entries are positive and the unit-norm plus the three
/// face-diagonal equations hold exactly.
bool satisfies_unit_equations(const UnitVectorPoint& p);

/// (a/d, b/d, c/d, alpha/d, beta/d, gamma/d). Throws std::domain_error
/// unless verify_perfect(s).
UnitVectorPoint normalize(const CuboidSeptuple& s);

/// Scales p by the LCM of the six denominators back to an integer septuple.
/// Throws std::domain_error unless satisfies_unit_equations(p); throws
/// std::logic_error if a scaled product fails to be integral (impossible for
/// valid input).
CuboidSeptuple denormalize(const UnitVectorPoint& p);

/// Multiplies each value by the LCM d of the reduced denominators; returns
/// the integer values and d. Throws std::invalid_argument on an empty span.
std::pair<std::vector<Integer>, Integer> scale_to_integers(std::span<const Rational> values);

}  // namespace cuboid
