#pragma once

/* Logarithmic Weil height, Mahler measure, and the certified affine upper
 * bounds used by the finiteness engine:
 *   a1: h(m . c)   <= A * log|m|_1 + C   for all nonzero integer m
 *   a2: h(gamma^m) <= A * |m|_1          (C = 0)
 *   a4: h(alpha)   <= A * h(beta) + C    for f(alpha, beta) = 0
 * All slopes/offsets are upper-rounded dyadics, so every bound is certified.
 */

#include <vector>

#include "expeq/bipoly.hpp"

namespace expeq {

struct HeightValue {
    RealInterval value;  // encloses the exact height (nats), lower >= 0
    Prec precision_bits; // working precision that produced it

    const Real& lower() const { return value.lo(); }
    const Real& upper() const { return value.hi(); }
};

enum class AffineArg { log_of_one_norm, one_norm, height_of_partner };

struct AffineBound {
    Real slope;  // A, upper-rounded
    Real offset; // C, upper-rounded
    AffineArg argument_kind;
};

enum class A4Direction { x_from_y, y_from_x };

HeightValue weil_height(const AlgebraicNumber& a, const PrecisionContext& ctx = {});

// Encloses |lc(f)| * prod max(1, |root|) over complex roots with multiplicity.
HeightValue mahler_measure(const IntPolynomial& f, const PrecisionContext& ctx = {});

AffineBound a1_constant(const std::vector<AlgebraicNumber>& c, const PrecisionContext& ctx = {});
AffineBound a2_constant(const std::vector<AlgebraicNumber>& gamma, const PrecisionContext& ctx = {});
AffineBound a4_bound(const BivariatePolynomial<AlgebraicNumber>& f, A4Direction direction,
                     const PrecisionContext& ctx = {});

} // namespace expeq
