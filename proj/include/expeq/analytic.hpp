#pragma once

/* Certified zero counting and location for F(z) = p(z, e^z) on rectangles,
 * via the argument principle. Boundary segments are subdivided until the
 * image ball of each segment excludes zero with margin; a ball B(c, r) with
 * r < |c| subtends an angle below pi, so per-segment argument increments are
 * unambiguous and the winding number is the certified rounded total.
 */

#include <vector>

#include "expeq/bipoly.hpp"

namespace expeq {

struct Region {
    Rational re0, im0, re1, im1; // re0 < re1, im0 < im1 after normalization

    Region(Rational a_re, Rational a_im, Rational b_re, Rational b_im);
    static Region square(const Rational& half_side) {
        return {-half_side, -half_side, half_side, half_side};
    }
    Rational width() const { return re1 - re0; }
    Rational height() const { return im1 - im0; }
};

struct LocatedZero {
    ComplexBox box;
    bool newton_certified;
};

struct ZeroReport {
    Region region;
    long winding_count;
    std::vector<LocatedZero> zeros; // one entry per zero counted (with multiplicity)
};

// Exact number of zeros of p(z, e^z) inside the region, with multiplicity.
// Throws BoundaryZeroSuspected when boundary nonvanishing cannot be certified.
long count_zeros(const BivariatePolynomial<AlgebraicNumber>& p, const Region& region,
                 const PrecisionContext& ctx = {});

// Quadrisection + interval-Newton polish; sum over zeros equals the winding
// count; multiplicity >= 2 clusters are reported unpolished.
ZeroReport locate_zeros(const BivariatePolynomial<AlgebraicNumber>& p, const Region& region,
                        const PrecisionContext& ctx = {});

// count_zeros over nested squares of the given half-sides (increasing).
std::vector<long> density_report(const BivariatePolynomial<AlgebraicNumber>& p,
                                 const std::vector<Rational>& half_sides,
                                 const PrecisionContext& ctx = {});

} // namespace expeq
