#pragma once

/* Certified complex root isolation for integer polynomials.
 *
 * Aberth-Ehrlich simultaneous iteration on the squarefree part produces
 * approximations; each is then certified and refined by an interval Newton
 * (ball) contraction. Stalls fall back to shrinking the candidate radius,
 * and the whole pass escalates working precision until every root has a
 * certified, pairwise-disjoint box of radius <= target. Real input yields a
 * conjugate-symmetric output (real roots get exactly-real boxes).
 */

#include <vector>

#include "expeq/intpoly.hpp"

namespace expeq {

// One box per distinct root (i.e. per root of the squarefree part), pairwise
// disjoint, each of radius <= target_radius. Ordered by (re, im) of centers.
std::vector<ComplexBox> isolate_roots(const IntPolynomial& poly, const Real& target_radius,
                                      PrecisionContext ctx = {});

// Contracts an isolating box of `poly` around its unique root until the
// radius is <= target_radius. The designated root never changes.
ComplexBox refine_root_box(const IntPolynomial& poly, const ComplexBox& isolating,
                           const Real& target_radius, PrecisionContext ctx = {});

} // namespace expeq
