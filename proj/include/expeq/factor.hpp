#pragma once

/* Univariate factorization over Z and irreducibility testing.
 * Zassenhaus route: squarefree (Yun) -> factor mod p (Cantor-Zassenhaus)
 * -> Hensel lift past the Mignotte bound -> subset recombination.
 */

#include <utility>
#include <vector>

#include "expeq/intpoly.hpp"

namespace expeq {

// Irreducible factors with multiplicities; content and sign are dropped
// (factors are normalized: primitive, positive leading coefficient).
std::vector<std::pair<IntPolynomial, int>> factor_over_Z(const IntPolynomial& f);

// True iff poly (deg >= 1) admits no factorization into two integer
// polynomials of degree >= 1. Constants are reported irreducible=false
// only via precondition poly nonzero, degree >= 1 being the caller's duty;
// degree-0 input returns false.
bool irreducible_over_Q(const IntPolynomial& poly);

} // namespace expeq
