#pragma once

/* Multiplicative-independence certification for rational vectors, the lower
 * height constant a3 via a polyhedral norm over places (2^t orthant LPs on an
 * exact rational simplex), integer-relation detection by lattice reduction,
 * and exact rational kernel computation.
 */

#include <map>
#include <optional>
#include <vector>

#include "expeq/height.hpp"
#include "expeq/interval.hpp"
#include "expeq/rational.hpp"

namespace expeq {

// Prime factorization q = sign * prod p^e (e in Z). Throws GuardExceeded if a
// cofactor resists trial division and primality certification.
std::map<Integer, int> factor_rational(const Rational& q);

struct PlaceMatrix {
    std::vector<Integer> primes;                   // finite places, ascending
    std::vector<std::vector<Integer>> valuations;  // valuations[p][i] = v_p(gamma_i), exact
    std::vector<RealInterval> archimedean;         // log|gamma_i| enclosures
    Prec bits;
};

PlaceMatrix place_matrix(const std::vector<Rational>& gamma, Prec bits);

struct MultIndependence {
    bool independent;
    std::vector<Integer> relation; // nonempty iff dependent: gamma^relation = 1 exactly
};

// Entries must be nonzero rationals.
MultIndependence mult_independent(const std::vector<Rational>& gamma);

// Certified positive lower bound on inf h(gamma^m)/|m|_1 over nonzero integer
// m; .lo() is the certified bound, .hi() an upper-estimate from the deflated
// relaxation. Pre: multiplicatively independent, no entry +-1, t <= 6.
RealInterval a3_constant(const std::vector<Rational>& gamma, const PrecisionContext& ctx = {});

// min over 0 < |m|_1 <= M of h(gamma^m)/|m|_1 (exact rational height path),
// as an enclosure; always >= the certified a3.
RealInterval brute_force_a3(const std::vector<Rational>& gamma, long M, Prec bits = 128);

struct RelationCandidate {
    std::vector<Integer> coefficients;
    RealInterval residual_abs; // |sum m_i z_i| enclosure from the input boxes
    enum class Status { numeric_only, exactly_verified } status = Status::numeric_only;
};

// Numeric screening via LLL on the scaled-midpoint relation lattice.
// Completeness is NOT promised; candidates are evidence, not proof.
std::vector<RelationCandidate> find_integer_relations(const std::vector<ComplexBox>& values,
                                                      const Integer& coeff_bound,
                                                      const PrecisionContext& ctx = {});

// LLL reduction (delta = 3/4) of integer row vectors, exact rational
// Gram-Schmidt. In-place; rows keep spanning the same lattice.
void lll_reduce(std::vector<std::vector<Integer>>& basis);

// Exact kernel basis of the row space, reduced echelon form.
std::vector<std::vector<Rational>> v_space_kernel(const std::vector<std::vector<Rational>>& rows);

/* exact rational simplex: max c.x s.t. A x <= b, x >= 0, with b >= 0 so the
 * origin is feasible. */
struct SimplexResult {
    enum class Status { optimal, unbounded } status;
    Rational value;
    std::vector<Rational> x;
};

SimplexResult simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                          const std::vector<Rational>& c);

} // namespace expeq
