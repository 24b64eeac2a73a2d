#pragma once

/* Exact algebraic numbers: irreducible integer minimal polynomial plus an
 * isolating complex box designating one root. Field arithmetic goes through
 * bivariate resultants (interpolation + fraction-free Sylvester determinants),
 * factorization of the resultant, and certified selection of the factor/root
 * matching the interval image of the operands. Degree-1 values take exact
 * rational fast paths throughout.
 */

#include <functional>
#include <string>
#include <vector>

#include "expeq/factor.hpp"
#include "expeq/intpoly.hpp"
#include "expeq/roots.hpp"

namespace expeq {

struct AlgContext {
    int degree_cap = 64;
    PrecisionContext prec{};
};

enum class AlgOp { add, sub, mul, div };

class AlgebraicNumber {
public:
    AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
    explicit AlgebraicNumber(const Rational& q);
    // Validated construction: minpoly must be irreducible (normalized form) and
    // the box must designate exactly one of its roots.
    AlgebraicNumber(IntPolynomial minpoly, ComplexBox box, const PrecisionContext& ctx = {});

    const IntPolynomial& minpoly() const { return minpoly_; }
    const ComplexBox& isolating_box() const { return box_; }
    int degree() const { return minpoly_.degree(); }

    bool is_rational() const { return minpoly_.degree() == 1; }
    bool is_zero() const { return is_rational() && as_rational().is_zero(); }
    Rational as_rational() const; // pre: is_rational()

    // Isolating box refined to radius <= 2^-bits.
    ComplexBox box(Prec bits, const PrecisionContext& ctx = {}) const;
    ComplexBox box_radius(const Real& target_radius, const PrecisionContext& ctx = {}) const;

    bool equals(const AlgebraicNumber& other, const PrecisionContext& ctx = {}) const;

    // True if the designated root is real / is a root of unity.
    bool is_real(const PrecisionContext& ctx = {}) const;
    bool is_root_of_unity() const;

    std::string str() const;

private:
    IntPolynomial minpoly_;
    ComplexBox box_;
};

AlgebraicNumber alg_arith(const AlgebraicNumber& a, const AlgebraicNumber& b, AlgOp op,
                          const AlgContext& ctx = {});
AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx = {});
AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx = {});
AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx = {});
AlgebraicNumber alg_div(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx = {});
AlgebraicNumber alg_neg(const AlgebraicNumber& a);
AlgebraicNumber alg_inverse(const AlgebraicNumber& a);
AlgebraicNumber alg_pow(const AlgebraicNumber& a, long k, const AlgContext& ctx = {});

// exp(2*pi*i * num/den), an exact root of unity (cyclotomic minimal polynomial).
AlgebraicNumber root_of_unity(const Integer& num, const Integer& den, const PrecisionContext& ctx = {});

// The N-th root of `a` designated by approx (an enclosure of the intended
// root tight enough to single it out; refined internally as needed).
AlgebraicNumber alg_nth_root(const AlgebraicNumber& a, unsigned long n, const ComplexBox& approx,
                             const AlgContext& ctx = {});
// Variant with a precision-indexed enclosure, re-queried while the selection
// escalates.
AlgebraicNumber alg_nth_root(const AlgebraicNumber& a, unsigned long n,
                             const std::function<ComplexBox(Prec)>& approx, const AlgContext& ctx = {});

} // namespace expeq
