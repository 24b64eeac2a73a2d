#pragma once

/* Dense univariate polynomials over Z, constant term first. The zero
 * polynomial has an empty coefficient vector; otherwise the leading
 * coefficient is nonzero. Minimal polynomials are additionally primitive
 * (content 1) with positive leading coefficient.
 */

#include <initializer_list>
#include <string>
#include <vector>

#include "expeq/interval.hpp"
#include "expeq/rational.hpp"

namespace expeq {

class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }
    IntPolynomial(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.emplace_back(v);
        trim();
    }

    static IntPolynomial constant(Integer v) {
        IntPolynomial p;
        p.c_.push_back(std::move(v));
        p.trim();
        return p;
    }
    static IntPolynomial x_power(int k) {
        std::vector<Integer> c(static_cast<size_t>(k) + 1, Integer(0));
        c.back() = Integer(1);
        return IntPolynomial(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Integer& coeff(int i) const { return c_[static_cast<size_t>(i)]; }
    const Integer& lead() const { return c_.back(); }
    const std::vector<Integer>& coeffs() const { return c_; }
    bool is_one() const { return degree() == 0 && c_[0].is_one(); }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a);
    IntPolynomial mul_scalar(const Integer& k) const;

    IntPolynomial derivative() const;
    Integer content() const; // nonnegative; 0 for the zero polynomial
    IntPolynomial primitive_part() const;
    // Primitive, positive leading coefficient (minimal-polynomial normal form).
    IntPolynomial normalized() const;

    // p(-x), p(x)/x^v for x^v || p, reversed coefficients x^n p(1/x).
    IntPolynomial negate_var() const;
    IntPolynomial reversed() const;
    int valuation() const; // largest v with x^v | p; 0 for p(0) != 0; -1 for zero poly
    IntPolynomial shift_down(int v) const;

    Integer eval(const Integer& x) const;
    Rational eval(const Rational& x) const;
    ComplexBox eval(const ComplexBox& z, Prec p) const;
    RealInterval eval(const RealInterval& x, Prec p) const;

    Integer norm2_squared() const;     // sum of squared coefficients
    Integer height() const;            // max |coefficient|

    // Exact division a / b over Q with integrality and zero-remainder check.
    static bool try_divide(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& quotient);
    static IntPolynomial divexact(const IntPolynomial& a, const IntPolynomial& b);

    // Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r.
    static IntPolynomial pseudo_rem(const IntPolynomial& a, const IntPolynomial& b);

    static IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);
    IntPolynomial squarefree_part() const;
    // Yun decomposition: returns list of (factor, multiplicity), factors squarefree,
    // pairwise coprime, product of factor^mult = primitive part (up to sign).
    std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition() const;

    std::string str(const std::string& var = "x") const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Integer> c_;
};

// Determinant by fraction-free Bareiss elimination (consumes the matrix).
Integer det_bareiss(std::vector<std::vector<Integer>> m);

// q-th cyclotomic polynomial.
IntPolynomial cyclotomic(unsigned long q);

// Upper bound on |coefficients| of any integer factor of f of degree <= m,
// multiplied by |lc(f)| (Mignotte-style, used for the Hensel lifting modulus
// and the brute-force irreducibility oracle).
Integer factor_coeff_bound(const IntPolynomial& f, int m);

} // namespace expeq
