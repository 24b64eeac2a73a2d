#pragma once

/* Polynomials and rational functions in formal transcendental symbols with
 * algebraic-number coefficients. Symbols are identified by name; the ordered
 * monomial representation keeps every operation deterministic.
 *
 * Reserved names: "@2pii" denotes 2*pi*i (specializations may send it to 0),
 * "@b<k>" denotes the k-th basis entry of the owning equation, and
 * "@exp:<name>" denotes exp(value of <name>).
 */

#include <functional>
#include <map>
#include <string>

#include "expeq/bipoly.hpp"

namespace expeq {

inline const std::string kTwoPiISymbol = "@2pii";
inline std::string basis_symbol(size_t j) { return "@b" + std::to_string(j); }
inline std::string exp_symbol(const std::string& name) { return "@exp:" + name; }

using Monomial = std::map<std::string, int>; // symbol -> exponent >= 1

class FormalPoly {
public:
    using TermMap = std::map<Monomial, AlgebraicNumber>;

    FormalPoly() = default;
    static FormalPoly constant(AlgebraicNumber a) {
        FormalPoly p;
        p.set({}, std::move(a));
        return p;
    }
    static FormalPoly constant(const Rational& q) { return constant(AlgebraicNumber(q)); }
    static FormalPoly symbol(const std::string& name, int exponent = 1) {
        FormalPoly p;
        p.set({{name, exponent}}, AlgebraicNumber(Rational(1)));
        return p;
    }

    void set(Monomial m, AlgebraicNumber v) {
        if (v.is_zero()) {
            terms_.erase(m);
        } else {
            terms_.insert_or_assign(std::move(m), std::move(v));
        }
    }
    void add_term(const Monomial& m, const AlgebraicNumber& v, const AlgContext& ctx = {});

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    AlgebraicNumber constant_value() const; // pre: is_constant()

    FormalPoly plus(const FormalPoly& o, const AlgContext& ctx = {}) const;
    FormalPoly times(const FormalPoly& o, const AlgContext& ctx = {}) const;
    FormalPoly negated(const AlgContext& ctx = {}) const;
    FormalPoly scaled(const AlgebraicNumber& k, const AlgContext& ctx = {}) const;
    FormalPoly pow(unsigned long e, const AlgContext& ctx = {}) const;

    bool equals(const FormalPoly& o, const AlgContext& ctx = {}) const;

    // All distinct symbols appearing.
    std::vector<std::string> symbols() const;
    bool mentions(const std::string& name) const;
    int degree_in(const std::string& name) const;

    // Substitute one symbol by a polynomial (expands powers).
    FormalPoly substituted(const std::string& name, const FormalPoly& repl, const AlgContext& ctx = {}) const;

    // Full specialization; every symbol appearing must be assigned.
    AlgebraicNumber specialize(const std::map<std::string, AlgebraicNumber>& assignment,
                               const AlgContext& ctx = {}) const;

    // Certified enclosure given symbol enclosures.
    ComplexBox eval_box(const std::function<ComplexBox(const std::string&, Prec)>& env, Prec p,
                        const AlgContext& ctx = {}) const;

    std::string str() const;

private:
    TermMap terms_;
};

class FormalCoefficient {
public:
    FormalCoefficient() : num_(), den_(FormalPoly::constant(Rational(1))) {}
    explicit FormalCoefficient(FormalPoly num)
        : num_(std::move(num)), den_(FormalPoly::constant(Rational(1))) {}
    FormalCoefficient(FormalPoly num, FormalPoly den, const AlgContext& ctx = {});

    static FormalCoefficient constant(const Rational& q) {
        return FormalCoefficient(FormalPoly::constant(q));
    }
    static FormalCoefficient constant(const AlgebraicNumber& a) {
        return FormalCoefficient(FormalPoly::constant(a));
    }
    static FormalCoefficient symbol(const std::string& name, int exponent = 1) {
        if (exponent >= 0) return FormalCoefficient(FormalPoly::symbol(name, exponent));
        return {FormalPoly::constant(Rational(1)), FormalPoly::symbol(name, -exponent), {}};
    }

    const FormalPoly& num() const { return num_; }
    const FormalPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool has_denominator() const { return !den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    AlgebraicNumber constant_value(const AlgContext& ctx = {}) const;

    FormalCoefficient plus(const FormalCoefficient& o, const AlgContext& ctx = {}) const;
    FormalCoefficient times(const FormalCoefficient& o, const AlgContext& ctx = {}) const;
    FormalCoefficient negated(const AlgContext& ctx = {}) const;
    FormalCoefficient inverse(const AlgContext& ctx = {}) const;

    bool equals(const FormalCoefficient& o, const AlgContext& ctx = {}) const;

    std::vector<std::string> symbols() const;
    FormalCoefficient substituted(const std::string& name, const FormalPoly& repl,
                                  const AlgContext& ctx = {}) const;

    // pre: denominator does not specialize to zero (cleared upstream).
    AlgebraicNumber specialize(const std::map<std::string, AlgebraicNumber>& assignment,
                               const AlgContext& ctx = {}) const;

    ComplexBox eval_box(const std::function<ComplexBox(const std::string&, Prec)>& env, Prec p,
                        const AlgContext& ctx = {}) const;

    std::string str() const;

private:
    void normalize(const AlgContext& ctx);
    FormalPoly num_, den_;
};

template <>
struct CoeffOps<FormalCoefficient> {
    static bool is_zero(const FormalCoefficient& a) { return a.is_zero(); }
    static FormalCoefficient add(const FormalCoefficient& a, const FormalCoefficient& b,
                                 const AlgContext& c) {
        return a.plus(b, c);
    }
    static FormalCoefficient mul(const FormalCoefficient& a, const FormalCoefficient& b,
                                 const AlgContext& c) {
        return a.times(b, c);
    }
    static FormalCoefficient neg(const FormalCoefficient& a, const AlgContext& c) { return a.negated(c); }
    static FormalCoefficient from_long(long v) { return FormalCoefficient::constant(Rational(v)); }
    static ComplexBox to_box(const FormalCoefficient&, Prec, const AlgContext&) {
        throw InvalidInput("formal coefficients need a symbol environment for interval evaluation");
    }
    static std::string str(const FormalCoefficient& a) { return a.str(); }
};

} // namespace expeq
