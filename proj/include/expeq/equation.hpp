#pragma once

/* The equation data model for p(x*b, exp(x*b)) = 0 and the structural
 * structural reductions that transform it.
 *
 * Basis entries (LogElement) are logarithm branches of algebraic numbers,
 * rational multiples of 2*pi*i, or formal transcendentals. Coefficients are
 * rational functions in formal symbols; a symbol is either free (certified
 * numeric enclosure supplied by the user) or bound (an exact rational
 * combination of basis entries), which is what makes symbolic zero
 * certificates possible downstream.
 */

#include <optional>
#include <string>
#include <vector>

#include "expeq/formal.hpp"
#include "expeq/lattice.hpp"

namespace expeq {

struct LogElement {
    enum class Kind { log_of_algebraic, two_pi_i_scaled, formal };
    Kind kind = Kind::formal;
    AlgebraicNumber lambda;   // log_of_algebraic: nonzero
    long branch = 0;          // value = log|lambda| + i(Arg lambda + 2*pi*branch)
    Rational two_pi_multiple; // two_pi_i_scaled: value = r * 2*pi*i
    std::string name;         // formal

    static LogElement log_of(AlgebraicNumber lambda, long branch);
    static LogElement two_pi_i(Rational multiple);
    static LogElement formal(std::string name);

    bool algebraic_exponential() const { return kind != Kind::formal; }
    std::string describe() const;
};

struct SymbolDef {
    enum class Kind { free_box, basis_combination };
    Kind kind = Kind::free_box;
    // free_box: exact decimal-derived enclosure
    Rational re, im, rad;
    // basis_combination: value = sum_j combo[j] * basis[j] (exact)
    std::vector<Rational> combo;
};

using SymbolTable = std::map<std::string, SymbolDef>;

struct Guards {
    long enumeration = 10000000;
    int degree_cap = 64;
    Prec precision_cap = 4096;
    int subset_terms = 20;
};

struct ExpPolyEquation {
    BivariatePolynomial<FormalCoefficient> p;
    std::vector<LogElement> basis;
    SymbolTable symbols;
    bool asserted_independent = false;

    AlgContext alg_context(Prec bits) const;

    // Certified enclosure of basis entry j.
    ComplexBox basis_value(size_t j, Prec p) const;
    // Certified enclosure of any symbol (user, @2pii, @b<k>, @exp:<name>).
    ComplexBox symbol_box(const std::string& name, Prec p) const;
    std::function<ComplexBox(const std::string&, Prec)> env() const;

    // Exact formal value of basis entry j over the independent symbol set:
    // @b<j> for logarithm entries, r*@2pii for two-pi-i entries, the symbol
    // itself for formal entries.
    FormalPoly basis_formal_value(size_t j) const;
    // Eliminates bound symbols from a polynomial (exact substitution).
    FormalPoly resolve_bound(const FormalPoly& p, const AlgContext& ctx) const;

    // Certified enclosure of p(n.b, exp(n.b)).
    ComplexBox value_box(const std::vector<Integer>& n, Prec p, const AlgContext& ctx) const;
};

struct ExponentialSum {
    struct Term {
        int level;                              // exponential factor exp(level * x.b)
        std::vector<FormalCoefficient> w_poly;  // q(w) = sum w_poly[i] * w^i, w = x.b
    };
    std::vector<Term> terms; // levels strictly increasing
    std::vector<LogElement> basis;
    SymbolTable symbols;
    bool asserted_independent = false;

    ExpPolyEquation carrier() const; // equation-shaped view for value/env helpers

    // Certified enclosure of term #idx at integer vector n.
    ComplexBox term_box(size_t idx, const std::vector<Integer>& n, Prec p, const AlgContext& ctx) const;
    // Exact formal value of q_level(n.b) * exp(level * n.b) over independent
    // monomials, as a rational function (exp factors of formal entries land in
    // numerator/denominator powers of @exp symbols).
    FormalCoefficient term_symbolic(size_t idx, const std::vector<Integer>& n, const AlgContext& ctx) const;
};

// Exact verification of an additive relation sum_j m_j b_j = 0 among basis
// entries: multiplicative check prod lambda^m = 1 for the logarithm part,
// exact rational bookkeeping for branches and 2-pi-i multiples. Returns false
// (not "unknown") when formal entries carry nonzero weight.
bool verify_relation_exact(const std::vector<LogElement>& basis, const std::vector<Integer>& m,
                           const PrecisionContext& prec = {}, const AlgContext& ctx = {});

/* ---- reductions ---- */

ExponentialSum expand_exponential_sum(const ExpPolyEquation& eq, const AlgContext& ctx = {});

// Basis becomes b/N; solutions map q -> N*q.
ExpPolyEquation rescale_denominator(const ExpPolyEquation& eq, const Integer& N, const AlgContext& ctx = {});

struct DegeneracyResult {
    bool degenerate = false;
    std::vector<int> witness_levels; // proper nonempty subset with exact zero subsum
};

DegeneracyResult classify_degeneracy(const ExponentialSum& sum, const std::vector<Integer>& candidate,
                                     const PrecisionContext& prec = {}, int subset_guard = 20);

struct SublatticeExtraction {
    std::vector<LogElement> c;                   // algebraic-exponential entries, 2-pi-i entry first
    std::vector<std::vector<Integer>> embedding; // c_i = sum_j embedding[i][j] * b_j
    std::vector<size_t> kept;                    // kept[i] = original index of c[i]
    std::optional<size_t> two_pi_i_index;        // position in c (0 when present)
};

SublatticeExtraction extract_algebraic_log_sublattice(const ExpPolyEquation& eq);

// Applies the class translation r(X, Y) = p(a + X, e^a * Y) and moves the
// equation onto the basis c from the extraction. Solutions correspond via
// n = n_m + embedding^T n'.
ExpPolyEquation translate_by_class(const ExpPolyEquation& eq, const SublatticeExtraction& sub,
                                   const std::vector<Integer>& n_m, const AlgContext& ctx = {});

// Low-level form with an explicit shift a (formal) and its exponential exp(a).
ExpPolyEquation translate_core(const ExpPolyEquation& eq, const SublatticeExtraction& sub,
                               const FormalCoefficient& a_formal, const FormalCoefficient& a_exp,
                               const AlgContext& ctx = {});

// pre: first basis entry two_pi_i_scaled with multiple p/q; returns q
// equations (residues n0 = q*m + r); first entry of each becomes p * 2*pi*i.
std::vector<ExpPolyEquation> split_two_pi_i(const ExpPolyEquation& eq, const AlgContext& ctx = {});

struct SpecializeResult {
    BivariatePolynomial<AlgebraicNumber> specialized;
    bool nonzero = false;
    bool dx_nonzero = false;
    bool dy_nonzero = false;
    bool univariate_x = false; // lives in C[x] only
    bool univariate_y = false; // lives in C[y] only
};

// Clears denominators (least common denominator across coefficients), then
// substitutes. Throws SpecializationAnnihilates if the cleared polynomial
// still specializes to zero.
SpecializeResult specialize_formal(const BivariatePolynomial<FormalCoefficient>& p,
                                   const std::map<std::string, AlgebraicNumber>& assignment,
                                   const AlgContext& ctx = {});

} // namespace expeq
