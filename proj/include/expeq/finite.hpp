#pragma once

/* The finiteness engine: assemble the certified height chain
 *   a3 |n|_1 <= h(exp(n.c)) <= A log|n|_1 + C,
 * solve for the bound B, enumerate the l1 ball, and certify each candidate.
 */

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "expeq/equation.hpp"

namespace expeq {

struct BoundInputs {
    Real a3_lower;  // certified positive lower bound (rounded down)
    Real chain_A;   // upper-rounded slope of h(exp(n.c)) <= A log|n|_1 + C
    Real chain_C;   // upper-rounded offset
};

// h(exp(n.c)) <= a4.A*(a1.A log|n|_1 + a1.C) + a4.C.
BoundInputs make_bound_inputs(const RealInterval& a3, const AffineBound& a4, const AffineBound& a1,
                              Prec p);

// max { integer b >= 0 : a3*b <= A*log b + C } with log 0 := 0, log 1 = 0,
// computed with directed rounding (over-estimates the true crossing).
long compute_bound(const BoundInputs& inputs);

// Exact number of integer vectors with |n|_1 <= B in dimension dim.
Integer l1_ball_count(int dim, long B);

// Yields every n in Z^dim with |n|_1 <= B exactly once, graded lexicographic;
// throws GuardExceeded (with the exact count) if the ball exceeds the guard.
void enumerate_candidates(int dim, long B, long guard,
                          const std::function<void(const std::vector<Integer>&)>& visit);

enum class CandidateStatus { exactly_verified, probable, certified_non_solution };

struct CandidateResult {
    CandidateStatus status;
    Prec precision;               // certification / exhaustion level
    bool all_coefficients_vanish; // the q_i(n.b) = 0 for all i case
};

// Certified evaluation of the unspecialized equation plus exact symbolic
// rewriting over the independent transcendental monomials.
CandidateResult test_candidate(const ExpPolyEquation& eq, const std::vector<Integer>& n,
                               const PrecisionContext& policy = {}, const AlgContext& ctx = {});

struct SolutionRecord {
    std::vector<Integer> n;          // over the branch basis
    std::vector<Rational> original;  // mapped back to the input rational lattice
    CandidateStatus status;
    Prec precision;
    bool all_coefficients_vanish = false;
};

struct BranchCertificate {
    std::string label;
    bool applicable = true;
    std::string verdict; // "certificate" or "not-applicable: <hypothesis>"
    long bound_B = 0;
    bool height_chain_used = true; // false on the univariate special path
    std::optional<RealInterval> a3;
    Real chain_A, chain_C;
    Integer candidates_total;
    long exactly_verified = 0;
    long probable = 0;
    Integer certified_non_solutions;
    std::vector<SolutionRecord> solutions; // verified + probable, graded-lex order
    std::vector<std::string> exceptional_notes;
    std::map<std::string, std::string> sigma; // chosen specialization values
};

struct FinitenessCertificate {
    std::string verdict; // "certificate" | "not-applicable: ..."
    std::vector<BranchCertificate> branches;
    long total_exactly_verified = 0;
    long total_probable = 0;
};

} // namespace expeq
