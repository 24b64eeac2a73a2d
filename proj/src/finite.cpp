#include "expeq/finite.hpp"

#include "expeq/errors.hpp"

namespace expeq {

BoundInputs make_bound_inputs(const RealInterval& a3, const AffineBound& a4, const AffineBound& a1,
                              Prec p) {
    BoundInputs out;
    out.a3_lower = a3.lo();
    out.chain_A = Real::mul(a4.slope, a1.slope, p, MPFR_RNDU);
    out.chain_C = Real::add(Real::mul(a4.slope, a1.offset, p, MPFR_RNDU), a4.offset, p, MPFR_RNDU);
    return out;
}

namespace {

// a3*b <= A*log(b) + C with upward rounding on the right (so `true` whenever
// the exact inequality could hold).
bool bound_test(const BoundInputs& in, long b, Prec p) {
    if (b <= 0) return true;
    Real lhs = Real::mul(in.a3_lower, Real(b, p), p, MPFR_RNDD);
    Real rhs = in.chain_C;
    if (b >= 2) {
        Real lg = Real::log(Real(b, p), p, MPFR_RNDU);
        rhs = Real::add(rhs, Real::mul(in.chain_A, lg, p, MPFR_RNDU), p, MPFR_RNDU);
    }
    return lhs <= rhs;
}

} // namespace

long compute_bound(const BoundInputs& in) {
    Prec p = 128;
    if (in.a3_lower.sign() <= 0) throw InvalidInput("compute_bound requires a3 > 0");
    const long hard_cap = 1L << 40;
    // The comparison is monotone beyond b* = A/a3 (the difference a3*b - A log b - C
    // is convex with minimum there); start from the integers flanking b*.
    Real bstar = Real::div(in.chain_A, in.a3_lower, p, MPFR_RNDU);
    long lo_anchor = 1;
    if (bstar > Real(1, p)) {
        Real ceilv(p);
        mpfr_ceil(ceilv.raw(), bstar.raw());
        if (ceilv > Real(hard_cap, p)) throw GuardExceeded("bound crossing beyond the hard cap");
        lo_anchor = static_cast<long>(ceilv.to_double());
    }
    long anchor = -1;
    for (long cand : {lo_anchor, lo_anchor > 1 ? lo_anchor - 1 : 1}) {
        if (bound_test(in, cand, p)) {
            anchor = std::max(anchor, cand);
        }
    }
    if (anchor < 0) {
        // No integer in the dip satisfies the inequality; only b in {0, 1}.
        return bound_test(in, 1, p) ? 1 : 0;
    }
    long hi = anchor;
    while (bound_test(in, hi, p)) {
        if (hi > hard_cap) throw GuardExceeded("bound exceeds the hard cap");
        hi *= 2;
    }
    long lo = std::max(anchor, hi / 2);
    // Monotone region: last true in [lo, hi).
    while (lo + 1 < hi) {
        long mid = lo + (hi - lo) / 2;
        if (bound_test(in, mid, p)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

Integer l1_ball_count(int dim, long B) {
    // 1 + sum_{k=1..B} sum_j 2^j C(dim, j) C(k-1, j-1)
    Integer total(1);
    for (long k = 1; k <= B; ++k) {
        for (int j = 1; j <= dim && j <= k; ++j) {
            Integer c = Integer::pow2(static_cast<unsigned long>(j));
            c *= Integer::binomial(static_cast<unsigned long>(dim), static_cast<unsigned long>(j));
            c *= Integer::binomial(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(j - 1));
            total += c;
        }
    }
    return total;
}

void enumerate_candidates(int dim, long B, long guard,
                          const std::function<void(const std::vector<Integer>&)>& visit) {
    if (dim < 1 || B < 0) throw InvalidInput("enumerate_candidates requires dim >= 1, B >= 0");
    Integer total = l1_ball_count(dim, B);
    if (total > Integer(guard))
        throw GuardExceeded("enumeration of " + total.str() + " candidates exceeds guard " +
                            std::to_string(guard) + "; tighten the constants");
    std::vector<Integer> n(static_cast<size_t>(dim), Integer(0));
    // Graded (by |n|_1) lexicographic order within each grade.
    std::function<void(size_t, long, long)> walk = [&](size_t idx, long grade, long used) {
        if (idx + 1 == n.size()) {
            for (long v : {-(grade - used), grade - used}) {
                n[idx] = Integer(v);
                visit(n);
                if (grade == used) break; // zero only once
            }
            n[idx] = Integer(0);
            return;
        }
        long rem = grade - used;
        for (long v = -rem; v <= rem; ++v) {
            n[idx] = Integer(v);
            walk(idx + 1, grade, used + std::labs(v));
        }
        n[idx] = Integer(0);
    };
    for (long grade = 0; grade <= B; ++grade) {
        // Within a grade the final coordinate is forced up to sign.
        walk(0, grade, 0);
    }
}

CandidateResult test_candidate(const ExpPolyEquation& eq, const std::vector<Integer>& n,
                               const PrecisionContext& policy, const AlgContext& ctx_in) {
    AlgContext ctx = ctx_in;
    ctx.prec = policy;

    // Fast numeric rejection at the base precision.
    {
        ComplexBox v = eq.value_box(n, policy.bits, ctx);
        if (v.excludes_zero(policy.bits))
            return {CandidateStatus::certified_non_solution, policy.bits, false};
    }

    // Exact path: rewrite the value over the independent transcendental
    // monomials; identically zero is an unconditional certificate.
    ExponentialSum sum = expand_exponential_sum(eq, ctx);
    bool all_vanish = true;
    FormalCoefficient total;
    for (size_t i = 0; i < sum.terms.size(); ++i) {
        FormalCoefficient t = sum.term_symbolic(i, n, ctx);
        if (!t.is_zero()) all_vanish = false;
        total = total.plus(t, ctx);
    }
    if (total.is_zero()) {
        return {CandidateStatus::exactly_verified, policy.bits, all_vanish};
    }

    // Numeric escalation.
    PrecisionContext pc = policy;
    for (;;) {
        Prec p = pc.bits;
        ComplexBox v = eq.value_box(n, p, ctx);
        if (v.excludes_zero(p)) return {CandidateStatus::certified_non_solution, p, false};
        if (pc.bits >= pc.cap) return {CandidateStatus::probable, pc.bits, false};
        pc = pc.escalate();
    }
}

} // namespace expeq
