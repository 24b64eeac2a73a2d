#pragma once

/* Dyadic reals via MPFR. A Real is an arbitrary-precision binary float
 * (m * 2^e), so every finite value is an exact dyadic rational; serialization
 * to decimal is exact. Directed-rounding entry points carry the rounding mode
 * explicitly so interval code can round outward.
 */

#include <mpfr.h>

#include <atomic>
#include <string>

#include "expeq/rational.hpp"

namespace expeq {

using Prec = mpfr_prec_t;

namespace detail {
inline std::atomic<long> escalation_counter{0};
}

// Total number of precision escalations so far in this process; deterministic
// for identical inputs (observability only, reported by the CLI).
inline long escalation_count() { return detail::escalation_counter.load(); }

// Escalation schedule shared by the certified operations: double until cap.
struct PrecisionContext {
    Prec bits = 128;
    Prec cap = 4096;

    PrecisionContext escalate() const {
        if (bits >= cap) throw PrecisionExhausted("working precision cap reached at " + std::to_string(cap) + " bits");
        detail::escalation_counter.fetch_add(1);
        PrecisionContext next = *this;
        next.bits = bits * 2 > cap ? cap : bits * 2;
        return next;
    }
};

class Real {
public:
    Real() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
    explicit Real(Prec prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
    Real(long v, Prec prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
    Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(x_, mpfr_get_prec(o.x_));
            mpfr_set(x_, o.x_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(x_, o.x_);
        return *this;
    }
    ~Real() { mpfr_clear(x_); }

    mpfr_srcptr raw() const { return x_; }
    mpfr_ptr raw() { return x_; }
    Prec prec() const { return mpfr_get_prec(x_); }

    bool is_zero() const { return mpfr_zero_p(x_) != 0; }
    bool is_finite() const { return mpfr_number_p(x_) != 0; }
    int sign() const { return mpfr_sgn(x_); }
    double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.x_, b.x_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.x_, b.x_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.x_, b.x_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.x_, b.x_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.x_, b.x_) != 0; }

    static Real from_rational(const Rational& q, Prec prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_q(r.x_, q.raw(), rnd);
        return r;
    }
    static Real from_integer(const Integer& z, Prec prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_set_z(r.x_, z.raw(), rnd);
        return r;
    }

    // Exact rational value of a finite dyadic real.
    Rational to_rational() const;

    // Exact decimal rendering of the dyadic value (finite expansion).
    std::string str_exact() const;
    // Short human-readable decimal (not exact), for stderr summaries.
    std::string str_approx(int digits = 20) const;

#define EXPEQ_REAL_BINOP(NAME, FN)                                    \
    static Real NAME(const Real& a, const Real& b, Prec prec, mpfr_rnd_t rnd) { \
        Real r(prec);                                                 \
        FN(r.x_, a.x_, b.x_, rnd);                                    \
        return r;                                                     \
    }
    EXPEQ_REAL_BINOP(add, mpfr_add)
    EXPEQ_REAL_BINOP(sub, mpfr_sub)
    EXPEQ_REAL_BINOP(mul, mpfr_mul)
    EXPEQ_REAL_BINOP(div, mpfr_div)
    EXPEQ_REAL_BINOP(atan2, mpfr_atan2)
#undef EXPEQ_REAL_BINOP

#define EXPEQ_REAL_UNOP(NAME, FN)                                     \
    static Real NAME(const Real& a, Prec prec, mpfr_rnd_t rnd) {      \
        Real r(prec);                                                 \
        FN(r.x_, a.x_, rnd);                                          \
        return r;                                                     \
    }
    EXPEQ_REAL_UNOP(neg, mpfr_neg)
    EXPEQ_REAL_UNOP(abs, mpfr_abs)
    EXPEQ_REAL_UNOP(sqrt, mpfr_sqrt)
    EXPEQ_REAL_UNOP(log, mpfr_log)
    EXPEQ_REAL_UNOP(exp, mpfr_exp)
    EXPEQ_REAL_UNOP(sin, mpfr_sin)
    EXPEQ_REAL_UNOP(cos, mpfr_cos)
#undef EXPEQ_REAL_UNOP

    static Real pi(Prec prec, mpfr_rnd_t rnd) {
        Real r(prec);
        mpfr_const_pi(r.x_, rnd);
        return r;
    }
    static Real pow2(long e, Prec prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.x_, 1, e, MPFR_RNDN);
        return r;
    }
    static Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
    static Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

private:
    mpfr_t x_;
};

} // namespace expeq
