#include "expeq/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "expeq/errors.hpp"

namespace expeq {

namespace {

IntPolynomial minpoly_of_rational(const Rational& q) {
    // den*x - num, already primitive with positive lead.
    return IntPolynomial{std::vector<Integer>{-q.num(), q.den()}};
}

// Lower bound (as a power of two) on the distance between distinct roots of a
// squarefree integer polynomial: Mahler's sep(f) > sqrt(3) d^-(d+2)/2 ||f||_2^-(d-1).
long separation_log2(const IntPolynomial& f) {
    int d = f.degree();
    if (d <= 1) return 0;
    double log_norm = 0.5 * static_cast<double>(f.norm2_squared().bit_length());
    double lg = 0.5 * 1.585 - 0.5 * (d + 2) * (std::log2(static_cast<double>(d))) - (d - 1) * (log_norm + 1);
    long out = static_cast<long>(lg) - 4;
    return out;
}

// Resultant_y(A(y), C(x, y)) by evaluation at integer points + interpolation,
// with the Sylvester matrix built at the bivariate y-degree of C so that
// specialization commutes with the determinant.
IntPolynomial resultant_param(const IntPolynomial& A,
                              const std::function<IntPolynomial(const Integer&)>& specialize_C,
                              int degy_C, int degree_bound) {
    int n = A.degree();
    int m = degy_C;
    size_t dim = static_cast<size_t>(n + m);
    std::vector<Integer> xs;
    std::vector<Rational> ys;
    for (long t = 0; static_cast<int>(xs.size()) <= degree_bound; ++t) {
        Integer point = (t % 2 == 0) ? Integer(t / 2) : Integer(-(t / 2 + 1));
        IntPolynomial D = specialize_C(point);
        // Sylvester matrix rows: m shifted copies of A, n shifted copies of D
        // (D padded up to degree m).
        std::vector<std::vector<Integer>> M(dim, std::vector<Integer>(dim, Integer(0)));
        for (int r = 0; r < m; ++r)
            for (int j = 0; j <= n; ++j) M[static_cast<size_t>(r)][static_cast<size_t>(r + j)] = A.coeff(n - j);
        for (int r = 0; r < n; ++r)
            for (int j = 0; j <= m; ++j) {
                Integer cj = (m - j <= D.degree()) ? D.coeff(m - j) : Integer(0);
                M[static_cast<size_t>(m + r)][static_cast<size_t>(r + j)] = cj;
            }
        xs.push_back(point);
        ys.push_back(Rational(det_bareiss(std::move(M))));
    }
    // Newton divided differences.
    size_t k = xs.size();
    std::vector<Rational> coef = ys;
    for (size_t j = 1; j < k; ++j)
        for (size_t i = k - 1; i >= j; --i) {
            coef[i] = (coef[i] - coef[i - 1]) / (Rational(xs[i]) - Rational(xs[i - j]));
            if (i == j) break;
        }
    // Expand Newton form to monomial basis over Q.
    std::vector<Rational> poly{coef[k - 1]};
    for (size_t i = k - 1; i > 0; --i) {
        // poly = poly*(x - xs[i-1]) + coef[i-1]
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= poly[j] * Rational(xs[i - 1]);
        }
        next[0] += coef[i - 1];
        poly = std::move(next);
    }
    std::vector<Integer> zc;
    zc.reserve(poly.size());
    for (const auto& q : poly) {
        if (!q.is_integer()) throw InvalidInput("resultant interpolation produced a non-integer");
        zc.push_back(q.num());
    }
    return IntPolynomial(std::move(zc));
}

struct Candidate {
    IntPolynomial factor;
    ComplexBox root;
};

// The unique (factor, root) consistent with the certified value enclosure.
AlgebraicNumber select_root(const IntPolynomial& resultant,
                            const std::function<ComplexBox(Prec)>& value_box,
                            const PrecisionContext& ctx) {
    auto factors = factor_over_Z(resultant);
    PrecisionContext pc = ctx;
    Real prev_rad;
    bool have_prev = false;
    for (;;) {
        Prec p = pc.bits;
        ComplexBox v = value_box(p);
        Real target = Real::mul(v.rad(), Real::pow2(-2, p), p, MPFR_RNDU);
        Real floor = Real::pow2(-static_cast<long>(p), p);
        if (target < floor) target = floor;
        std::vector<Candidate> hits;
        for (const auto& [fac, mult] : factors) {
            (void)mult;
            if (fac.degree() < 1) continue;
            for (const auto& rb : isolate_roots(fac, target, pc)) {
                if (rb.overlaps(v, p)) hits.push_back({fac, rb});
            }
        }
        if (hits.size() == 1) {
            return AlgebraicNumber(hits[0].factor.normalized(), hits[0].root, pc);
        }
        if (hits.empty()) throw InvalidInput("no resultant root matches the certified value enclosure");
        if (have_prev && !(v.rad() < prev_rad) && !v.rad().is_zero())
            throw PrecisionExhausted("value enclosure too wide to designate a unique root");
        prev_rad = v.rad();
        have_prev = true;
        pc = pc.escalate();
    }
}

} // namespace

AlgebraicNumber::AlgebraicNumber(const Rational& q) : minpoly_(minpoly_of_rational(q)) {
    Prec p = 128;
    box_ = ComplexBox::exact(q, Rational(0), p);
}

AlgebraicNumber::AlgebraicNumber(IntPolynomial minpoly, ComplexBox box, const PrecisionContext& ctx)
    : minpoly_(minpoly.normalized()), box_(std::move(box)) {
    if (minpoly_.degree() < 1) throw InvalidInput("minimal polynomial must have degree >= 1");
    if (!irreducible_over_Q(minpoly_))
        throw InvalidInput("minimal polynomial is not irreducible: " + minpoly_.str());
    if (minpoly_.degree() == 1) {
        Rational q = -Rational(minpoly_.coeff(0)) / Rational(minpoly_.coeff(1));
        Prec p = ctx.bits;
        ComplexBox exact = ComplexBox::exact(q, Rational(0), p);
        if (!box_.contains(exact, p) && !box_.overlaps(exact, p))
            throw InvalidInput("isolating box does not contain the rational root");
        box_ = exact;
        return;
    }
    // Designate: exactly one root's refined box must overlap the given box.
    PrecisionContext pc = ctx;
    for (;;) {
        Prec p = pc.bits;
        Real target = Real::mul(box_.rad(), Real::pow2(-3, p), p, MPFR_RNDU);
        Real floor = Real::pow2(-static_cast<long>(p), p);
        if (target < floor) target = floor;
        std::vector<ComplexBox> hits;
        for (const auto& rb : isolate_roots(minpoly_, target, pc))
            if (rb.overlaps(box_, p)) hits.push_back(rb);
        if (hits.size() == 1) {
            box_ = hits[0];
            return;
        }
        if (hits.empty()) throw InvalidInput("isolating box contains no root of the minimal polynomial");
        pc = pc.escalate();
    }
}

Rational AlgebraicNumber::as_rational() const {
    if (!is_rational()) throw InvalidInput("not a rational value");
    return -Rational(minpoly_.coeff(0)) / Rational(minpoly_.coeff(1));
}

ComplexBox AlgebraicNumber::box(Prec bits, const PrecisionContext& ctx) const {
    return box_radius(Real::pow2(-static_cast<long>(bits), bits + 8), ctx);
}

ComplexBox AlgebraicNumber::box_radius(const Real& target, const PrecisionContext& ctx) const {
    if (is_rational()) {
        Prec p = std::max<Prec>(ctx.bits, target.prec());
        return ComplexBox::exact(as_rational(), Rational(0), p);
    }
    PrecisionContext pc = ctx;
    while (pc.bits < target.prec()) pc = pc.escalate();
    return refine_root_box(minpoly_, box_, target, pc);
}

bool AlgebraicNumber::equals(const AlgebraicNumber& other, const PrecisionContext& ctx) const {
    if (minpoly_ != other.minpoly_) return false;
    if (is_rational()) return true; // same degree-1 minpoly => same value
    long sep = separation_log2(minpoly_);
    Prec p = std::max<Prec>(ctx.bits, static_cast<Prec>(-sep + 16));
    Real target = Real::pow2(sep - 2, p);
    PrecisionContext pc = ctx;
    while (pc.bits < p) pc = pc.escalate();
    ComplexBox a = box_radius(target, pc);
    ComplexBox b = other.box_radius(target, pc);
    return a.overlaps(b, p);
}

bool AlgebraicNumber::is_real(const PrecisionContext& ctx) const {
    if (is_rational()) return true;
    // Real iff the designated root stays on the axis: a box straddling the
    // axis with radius below half the conjugate-pair separation forces Im = 0.
    long sep = separation_log2(minpoly_);
    Prec p = std::max<Prec>(ctx.bits, static_cast<Prec>(-sep + 16));
    PrecisionContext pc = ctx;
    while (pc.bits < p) pc = pc.escalate();
    ComplexBox b = box_radius(Real::pow2(sep - 2, p), pc);
    return b.im_interval(p).contains_zero();
}

bool AlgebraicNumber::is_root_of_unity() const {
    // Roots of unity have cyclotomic minimal polynomials; degree-d candidates
    // have Euler-phi preimages q <= enough to scan: phi(q) = d implies q <= 2 d^2+2.
    int d = minpoly_.degree();
    if (is_rational()) {
        Rational q = as_rational();
        return q == Rational(1) || q == Rational(-1);
    }
    unsigned long limit = static_cast<unsigned long>(2 * d * d + 4);
    for (unsigned long q = 1; q <= limit; ++q) {
        IntPolynomial cyc = cyclotomic(q);
        if (cyc.degree() == d && cyc == minpoly_) return true;
    }
    return false;
}

std::string AlgebraicNumber::str() const {
    if (is_rational()) return as_rational().str();
    std::ostringstream os;
    os << "root of " << minpoly_.str() << " near " << box_.str(64);
    return os.str();
}

namespace {

AlgebraicNumber arith_impl(const AlgebraicNumber& a, const AlgebraicNumber& b, AlgOp op,
                           const AlgContext& ctx) {
    // Rational fast paths.
    if (a.is_rational() && b.is_rational()) {
        Rational x = a.as_rational(), y = b.as_rational();
        switch (op) {
            case AlgOp::add: return AlgebraicNumber(x + y);
            case AlgOp::sub: return AlgebraicNumber(x - y);
            case AlgOp::mul: return AlgebraicNumber(x * y);
            case AlgOp::div:
                if (y.is_zero()) throw DivisionByZero("algebraic division by zero");
                return AlgebraicNumber(x / y);
        }
    }
    if (op == AlgOp::div) {
        if (b.is_zero()) throw DivisionByZero("algebraic division by zero");
        return arith_impl(a, alg_inverse(b), AlgOp::mul, ctx);
    }
    if (op == AlgOp::sub) return arith_impl(a, alg_neg(b), AlgOp::add, ctx);
    if (op == AlgOp::mul) {
        if (a.is_zero() || b.is_zero()) return AlgebraicNumber(Rational(0));
        if (a.is_rational() && a.as_rational().is_one()) return b;
        if (b.is_rational() && b.as_rational().is_one()) return a;
    }
    if (op == AlgOp::add) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
    }

    const IntPolynomial& A = a.minpoly();
    const IntPolynomial& B = b.minpoly();
    long compose_deg = static_cast<long>(A.degree()) * B.degree();
    if (compose_deg > ctx.degree_cap)
        throw DegreeGuardExceeded("resultant degree " + std::to_string(compose_deg) + " exceeds cap " +
                                  std::to_string(ctx.degree_cap));

    IntPolynomial res;
    if (op == AlgOp::add) {
        // Res_y(A(y), B(x - y)); y-lead of B(x-y) is (-1)^deg(B) * lc(B).
        auto spec = [&](const Integer& t) {
            IntPolynomial acc;
            IntPolynomial pw{1};
            IntPolynomial lin{std::vector<Integer>{t, Integer(-1)}}; // t - y
            for (int k = 0; k <= B.degree(); ++k) {
                acc = acc + pw.mul_scalar(B.coeff(k));
                if (k < B.degree()) pw = pw * lin;
            }
            return acc;
        };
        res = resultant_param(A, spec, B.degree(), A.degree() * B.degree());
    } else {
        // mul: Res_y(A(y), sum_k b_k x^k y^(m-k)); y-lead is b_0 != 0.
        auto spec = [&](const Integer& t) {
            std::vector<Integer> c(static_cast<size_t>(B.degree()) + 1, Integer(0));
            Integer tp(1);
            for (int k = 0; k <= B.degree(); ++k) {
                c[static_cast<size_t>(B.degree() - k)] = B.coeff(k) * tp;
                tp *= t;
            }
            return IntPolynomial(std::move(c));
        };
        res = resultant_param(A, spec, B.degree(), A.degree() * B.degree());
    }
    if (res.is_zero()) throw InvalidInput("degenerate resultant in algebraic arithmetic");

    auto value = [&](Prec p) {
        PrecisionContext sub{p, ctx.prec.cap};
        ComplexBox ab = a.box(p, sub);
        ComplexBox bb = b.box(p, sub);
        return op == AlgOp::add ? ComplexBox::add(ab, bb, p) : ComplexBox::mul(ab, bb, p);
    };
    return select_root(res, value, ctx.prec);
}

} // namespace

AlgebraicNumber alg_arith(const AlgebraicNumber& a, const AlgebraicNumber& b, AlgOp op,
                          const AlgContext& ctx) {
    return arith_impl(a, b, op, ctx);
}
AlgebraicNumber alg_add(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx) {
    return arith_impl(a, b, AlgOp::add, ctx);
}
AlgebraicNumber alg_sub(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx) {
    return arith_impl(a, b, AlgOp::sub, ctx);
}
AlgebraicNumber alg_mul(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx) {
    return arith_impl(a, b, AlgOp::mul, ctx);
}
AlgebraicNumber alg_div(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& ctx) {
    return arith_impl(a, b, AlgOp::div, ctx);
}

AlgebraicNumber alg_neg(const AlgebraicNumber& a) {
    if (a.is_rational()) return AlgebraicNumber(-a.as_rational());
    IntPolynomial mp = a.minpoly().negate_var().normalized();
    Prec p = 128;
    return AlgebraicNumber(mp, ComplexBox::neg(a.isolating_box(), p));
}

AlgebraicNumber alg_inverse(const AlgebraicNumber& a) {
    if (a.is_zero()) throw DivisionByZero("inverse of zero");
    if (a.is_rational()) return AlgebraicNumber(Rational::inverse(a.as_rational()));
    IntPolynomial mp = a.minpoly().reversed().normalized();
    PrecisionContext pc;
    ComplexBox b = a.isolating_box();
    Prec p = pc.bits;
    while (!b.excludes_zero(p)) {
        pc = pc.escalate();
        p = pc.bits;
        b = a.box(p, pc);
    }
    return AlgebraicNumber(mp, ComplexBox::inverse(b, p), pc);
}

AlgebraicNumber alg_pow(const AlgebraicNumber& a, long k, const AlgContext& ctx) {
    if (k == 0) return AlgebraicNumber(Rational(1));
    AlgebraicNumber base = k < 0 ? alg_inverse(a) : a;
    unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
    AlgebraicNumber acc(Rational(1));
    AlgebraicNumber cur = base;
    for (;;) {
        if (e & 1) acc = alg_mul(acc, cur, ctx);
        e >>= 1;
        if (!e) break;
        cur = alg_mul(cur, cur, ctx);
    }
    return acc;
}

AlgebraicNumber root_of_unity(const Integer& num, const Integer& den, const PrecisionContext& ctx) {
    if (den.is_zero()) throw DivisionByZero("root_of_unity with zero denominator");
    Rational r(num, den);
    // Reduce mod 1.
    Integer whole = Integer::fdiv_q(r.num(), r.den());
    Rational frac = r - Rational(whole);
    if (frac.is_zero()) return AlgebraicNumber(Rational(1));
    Integer q = frac.den();
    if (!q.fits_long()) throw GuardExceeded("root of unity order too large");
    IntPolynomial mp = cyclotomic(static_cast<unsigned long>(q.to_long()));
    Prec p = ctx.bits;
    ComplexBox angle = ComplexBox::two_pi_i(frac, p);
    ComplexBox val = ComplexBox::exp(angle, p);
    return AlgebraicNumber(mp, val, ctx);
}

AlgebraicNumber alg_nth_root(const AlgebraicNumber& a, unsigned long n, const ComplexBox& approx,
                             const AlgContext& ctx) {
    return alg_nth_root(a, n, [&](Prec) { return approx; }, ctx);
}

AlgebraicNumber alg_nth_root(const AlgebraicNumber& a, unsigned long n,
                             const std::function<ComplexBox(Prec)>& approx, const AlgContext& ctx) {
    if (n == 0) throw InvalidInput("0th root");
    if (n == 1) return a;
    if (a.is_zero()) return a;
    long deg = static_cast<long>(a.degree()) * static_cast<long>(n);
    if (deg > ctx.degree_cap)
        throw DegreeGuardExceeded("n-th root degree " + std::to_string(deg) + " exceeds cap");
    // Minimal polynomial divides A(x^n).
    const IntPolynomial& A = a.minpoly();
    std::vector<Integer> c(static_cast<size_t>(A.degree()) * n + 1, Integer(0));
    for (int i = 0; i <= A.degree(); ++i) c[static_cast<size_t>(i) * n] = A.coeff(i);
    IntPolynomial comp{std::move(c)};
    return select_root(comp, approx, ctx.prec);
}

} // namespace expeq
