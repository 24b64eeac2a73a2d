#include "expeq/height.hpp"

#include "expeq/errors.hpp"

namespace expeq {

namespace {

Real log_upper(const Integer& n, Prec p) {
    return Real::log(Real::from_integer(n, p, MPFR_RNDU), p, MPFR_RNDU);
}

RealInterval log_interval(const Integer& n, Prec p) {
    return {Real::log(Real::from_integer(n, p, MPFR_RNDD), p, MPFR_RNDD), log_upper(n, p)};
}

} // namespace

HeightValue mahler_measure(const IntPolynomial& f, const PrecisionContext& ctx) {
    if (f.is_zero()) throw InvalidInput("Mahler measure of the zero polynomial");
    Prec p0 = ctx.bits;
    Real width_target = Real::pow2(-static_cast<long>(ctx.bits) + 16, p0);
    if (f.degree() == 0) {
        Integer a = Integer::abs(f.coeff(0));
        return {log_interval(a, p0), p0};
    }
    PrecisionContext pc = ctx;
    for (;;) {
        Prec p = pc.bits;
        RealInterval acc = RealInterval::from_integer(Integer::abs(f.lead()), p);
        for (const auto& [g, mult] : f.squarefree_decomposition()) {
            if (g.degree() == 0) continue;
            Real rad = Real::pow2(-static_cast<long>(p) / 2, p);
            for (const auto& box : isolate_roots(g, rad, pc)) {
                RealInterval contrib = RealInterval::max1(ComplexBox::modulus(box, p), p);
                for (int k = 0; k < mult; ++k) acc = RealInterval::mul(acc, contrib, p);
            }
        }
        if (acc.width(p) <= width_target && acc.lo().sign() > 0) return {acc, p};
        pc = pc.escalate();
    }
}

HeightValue weil_height(const AlgebraicNumber& a, const PrecisionContext& ctx) {
    if (a.is_zero()) throw InvalidInput("height of zero");
    Prec p = ctx.bits;
    if (a.is_rational()) {
        // h(p/q) = log max(|p|, |q|), exact formula path.
        Rational q = a.as_rational();
        Integer m = Integer::abs(q.num());
        if (q.den() > m) m = q.den();
        if (m.is_one()) return {RealInterval::zero(), p};
        return {log_interval(m, p), p};
    }
    HeightValue mm = mahler_measure(a.minpoly(), ctx);
    Prec wp = mm.precision_bits;
    RealInterval logm = RealInterval::log(mm.value, wp);
    Rational inv_deg(Integer(1), Integer(a.degree()));
    RealInterval h = RealInterval::mul_scalar(logm, inv_deg, wp);
    Real lo = h.lo().sign() < 0 ? Real(0, wp) : h.lo();
    return {RealInterval{lo, h.hi()}, wp};
}

AffineBound a1_constant(const std::vector<AlgebraicNumber>& c, const PrecisionContext& ctx) {
    if (c.empty()) throw InvalidInput("a1 of an empty vector");
    Prec p = ctx.bits;
    size_t t = c.size();
    Real offset(0, p);
    for (const auto& ci : c) {
        if (ci.is_zero()) throw InvalidInput("a1 requires nonzero entries");
        offset = Real::add(offset, weil_height(ci, ctx).upper(), p, MPFR_RNDU);
    }
    if (t > 1) {
        Real log2 = log_upper(Integer(2), p);
        Real extra = Real::mul(Real(static_cast<long>(t) - 1, p), log2, p, MPFR_RNDU);
        offset = Real::add(offset, extra, p, MPFR_RNDU);
    }
    return {Real(static_cast<long>(t), p), offset, AffineArg::log_of_one_norm};
}

AffineBound a2_constant(const std::vector<AlgebraicNumber>& gamma, const PrecisionContext& ctx) {
    if (gamma.empty()) throw InvalidInput("a2 of an empty vector");
    Prec p = ctx.bits;
    Real slope(0, p);
    for (const auto& g : gamma) {
        if (g.is_zero()) throw InvalidInput("a2 requires nonzero entries");
        slope = Real::max(slope, weil_height(g, ctx).upper());
    }
    return {slope, Real(0, p), AffineArg::one_norm};
}

AffineBound a4_bound(const BivariatePolynomial<AlgebraicNumber>& f, A4Direction direction,
                     const PrecisionContext& ctx) {
    auto [px, py] = f.partials_nonzero();
    bool x_target = direction == A4Direction::x_from_y;
    if (x_target && !px) throw DirectionDegenerate("a4 x_from_y requires df/dx != 0");
    if (!x_target && !py) throw DirectionDegenerate("a4 y_from_x requires df/dy != 0");

    Prec p = ctx.bits;
    int target_deg = x_target ? f.degree_x() : f.degree_y();
    int partner_deg = x_target ? f.degree_y() : f.degree_x();

    // Offset: root-of-polynomial lemma (log 2, waived for linear target) plus
    // the archimedean term count and the projective height of the coefficient
    // vector, bounded by the sum of coefficient heights.
    std::map<int, long> terms_per_row;
    Real coeff_heights(0, p);
    for (const auto& [e, v] : f.terms()) {
        int row = x_target ? e.first : e.second;
        ++terms_per_row[row];
        coeff_heights = Real::add(coeff_heights, weil_height(v, ctx).upper(), p, MPFR_RNDU);
    }
    long max_terms = 1;
    for (const auto& [row, n] : terms_per_row) max_terms = std::max(max_terms, n);

    Real offset = coeff_heights;
    if (max_terms > 1)
        offset = Real::add(offset, log_upper(Integer(max_terms), p), p, MPFR_RNDU);
    if (target_deg >= 2)
        offset = Real::add(offset, log_upper(Integer(2), p), p, MPFR_RNDU);

    return {Real(partner_deg, p), offset, AffineArg::height_of_partner};
}

} // namespace expeq
