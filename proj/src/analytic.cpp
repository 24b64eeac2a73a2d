#include "expeq/analytic.hpp"

#include <algorithm>
#include <optional>

#include "expeq/errors.hpp"

namespace expeq {

Region::Region(Rational a_re, Rational a_im, Rational b_re, Rational b_im)
    : re0(std::move(a_re)), im0(std::move(a_im)), re1(std::move(b_re)), im1(std::move(b_im)) {
    if (re1 < re0) std::swap(re0, re1);
    if (im1 < im0) std::swap(im0, im1);
    if (re0 == re1 || im0 == im1) throw InvalidInput("region has empty interior");
}

namespace {

ComplexBox F_ball(const BivariatePolynomial<AlgebraicNumber>& p, const ComplexBox& z, Prec prec,
                  const AlgContext& ctx) {
    ComplexBox ez = ComplexBox::exp(z, prec);
    return p.eval_interval(z, ez, prec, ctx);
}

ComplexBox point_box(const Rational& re, const Rational& im, Prec prec) {
    return ComplexBox::exact(re, im, prec);
}

// Ball covering the straight segment from a to b (rational endpoints).
ComplexBox segment_ball(const Rational& are, const Rational& aim, const Rational& bre,
                        const Rational& bim, Prec prec) {
    Rational cre = (are + bre) / Rational(2);
    Rational cim = (aim + bim) / Rational(2);
    ComplexBox center = ComplexBox::exact(cre, cim, prec);
    // axis-parallel or general: |b - a| / 2 <= (|dre| + |dim|) / 2
    Rational half = (Rational::abs(bre - are) + Rational::abs(bim - aim)) / Rational(2);
    return widen(center, Real::from_rational(half, prec, MPFR_RNDU), prec);
}

struct Seg {
    Rational are, aim, bre, bim;
};

// Splits boundary segments until each image ball excludes zero with margin
// ratio r/|c| <= 7/10 (argument width <= 2 asin(0.7) < pi/2 + eps).
void refine_edge(const BivariatePolynomial<AlgebraicNumber>& p, const Seg& s, Prec prec,
                 const AlgContext& ctx, int depth, std::vector<Seg>& out) {
    if (depth > 42) throw BoundaryZeroSuspected("cannot certify boundary nonvanishing (perturb the region)");
    ComplexBox ball = segment_ball(s.are, s.aim, s.bre, s.bim, prec);
    ComplexBox fb = F_ball(p, ball, prec, ctx);
    Real modlo = ComplexBox::modulus(fb, prec).lo();
    bool ok = false;
    if (modlo.sign() > 0) {
        Real ratio = Real::div(fb.rad(), modlo, prec, MPFR_RNDU);
        ok = ratio <= Real::from_rational(Rational(7, 10), prec, MPFR_RNDU);
    }
    if (ok) {
        out.push_back(s);
        return;
    }
    Rational mre = (s.are + s.bre) / Rational(2);
    Rational mim = (s.aim + s.bim) / Rational(2);
    refine_edge(p, {s.are, s.aim, mre, mim}, prec, ctx, depth + 1, out);
    refine_edge(p, {mre, mim, s.bre, s.bim}, prec, ctx, depth + 1, out);
}

std::optional<long> winding_attempt(const BivariatePolynomial<AlgebraicNumber>& p, const Region& region,
                                    Prec prec, const AlgContext& ctx) {
    // Counterclockwise boundary.
    std::vector<Seg> edges = {
        {region.re0, region.im0, region.re1, region.im0},
        {region.re1, region.im0, region.re1, region.im1},
        {region.re1, region.im1, region.re0, region.im1},
        {region.re0, region.im1, region.re0, region.im0},
    };
    std::vector<Seg> segs;
    for (const auto& e : edges) refine_edge(p, e, prec, ctx, 0, segs);

    RealInterval total = RealInterval::zero();
    for (const auto& s : segs) {
        ComplexBox fa = F_ball(p, point_box(s.are, s.aim, prec), prec, ctx);
        ComplexBox fb = F_ball(p, point_box(s.bre, s.bim, prec), prec, ctx);
        if (!fa.excludes_zero(prec) || !fb.excludes_zero(prec)) return std::nullopt;
        // |increment| < pi by the segment-ball property, so the increment is
        // the principal argument of the endpoint ratio.
        ComplexBox ratio = ComplexBox::div(fb, fa, prec);
        if (!ratio.avoids_branch_cut(prec)) return std::nullopt;
        RealInterval delta = ComplexBox::arg_principal(ratio, prec);
        total = RealInterval::add(total, delta, prec);
    }
    RealInterval twopi = RealInterval::mul_scalar(RealInterval::pi(prec), Rational(2), prec);
    RealInterval w = RealInterval::div(total, twopi, prec);
    if (w.width(prec) >= Real::from_rational(Rational(1, 2), prec, MPFR_RNDD)) return std::nullopt;
    Real mid = w.mid(prec);
    Real rounded(prec);
    mpfr_round(rounded.raw(), mid.raw());
    Real err_lo = Real::sub(rounded, w.lo(), prec, MPFR_RNDU);
    Real err_hi = Real::sub(w.hi(), rounded, prec, MPFR_RNDU);
    Real quarter = Real::from_rational(Rational(1, 2), prec, MPFR_RNDD);
    if (err_lo >= quarter || err_hi >= quarter) return std::nullopt;
    long k = static_cast<long>(rounded.to_double());
    return k;
}

} // namespace

long count_zeros(const BivariatePolynomial<AlgebraicNumber>& p, const Region& region,
                 const PrecisionContext& ctx) {
    if (p.is_zero()) throw InvalidInput("zero polynomial");
    AlgContext actx;
    actx.prec = ctx;
    PrecisionContext pc = ctx;
    for (;;) {
        auto w = winding_attempt(p, region, pc.bits, actx);
        if (w) {
            if (*w < 0) throw InvalidInput("negative winding (inconsistent enclosure)");
            return *w;
        }
        pc = pc.escalate(); // PrecisionExhausted at the cap
    }
}

namespace {

// Interval Newton certification for F around an approximate zero.
bool newton_certify(const BivariatePolynomial<AlgebraicNumber>& p,
                    const BivariatePolynomial<AlgebraicNumber>& px,
                    const BivariatePolynomial<AlgebraicNumber>& py, const ComplexBox& start,
                    Prec prec, const AlgContext& ctx, ComplexBox& out) {
    auto Fprime = [&](const ComplexBox& z) {
        ComplexBox ez = ComplexBox::exp(z, prec);
        ComplexBox a = px.eval_interval(z, ez, prec, ctx);
        ComplexBox b = py.eval_interval(z, ez, prec, ctx);
        return ComplexBox::add(a, ComplexBox::mul(b, ez, prec), prec);
    };
    ComplexBox box = start;
    ComplexBox dfb = Fprime(box);
    if (!dfb.excludes_zero(prec)) return false;
    ComplexBox center(box.re(), box.im(), Real(0, prec));
    ComplexBox n = ComplexBox::sub(center, ComplexBox::div(F_ball(p, center, prec, ctx), dfb, prec), prec);
    // strict containment
    Real dre = Real::abs(Real::sub(n.re(), box.re(), prec, MPFR_RNDU), prec, MPFR_RNDU);
    Real dim = Real::abs(Real::sub(n.im(), box.im(), prec, MPFR_RNDU), prec, MPFR_RNDU);
    Real dist(prec);
    mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDU);
    if (!(Real::add(dist, n.rad(), prec, MPFR_RNDU) < box.rad())) return false;
    // Contract a few times.
    ComplexBox cur = n;
    for (int i = 0; i < 30; ++i) {
        ComplexBox d2 = Fprime(cur);
        if (!d2.excludes_zero(prec)) break;
        ComplexBox c2(cur.re(), cur.im(), Real(0, prec));
        ComplexBox nxt = ComplexBox::sub(c2, ComplexBox::div(F_ball(p, c2, prec, ctx), d2, prec), prec);
        if (!(nxt.rad() < cur.rad())) break;
        cur = nxt;
    }
    out = cur;
    return true;
}

void locate_rec(const BivariatePolynomial<AlgebraicNumber>& p,
                const BivariatePolynomial<AlgebraicNumber>& px,
                const BivariatePolynomial<AlgebraicNumber>& py, const Region& region, long count,
                const PrecisionContext& ctx, const AlgContext& actx, int depth,
                std::vector<LocatedZero>& out) {
    if (count == 0) return;
    Prec prec = ctx.bits;
    if (count == 1) {
        // Newton polish from the cell center.
        Rational cre = (region.re0 + region.re1) / Rational(2);
        Rational cim = (region.im0 + region.im1) / Rational(2);
        ComplexBox z = ComplexBox::exact(cre, cim, prec);
        // Plain Newton iterations (round-to-nearest) to approach the zero.
        for (int i = 0; i < 60; ++i) {
            ComplexBox ez = ComplexBox::exp(z, prec);
            ComplexBox f = p.eval_interval(z, ez, prec, actx);
            ComplexBox a = px.eval_interval(z, ez, prec, actx);
            ComplexBox b = py.eval_interval(z, ez, prec, actx);
            ComplexBox d = ComplexBox::add(a, ComplexBox::mul(b, ez, prec), prec);
            if (!d.excludes_zero(prec)) break;
            ComplexBox step = ComplexBox::div(f, d, prec);
            ComplexBox nz = ComplexBox::sub(z, step, prec);
            z = ComplexBox(nz.re(), nz.im(), Real(0, prec)); // keep the point, not the enclosure
        }
        Rational halfw = (region.re1 - region.re0) / Rational(8);
        Rational halfh = (region.im1 - region.im0) / Rational(8);
        Rational start_rad = halfw < halfh ? halfw : halfh;
        ComplexBox cert;
        Real srad = Real::from_rational(start_rad, prec, MPFR_RNDU);
        for (int attempt = 0; attempt < 8; ++attempt) {
            ComplexBox start(z.re(), z.im(), srad);
            if (newton_certify(p, px, py, start, prec, actx, cert)) {
                out.push_back({cert, true});
                return;
            }
            srad = Real::mul(srad, Real::from_rational(Rational(1, 2), prec, MPFR_RNDN), prec, MPFR_RNDN);
        }
        // Not polished: report the covering cell.
        ComplexBox cover = segment_ball(region.re0, region.im0, region.re1, region.im1, prec);
        out.push_back({cover, false});
        return;
    }
    if (depth > 24) {
        ComplexBox cover = segment_ball(region.re0, region.im0, region.re1, region.im1, prec);
        for (long i = 0; i < count; ++i) out.push_back({cover, false});
        return;
    }
    // Quadrisect, nudging the split lines off any boundary zero.
    const Rational offsets[] = {Rational(0), Rational(1, 17), Rational(-1, 17), Rational(1, 7),
                                Rational(-1, 7)};
    for (const auto& dre : offsets) {
        for (const auto& dim : offsets) {
            Rational mre = (region.re0 + region.re1) / Rational(2) + dre * region.width();
            Rational mim = (region.im0 + region.im1) / Rational(2) + dim * region.height();
            try {
                Region cells[4] = {
                    Region(region.re0, region.im0, mre, mim),
                    Region(mre, region.im0, region.re1, mim),
                    Region(region.re0, mim, mre, region.im1),
                    Region(mre, mim, region.re1, region.im1),
                };
                long counts[4];
                long sum = 0;
                for (int i = 0; i < 4; ++i) {
                    counts[i] = count_zeros(p, cells[i], ctx);
                    sum += counts[i];
                }
                if (sum != count) continue; // a zero sits on a split line; nudge
                for (int i = 0; i < 4; ++i)
                    locate_rec(p, px, py, cells[i], counts[i], ctx, actx, depth + 1, out);
                return;
            } catch (const BoundaryZeroSuspected&) {
                // nudge the split lines and retry
            }
        }
    }
    throw BoundaryZeroSuspected("could not find zero-free quadrisection lines");
}

} // namespace

ZeroReport locate_zeros(const BivariatePolynomial<AlgebraicNumber>& p, const Region& region,
                        const PrecisionContext& ctx) {
    AlgContext actx;
    actx.prec = ctx;
    long count = count_zeros(p, region, ctx);
    ZeroReport report{region, count, {}};
    BivariatePolynomial<AlgebraicNumber> px = p.partial_x(actx);
    BivariatePolynomial<AlgebraicNumber> py = p.partial_y(actx);
    locate_rec(p, px, py, region, count, ctx, actx, 0, report.zeros);
    // Deterministic order by box center.
    std::sort(report.zeros.begin(), report.zeros.end(), [](const LocatedZero& a, const LocatedZero& b) {
        if (a.box.re() < b.box.re()) return true;
        if (b.box.re() < a.box.re()) return false;
        return a.box.im() < b.box.im();
    });
    return report;
}

std::vector<long> density_report(const BivariatePolynomial<AlgebraicNumber>& p,
                                 const std::vector<Rational>& half_sides,
                                 const PrecisionContext& ctx) {
    std::vector<long> out;
    out.reserve(half_sides.size());
    for (const auto& r : half_sides) {
        if (r <= Rational(0)) throw InvalidInput("half side must be positive");
        out.push_back(count_zeros(p, Region::square(r), ctx));
    }
    return out;
}

} // namespace expeq
