#include "expeq/roots.hpp"

#include <algorithm>

#include "expeq/errors.hpp"

namespace expeq {

namespace {

// Plain complex arithmetic on dyadic reals (round-to-nearest); used only to
// produce approximations, never for certification.
struct CNum {
    Real re, im;
};

CNum cadd(const CNum& a, const CNum& b, Prec p) {
    return {Real::add(a.re, b.re, p, MPFR_RNDN), Real::add(a.im, b.im, p, MPFR_RNDN)};
}
CNum csub(const CNum& a, const CNum& b, Prec p) {
    return {Real::sub(a.re, b.re, p, MPFR_RNDN), Real::sub(a.im, b.im, p, MPFR_RNDN)};
}
CNum cmul(const CNum& a, const CNum& b, Prec p) {
    Real re = Real::sub(Real::mul(a.re, b.re, p, MPFR_RNDN), Real::mul(a.im, b.im, p, MPFR_RNDN), p, MPFR_RNDN);
    Real im = Real::add(Real::mul(a.re, b.im, p, MPFR_RNDN), Real::mul(a.im, b.re, p, MPFR_RNDN), p, MPFR_RNDN);
    return {re, im};
}
Real cnorm2(const CNum& a, Prec p) {
    return Real::add(Real::mul(a.re, a.re, p, MPFR_RNDN), Real::mul(a.im, a.im, p, MPFR_RNDN), p, MPFR_RNDN);
}
CNum cdiv(const CNum& a, const CNum& b, Prec p) {
    Real n2 = cnorm2(b, p);
    CNum conj{b.re, Real::neg(b.im, p, MPFR_RNDN)};
    CNum num = cmul(a, conj, p);
    return {Real::div(num.re, n2, p, MPFR_RNDN), Real::div(num.im, n2, p, MPFR_RNDN)};
}
Real cabs(const CNum& a, Prec p) {
    Real r(p);
    mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
    return r;
}

void eval_with_derivative(const IntPolynomial& f, const CNum& z, Prec p, CNum& fz, CNum& dfz) {
    fz = {Real(0, p), Real(0, p)};
    dfz = {Real(0, p), Real(0, p)};
    for (int i = f.degree(); i >= 0; --i) {
        dfz = cadd(cmul(dfz, z, p), fz, p);
        CNum ci{Real::from_integer(f.coeff(i), p, MPFR_RNDN), Real(0, p)};
        fz = cadd(cmul(fz, z, p), ci, p);
    }
}

bool strictly_inside(const ComplexBox& inner, const ComplexBox& outer, Prec p) {
    Real dre_d = Real::sub(inner.re(), outer.re(), p, MPFR_RNDD);
    Real dre_u = Real::sub(inner.re(), outer.re(), p, MPFR_RNDU);
    Real dim_d = Real::sub(inner.im(), outer.im(), p, MPFR_RNDD);
    Real dim_u = Real::sub(inner.im(), outer.im(), p, MPFR_RNDU);
    Real dre = Real::max(Real::abs(dre_d, p, MPFR_RNDU), Real::abs(dre_u, p, MPFR_RNDU));
    Real dim = Real::max(Real::abs(dim_d, p, MPFR_RNDU), Real::abs(dim_u, p, MPFR_RNDU));
    Real dist(p);
    mpfr_hypot(dist.raw(), dre.raw(), dim.raw(), MPFR_RNDU);
    return Real::add(dist, inner.rad(), p, MPFR_RNDU) < outer.rad();
}

// Ball Newton step: N = c - f(c)/f'(B). Returns false if f'(B) may vanish.
bool newton_step(const IntPolynomial& f, const IntPolynomial& df, const ComplexBox& box, Prec p,
                 ComplexBox& out) {
    ComplexBox dfb = df.eval(box, p);
    if (!dfb.excludes_zero(p)) return false;
    ComplexBox center(box.re(), box.im(), Real(0, p));
    ComplexBox fc = f.eval(center, p);
    ComplexBox quot = ComplexBox::div(fc, dfb, p);
    out = ComplexBox::sub(center, quot, p);
    return true;
}

// Certify that `box` contains exactly one root and contract to target radius.
bool certify_and_refine(const IntPolynomial& f, const IntPolynomial& df, ComplexBox box,
                        const Real& target, Prec p, ComplexBox& out) {
    ComplexBox n;
    if (!newton_step(f, df, box, p, n)) return false;
    if (!strictly_inside(n, box, p)) return false;
    // Unique root in n; iterate the contraction.
    ComplexBox cur = n;
    for (int it = 0; it < 64 && cur.rad() > target; ++it) {
        ComplexBox next;
        if (!newton_step(f, df, cur, p, next)) return false;
        // The root lies in next (image of a box already known to contain it
        // uniquely); keep the tighter of the two.
        if (next.rad() < cur.rad()) {
            cur = next;
        } else {
            return false; // stalled at this precision
        }
    }
    if (cur.rad() > target) return false;
    out = cur;
    return true;
}

// Attempts to certify a real root near the given approximation (real interval
// Newton); returns a ComplexBox with exact zero imaginary part on success.
bool certify_real(const IntPolynomial& f, const IntPolynomial& df, const Real& x, const Real& halfwidth,
                  const Real& target, Prec p, ComplexBox& out) {
    RealInterval box{Real::sub(x, halfwidth, p, MPFR_RNDD), Real::add(x, halfwidth, p, MPFR_RNDU)};
    RealInterval dfb = df.eval(box, p);
    if (dfb.contains_zero()) return false;
    // The Newton point must lie inside the interval for the mean-value step.
    auto clamped_mid = [&](const RealInterval& iv) {
        Real m = iv.mid(p);
        return Real::min(Real::max(m, iv.lo()), iv.hi());
    };
    Real m = clamped_mid(box);
    RealInterval fm = f.eval(RealInterval::point(m), p);
    RealInterval n = RealInterval::sub(RealInterval::point(m), RealInterval::div(fm, dfb, p), p);
    if (!(n.lo() > box.lo() && n.hi() < box.hi())) return false;
    RealInterval cur = n;
    for (int it = 0; it < 64; ++it) {
        Real rad = Real::mul(cur.width(p), Real::pow2(-1, p), p, MPFR_RNDU);
        if (rad <= target) break;
        RealInterval dcur = df.eval(cur, p);
        if (dcur.contains_zero()) return false;
        Real mm = clamped_mid(cur);
        RealInterval fmm = f.eval(RealInterval::point(mm), p);
        RealInterval next = RealInterval::sub(RealInterval::point(mm), RealInterval::div(fmm, dcur, p), p);
        if (Real::sub(next.hi(), next.lo(), p, MPFR_RNDU) >= Real::sub(cur.hi(), cur.lo(), p, MPFR_RNDU))
            return false;
        cur = next;
    }
    // Rebuild the box from distances to the actual stored center; a plain
    // width/2 radius can miss the endpoints after the midpoint rounds.
    ComplexBox covering = ComplexBox::from_intervals(cur, RealInterval::zero(), p);
    if (covering.rad() > target) return false;
    out = ComplexBox(covering.re(), Real(0, p), covering.rad());
    return true;
}

struct CenterOrder {
    Prec p;
    bool operator()(const ComplexBox& a, const ComplexBox& b) const {
        if (a.re() < b.re()) return true;
        if (b.re() < a.re()) return false;
        return a.im() < b.im();
    }
};

} // namespace

std::vector<ComplexBox> isolate_roots(const IntPolynomial& poly, const Real& target_radius,
                                      PrecisionContext ctx) {
    if (poly.is_zero() || poly.degree() < 1) throw InvalidInput("isolate_roots requires degree >= 1");
    IntPolynomial f = poly.squarefree_part();
    IntPolynomial df = f.derivative();
    int n = f.degree();

    PrecisionContext pc = ctx;
    for (;;) {
        Prec p = pc.bits;
        // Cauchy bound on root moduli.
        Real bound(1, p);
        for (int i = 0; i < n; ++i) {
            Real q = Real::div(Real::from_integer(Integer::abs(f.coeff(i)), p, MPFR_RNDU),
                               Real::from_integer(Integer::abs(f.lead()), p, MPFR_RNDD), p, MPFR_RNDU);
            bound = Real::max(bound, q);
        }
        bound = Real::add(bound, Real(1, p), p, MPFR_RNDU);

        // Aberth-Ehrlich from a perturbed circle.
        std::vector<CNum> z;
        z.reserve(static_cast<size_t>(n));
        Real pi = Real::pi(p, MPFR_RNDN);
        for (int k = 0; k < n; ++k) {
            Real angle = Real::div(Real::mul(pi, Real(2 * k, p), p, MPFR_RNDN), Real(n, p), p, MPFR_RNDN);
            angle = Real::add(angle, Real::div(Real(2, p), Real(5, p), p, MPFR_RNDN), p, MPFR_RNDN);
            Real r = Real::mul(bound, Real::div(Real(7, p), Real(10, p), p, MPFR_RNDN), p, MPFR_RNDN);
            z.push_back({Real::mul(r, Real::cos(angle, p, MPFR_RNDN), p, MPFR_RNDN),
                         Real::mul(r, Real::sin(angle, p, MPFR_RNDN), p, MPFR_RNDN)});
        }
        Real tol = Real::pow2(-static_cast<long>(p * 3 / 4), p);
        int iters = 60 + 20 * n;
        for (int it = 0; it < iters; ++it) {
            Real worst(0, p);
            for (int k = 0; k < n; ++k) {
                CNum fz, dfz;
                eval_with_derivative(f, z[static_cast<size_t>(k)], p, fz, dfz);
                if (cabs(fz, p).is_zero()) continue;
                CNum w = cdiv(fz, dfz, p);
                CNum s{Real(0, p), Real(0, p)};
                for (int j = 0; j < n; ++j) {
                    if (j == k) continue;
                    CNum d = csub(z[static_cast<size_t>(k)], z[static_cast<size_t>(j)], p);
                    s = cadd(s, cdiv({Real(1, p), Real(0, p)}, d, p), p);
                }
                CNum denom = csub({Real(1, p), Real(0, p)}, cmul(w, s, p), p);
                CNum corr = cdiv(w, denom, p);
                z[static_cast<size_t>(k)] = csub(z[static_cast<size_t>(k)], corr, p);
                Real rel = Real::div(cabs(corr, p), Real::add(Real(1, p), cabs(z[static_cast<size_t>(k)], p), p, MPFR_RNDN), p, MPFR_RNDN);
                worst = Real::max(worst, rel);
            }
            if (worst < tol) break;
        }

        // Certification. Conjugate symmetry: certify real and upper-half roots,
        // mirror the lower half.
        std::vector<ComplexBox> boxes;
        bool ok = true;
        std::vector<int> lower_partner(static_cast<size_t>(n), -1);
        for (int k = 0; k < n && ok; ++k) {
            const CNum& zk = z[static_cast<size_t>(k)];
            // Separation-based initial radius.
            Real sep = bound;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                sep = Real::min(sep, cabs(csub(zk, z[static_cast<size_t>(j)], p), p));
            }
            Real s0 = Real::mul(sep, Real::div(Real(1, p), Real(4, p), p, MPFR_RNDN), p, MPFR_RNDN);
            Real floor = Real::pow2(-static_cast<long>(p / 2), p);
            if (s0 < floor) s0 = floor;

            bool near_real = Real::abs(zk.im, p, MPFR_RNDU) <= Real::mul(s0, Real(2, p), p, MPFR_RNDU);
            bool done = false;
            if (near_real) {
                ComplexBox rb;
                Real hw = Real::mul(s0, Real(3, p), p, MPFR_RNDU);
                for (int attempt = 0; attempt < 10 && !done; ++attempt) {
                    if (certify_real(f, df, zk.re, hw, target_radius, p, rb)) {
                        boxes.push_back(rb);
                        done = true;
                    }
                    hw = Real::mul(hw, Real::div(Real(1, p), Real(2, p), p, MPFR_RNDN), p, MPFR_RNDN);
                }
            }
            if (!done && zk.im.sign() < 0) {
                lower_partner[static_cast<size_t>(k)] = 1; // mirrored later
                continue;
            }
            if (!done) {
                Real s = s0;
                for (int attempt = 0; attempt < 6 && !done; ++attempt) {
                    ComplexBox start(zk.re, zk.im, s);
                    ComplexBox cb;
                    if (certify_and_refine(f, df, start, target_radius, p, cb)) {
                        boxes.push_back(cb);
                        done = true;
                    }
                    s = Real::mul(s, Real::div(Real(1, p), Real(2, p), p, MPFR_RNDN), p, MPFR_RNDN);
                }
            }
            ok = done;
        }

        if (ok) {
            // Mirror strictly-complex boxes for the conjugate roots.
            std::vector<ComplexBox> full = boxes;
            for (const auto& b : boxes) {
                RealInterval imiv = b.im_interval(p);
                if (imiv.is_positive()) full.push_back(ComplexBox::conj(b, p));
            }
            if (static_cast<int>(full.size()) == n) {
                bool disjoint = true;
                for (size_t i = 0; i < full.size() && disjoint; ++i)
                    for (size_t j = i + 1; j < full.size() && disjoint; ++j)
                        if (!full[i].disjoint(full[j], p)) disjoint = false;
                if (disjoint) {
                    std::sort(full.begin(), full.end(), CenterOrder{p});
                    return full;
                }
            }
        }
        pc = pc.escalate(); // throws PrecisionExhausted at the cap
    }
}

ComplexBox refine_root_box(const IntPolynomial& poly, const ComplexBox& isolating,
                           const Real& target_radius, PrecisionContext ctx) {
    if (isolating.rad() <= target_radius) return isolating;
    IntPolynomial f = poly.squarefree_part();
    IntPolynomial df = f.derivative();
    PrecisionContext pc = ctx;
    for (;;) {
        Prec p = pc.bits;
        ComplexBox out;
        if (certify_and_refine(f, df, isolating, target_radius, p, out)) return out;
        // Fallback: re-isolate everything and match the unique overlapping box.
        try {
            auto all = isolate_roots(f, target_radius, pc);
            const ComplexBox* match = nullptr;
            int count = 0;
            for (const auto& b : all) {
                if (b.overlaps(isolating, p)) {
                    ++count;
                    match = &b;
                }
            }
            if (count == 1) return *match;
        } catch (const PrecisionExhausted&) {
            // fall through to escalate (and rethrow at cap)
        }
        pc = pc.escalate();
    }
}

} // namespace expeq
