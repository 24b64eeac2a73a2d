#include "expeq/interval.hpp"

#include <sstream>

namespace expeq {

namespace {

Real slack(const Real& d, const Real& u, Prec p) { return Real::sub(u, d, p, MPFR_RNDU); }

// Upper bound on |a - b|.
Real abs_diff_upper(const Real& a, const Real& b, Prec p) {
    Real d = Real::sub(a, b, p, MPFR_RNDD);
    Real u = Real::sub(a, b, p, MPFR_RNDU);
    return Real::max(Real::abs(d, p, MPFR_RNDU), Real::abs(u, p, MPFR_RNDU));
}

// Lower bound on |a - b|.
Real abs_diff_lower(const Real& a, const Real& b, Prec p) {
    Real d = Real::sub(a, b, p, MPFR_RNDD);
    Real u = Real::sub(a, b, p, MPFR_RNDU);
    if (d.sign() <= 0 && u.sign() >= 0) return Real(0, p);
    return Real::min(Real::abs(d, p, MPFR_RNDD), Real::abs(u, p, MPFR_RNDD));
}

Real hypot_rnd(const Real& x, const Real& y, Prec p, mpfr_rnd_t rnd) {
    Real r(p);
    mpfr_hypot(r.raw(), x.raw(), y.raw(), rnd);
    return r;
}

} // namespace

RealInterval RealInterval::mul(const RealInterval& a, const RealInterval& b, Prec p) {
    const Real* as[2] = {&a.lo(), &a.hi()};
    const Real* bs[2] = {&b.lo(), &b.hi()};
    Real lo = Real::mul(*as[0], *bs[0], p, MPFR_RNDD);
    Real hi = Real::mul(*as[0], *bs[0], p, MPFR_RNDU);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = Real::min(lo, Real::mul(*as[i], *bs[j], p, MPFR_RNDD));
            hi = Real::max(hi, Real::mul(*as[i], *bs[j], p, MPFR_RNDU));
        }
    return {lo, hi};
}

RealInterval RealInterval::mul_scalar(const RealInterval& a, const Rational& q, Prec p) {
    Real qd = Real::from_rational(q, p, MPFR_RNDD);
    Real qu = Real::from_rational(q, p, MPFR_RNDU);
    return mul(a, {qd, qu}, p);
}

RealInterval RealInterval::div(const RealInterval& a, const RealInterval& b, Prec p) {
    if (b.contains_zero()) throw DivisionByZero("interval division by interval containing zero");
    Real lo = Real::div(a.lo(), b.lo(), p, MPFR_RNDD);
    Real hi = Real::div(a.lo(), b.lo(), p, MPFR_RNDU);
    const Real* as[2] = {&a.lo(), &a.hi()};
    const Real* bs[2] = {&b.lo(), &b.hi()};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 0 && j == 0) continue;
            lo = Real::min(lo, Real::div(*as[i], *bs[j], p, MPFR_RNDD));
            hi = Real::max(hi, Real::div(*as[i], *bs[j], p, MPFR_RNDU));
        }
    return {lo, hi};
}

RealInterval RealInterval::abs(const RealInterval& a, Prec p) {
    Real alo = Real::abs(a.lo(), p, MPFR_RNDU);
    Real ahi = Real::abs(a.hi(), p, MPFR_RNDU);
    Real hi = Real::max(alo, ahi);
    if (a.contains_zero()) return {Real(0, p), hi};
    Real lo = Real::min(Real::abs(a.lo(), p, MPFR_RNDD), Real::abs(a.hi(), p, MPFR_RNDD));
    return {lo, hi};
}

RealInterval RealInterval::log(const RealInterval& a, Prec p) {
    if (a.lo().sign() <= 0) throw InvalidInput("log of interval touching (-inf, 0]");
    return {Real::log(a.lo(), p, MPFR_RNDD), Real::log(a.hi(), p, MPFR_RNDU)};
}

ComplexBox ComplexBox::exact(const Rational& re, const Rational& im, Prec prec) {
    return from_intervals(RealInterval::from_rational(re, prec), RealInterval::from_rational(im, prec), prec);
}

ComplexBox ComplexBox::from_intervals(const RealInterval& re, const RealInterval& im, Prec p) {
    Real cre = re.mid(p);
    Real cim = im.mid(p);
    Real hw_re = Real::max(abs_diff_upper(re.hi(), cre, p), abs_diff_upper(cre, re.lo(), p));
    Real hw_im = Real::max(abs_diff_upper(im.hi(), cim, p), abs_diff_upper(cim, im.lo(), p));
    Real rad = Real::add(hw_re, hw_im, p, MPFR_RNDU);
    return {cre, cim, rad};
}

bool ComplexBox::contains_zero(Prec p) const {
    return hypot_rnd(re_, im_, p, MPFR_RNDU) <= rad_;
}

bool ComplexBox::excludes_zero(Prec p) const {
    Real lo = hypot_rnd(re_, im_, p, MPFR_RNDD);
    return Real::sub(lo, rad_, p, MPFR_RNDD).sign() > 0;
}

bool ComplexBox::contains(const ComplexBox& other, Prec p) const {
    Real dre = abs_diff_upper(re_, other.re_, p);
    Real dim = abs_diff_upper(im_, other.im_, p);
    Real dist = hypot_rnd(dre, dim, p, MPFR_RNDU);
    Real need = Real::add(dist, other.rad_, p, MPFR_RNDU);
    return need <= rad_;
}

bool ComplexBox::contains_point(const Rational& re, const Rational& im, Prec p) const {
    Real pre_d = Real::from_rational(re, p, MPFR_RNDD);
    Real pim_d = Real::from_rational(im, p, MPFR_RNDD);
    Real pre_u = Real::from_rational(re, p, MPFR_RNDU);
    Real pim_u = Real::from_rational(im, p, MPFR_RNDU);
    Real dre = Real::max(abs_diff_upper(re_, pre_d, p), abs_diff_upper(re_, pre_u, p));
    Real dim = Real::max(abs_diff_upper(im_, pim_d, p), abs_diff_upper(im_, pim_u, p));
    return hypot_rnd(dre, dim, p, MPFR_RNDU) <= rad_;
}

bool ComplexBox::disjoint(const ComplexBox& other, Prec p) const {
    Real dre = abs_diff_lower(re_, other.re_, p);
    Real dim = abs_diff_lower(im_, other.im_, p);
    Real dist = hypot_rnd(dre, dim, p, MPFR_RNDD);
    Real rsum = Real::add(rad_, other.rad_, p, MPFR_RNDU);
    return dist > rsum;
}

ComplexBox ComplexBox::add(const ComplexBox& a, const ComplexBox& b, Prec p) {
    Real re = Real::add(a.re_, b.re_, p, MPFR_RNDN);
    Real im = Real::add(a.im_, b.im_, p, MPFR_RNDN);
    Real sl = Real::add(slack(Real::add(a.re_, b.re_, p, MPFR_RNDD), Real::add(a.re_, b.re_, p, MPFR_RNDU), p),
                        slack(Real::add(a.im_, b.im_, p, MPFR_RNDD), Real::add(a.im_, b.im_, p, MPFR_RNDU), p), p, MPFR_RNDU);
    Real rad = Real::add(Real::add(a.rad_, b.rad_, p, MPFR_RNDU), sl, p, MPFR_RNDU);
    return {re, im, rad};
}

ComplexBox ComplexBox::sub(const ComplexBox& a, const ComplexBox& b, Prec p) {
    return add(a, neg(b, p), p);
}

ComplexBox ComplexBox::neg(const ComplexBox& a, Prec p) {
    return {Real::neg(a.re_, p, MPFR_RNDN), Real::neg(a.im_, p, MPFR_RNDN), a.rad_};
}

ComplexBox ComplexBox::conj(const ComplexBox& a, Prec p) {
    return {a.re_, Real::neg(a.im_, p, MPFR_RNDN), a.rad_};
}

ComplexBox ComplexBox::mul(const ComplexBox& a, const ComplexBox& b, Prec p) {
    // Center product with rounding slack folded into the radius.
    auto prod = [&](const Real& x, const Real& y, mpfr_rnd_t r) { return Real::mul(x, y, p, r); };
    Real re_d = Real::sub(prod(a.re_, b.re_, MPFR_RNDD), prod(a.im_, b.im_, MPFR_RNDU), p, MPFR_RNDD);
    Real re_u = Real::sub(prod(a.re_, b.re_, MPFR_RNDU), prod(a.im_, b.im_, MPFR_RNDD), p, MPFR_RNDU);
    Real im_d = Real::add(prod(a.re_, b.im_, MPFR_RNDD), prod(a.im_, b.re_, MPFR_RNDD), p, MPFR_RNDD);
    Real im_u = Real::add(prod(a.re_, b.im_, MPFR_RNDU), prod(a.im_, b.re_, MPFR_RNDU), p, MPFR_RNDU);
    Real ca = hypot_rnd(a.re_, a.im_, p, MPFR_RNDU);
    Real cb = hypot_rnd(b.re_, b.im_, p, MPFR_RNDU);
    Real cross = Real::add(Real::add(Real::mul(ca, b.rad_, p, MPFR_RNDU), Real::mul(cb, a.rad_, p, MPFR_RNDU), p, MPFR_RNDU),
                           Real::mul(a.rad_, b.rad_, p, MPFR_RNDU), p, MPFR_RNDU);
    Real sl = Real::add(slack(re_d, re_u, p), slack(im_d, im_u, p), p, MPFR_RNDU);
    Real rad = Real::add(cross, sl, p, MPFR_RNDU);
    return {re_d, im_d, rad};
}

ComplexBox ComplexBox::inverse(const ComplexBox& a, Prec p) {
    if (!a.excludes_zero(p)) throw DivisionByZero("inverse of a box containing zero");
    Real mod_d = hypot_rnd(a.re_, a.im_, p, MPFR_RNDD);
    Real lb = Real::sub(mod_d, a.rad_, p, MPFR_RNDD); // > 0 by the guard above
    Real den_d = Real::mul(mod_d, mod_d, p, MPFR_RNDD);
    Real den_u = Real::mul(hypot_rnd(a.re_, a.im_, p, MPFR_RNDU), hypot_rnd(a.re_, a.im_, p, MPFR_RNDU), p, MPFR_RNDU);
    Real re_d = Real::div(a.re_, a.re_.sign() >= 0 ? den_u : den_d, p, MPFR_RNDD);
    Real re_u = Real::div(a.re_, a.re_.sign() >= 0 ? den_d : den_u, p, MPFR_RNDU);
    Real nim = Real::neg(a.im_, p, MPFR_RNDN);
    Real im_d = Real::div(nim, nim.sign() >= 0 ? den_u : den_d, p, MPFR_RNDD);
    Real im_u = Real::div(nim, nim.sign() >= 0 ? den_d : den_u, p, MPFR_RNDU);
    // |1/z - 1/c| <= |z - c| / (|z| |c|) <= rad / (lb * mod_d)
    Real err = Real::div(a.rad_, Real::mul(lb, mod_d, p, MPFR_RNDD), p, MPFR_RNDU);
    Real sl = Real::add(slack(re_d, re_u, p), slack(im_d, im_u, p), p, MPFR_RNDU);
    return {re_d, im_d, Real::add(err, sl, p, MPFR_RNDU)};
}

ComplexBox ComplexBox::div(const ComplexBox& a, const ComplexBox& b, Prec p) {
    return mul(a, inverse(b, p), p);
}

ComplexBox ComplexBox::mul_scalar(const ComplexBox& a, const Rational& q, Prec p) {
    ComplexBox qb = exact(q, Rational(0), p);
    return mul(a, qb, p);
}

ComplexBox ComplexBox::pow(const ComplexBox& a, long e, Prec p) {
    if (e == 0) return exact(Rational(1), Rational(0), p);
    ComplexBox base = e < 0 ? inverse(a, p) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    ComplexBox acc = exact(Rational(1), Rational(0), p);
    ComplexBox cur = base;
    while (k) {
        if (k & 1) acc = mul(acc, cur, p);
        k >>= 1;
        if (k) cur = mul(cur, cur, p);
    }
    return acc;
}

RealInterval ComplexBox::modulus(const ComplexBox& a, Prec p) {
    Real lo = Real::sub(hypot_rnd(a.re_, a.im_, p, MPFR_RNDD), a.rad_, p, MPFR_RNDD);
    if (lo.sign() < 0) lo = Real(0, p);
    Real hi = Real::add(hypot_rnd(a.re_, a.im_, p, MPFR_RNDU), a.rad_, p, MPFR_RNDU);
    return {lo, hi};
}

ComplexBox ComplexBox::exp(const ComplexBox& a, Prec p) {
    Real ex_d = Real::exp(a.re_, p, MPFR_RNDD);
    Real ex_u = Real::exp(a.re_, p, MPFR_RNDU);
    Real cos_d = Real::cos(a.im_, p, MPFR_RNDD);
    Real cos_u = Real::cos(a.im_, p, MPFR_RNDU);
    Real sin_d = Real::sin(a.im_, p, MPFR_RNDD);
    Real sin_u = Real::sin(a.im_, p, MPFR_RNDU);
    auto min4 = [&](const Real& x1, const Real& x2, const Real& y1, const Real& y2) {
        Real m = Real::mul(x1, y1, p, MPFR_RNDD);
        m = Real::min(m, Real::mul(x1, y2, p, MPFR_RNDD));
        m = Real::min(m, Real::mul(x2, y1, p, MPFR_RNDD));
        m = Real::min(m, Real::mul(x2, y2, p, MPFR_RNDD));
        return m;
    };
    auto max4 = [&](const Real& x1, const Real& x2, const Real& y1, const Real& y2) {
        Real m = Real::mul(x1, y1, p, MPFR_RNDU);
        m = Real::max(m, Real::mul(x1, y2, p, MPFR_RNDU));
        m = Real::max(m, Real::mul(x2, y1, p, MPFR_RNDU));
        m = Real::max(m, Real::mul(x2, y2, p, MPFR_RNDU));
        return m;
    };
    Real re_d = min4(ex_d, ex_u, cos_d, cos_u);
    Real re_u = max4(ex_d, ex_u, cos_d, cos_u);
    Real im_d = min4(ex_d, ex_u, sin_d, sin_u);
    Real im_u = max4(ex_d, ex_u, sin_d, sin_u);
    // |e^z - e^c| <= |e^c| (e^r - 1) over the ball.
    Real expm1_r(p);
    mpfr_expm1(expm1_r.raw(), a.rad_.raw(), MPFR_RNDU);
    Real err = Real::mul(ex_u, expm1_r, p, MPFR_RNDU);
    ComplexBox center = from_intervals({re_d, re_u}, {im_d, im_u}, p);
    return widen(center, err, p);
}

RealInterval ComplexBox::log_abs(const ComplexBox& a, Prec p) {
    RealInterval mod = modulus(a, p);
    if (mod.lo().sign() <= 0) throw InvalidInput("log_abs of a box touching zero");
    return RealInterval::log(mod, p);
}

bool ComplexBox::avoids_branch_cut(Prec p) const {
    RealInterval re = re_interval(p);
    RealInterval im = im_interval(p);
    return im.is_positive() || im.is_negative() || re.is_positive();
}

RealInterval ComplexBox::arg_principal(const ComplexBox& a, Prec p) {
    if (!a.excludes_zero(p)) throw InvalidInput("argument of a box containing zero");
    Real th_d = Real::atan2(a.im_, a.re_, p, MPFR_RNDD);
    Real th_u = Real::atan2(a.im_, a.re_, p, MPFR_RNDU);
    Real mod_d = hypot_rnd(a.re_, a.im_, p, MPFR_RNDD);
    Real ratio = Real::div(a.rad_, mod_d, p, MPFR_RNDU);
    Real delta(p);
    if (ratio >= Real(1, p)) {
        delta = Real::pi(p, MPFR_RNDU);
    } else {
        mpfr_asin(delta.raw(), ratio.raw(), MPFR_RNDU);
    }
    return {Real::sub(th_d, delta, p, MPFR_RNDD), Real::add(th_u, delta, p, MPFR_RNDU)};
}

ComplexBox ComplexBox::two_pi_i(const Rational& multiple, Prec p) {
    RealInterval pi2 = RealInterval::mul_scalar(RealInterval::pi(p), multiple * Rational(2), p);
    return from_intervals(RealInterval::zero(), pi2, p);
}

ComplexBox widen(const ComplexBox& a, const Real& extra, Prec p) {
    return {a.re(), a.im(), Real::add(a.rad(), extra, p, MPFR_RNDU)};
}

std::string ComplexBox::str(Prec) const {
    std::ostringstream os;
    os << "(" << re_.str_approx(12) << (im_.sign() < 0 ? " - " : " + ")
       << Real::abs(im_, im_.prec(), MPFR_RNDN).str_approx(12) << "i ± " << rad_.str_approx(6) << ")";
    return os.str();
}

} // namespace expeq
