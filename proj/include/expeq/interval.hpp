#pragma once

/* Certified enclosures.
 *
 * RealInterval: endpoint interval [lo, hi] of dyadic reals, outward rounded.
 * ComplexBox:   complex ball, dyadic center (re, im) and dyadic radius >= 0,
 *               outward rounded. The ball form matches the serialization
 *               {re, im, rad} used in problem files bit-exactly.
 *
 * Contract for every operation: the exact image of any point selection from
 * the inputs lies in the output enclosure.
 */

#include <string>
#include <vector>

#include "expeq/real.hpp"

namespace expeq {

class RealInterval {
public:
    RealInterval() = default;
    RealInterval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
    static RealInterval point(const Real& v) { return {v, v}; }
    static RealInterval from_rational(const Rational& q, Prec prec) {
        return {Real::from_rational(q, prec, MPFR_RNDD), Real::from_rational(q, prec, MPFR_RNDU)};
    }
    static RealInterval from_integer(const Integer& z, Prec prec) {
        return {Real::from_integer(z, prec, MPFR_RNDD), Real::from_integer(z, prec, MPFR_RNDU)};
    }
    static RealInterval zero() { return {}; }

    const Real& lo() const { return lo_; }
    const Real& hi() const { return hi_; }
    bool valid() const { return lo_ <= hi_; }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool contains(const Rational& q, Prec prec) const {
        return Real::from_rational(q, prec, MPFR_RNDU) >= lo_ && Real::from_rational(q, prec, MPFR_RNDD) <= hi_;
    }
    bool is_positive() const { return lo_.sign() > 0; }
    bool is_negative() const { return hi_.sign() < 0; }
    Real width(Prec prec) const { return Real::sub(hi_, lo_, prec, MPFR_RNDU); }
    Real mid(Prec prec) const {
        Real s = Real::add(lo_, hi_, prec, MPFR_RNDN);
        return Real::mul(s, Real::pow2(-1, prec), prec, MPFR_RNDN);
    }

    static RealInterval add(const RealInterval& a, const RealInterval& b, Prec p) {
        return {Real::add(a.lo_, b.lo_, p, MPFR_RNDD), Real::add(a.hi_, b.hi_, p, MPFR_RNDU)};
    }
    static RealInterval sub(const RealInterval& a, const RealInterval& b, Prec p) {
        return {Real::sub(a.lo_, b.hi_, p, MPFR_RNDD), Real::sub(a.hi_, b.lo_, p, MPFR_RNDU)};
    }
    static RealInterval neg(const RealInterval& a, Prec p) {
        return {Real::neg(a.hi_, p, MPFR_RNDD), Real::neg(a.lo_, p, MPFR_RNDU)};
    }
    static RealInterval mul(const RealInterval& a, const RealInterval& b, Prec p);
    static RealInterval mul_scalar(const RealInterval& a, const Rational& q, Prec p);
    static RealInterval div(const RealInterval& a, const RealInterval& b, Prec p);
    static RealInterval abs(const RealInterval& a, Prec p);
    // pre: a.lo > 0
    static RealInterval log(const RealInterval& a, Prec p);
    static RealInterval exp(const RealInterval& a, Prec p) {
        return {Real::exp(a.lo_, p, MPFR_RNDD), Real::exp(a.hi_, p, MPFR_RNDU)};
    }
    static RealInterval max1(const RealInterval& a, Prec p) {
        Real one(1, p);
        return {Real::max(a.lo_, one), Real::max(a.hi_, one)};
    }
    static RealInterval pi(Prec p) { return {Real::pi(p, MPFR_RNDD), Real::pi(p, MPFR_RNDU)}; }
    static RealInterval hull(const RealInterval& a, const RealInterval& b) {
        return {Real::min(a.lo(), b.lo()), Real::max(a.hi(), b.hi())};
    }

private:
    Real lo_{};
    Real hi_{};
};

class ComplexBox {
public:
    ComplexBox() = default;
    ComplexBox(Real re, Real im, Real rad)
        : re_(std::move(re)), im_(std::move(im)), rad_(std::move(rad)) {}

    static ComplexBox exact(const Rational& re, const Rational& im, Prec prec);
    static ComplexBox from_intervals(const RealInterval& re, const RealInterval& im, Prec prec);
    static ComplexBox zero() { return {}; }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    const Real& rad() const { return rad_; }

    RealInterval re_interval(Prec p) const {
        return {Real::sub(re_, rad_, p, MPFR_RNDD), Real::add(re_, rad_, p, MPFR_RNDU)};
    }
    RealInterval im_interval(Prec p) const {
        return {Real::sub(im_, rad_, p, MPFR_RNDD), Real::add(im_, rad_, p, MPFR_RNDU)};
    }

    bool contains_zero(Prec p) const;
    // Certified: every point of the box has |z| > 0 (box excludes zero).
    bool excludes_zero(Prec p) const;
    bool contains(const ComplexBox& other, Prec p) const;        // other subset of this (certified)
    bool contains_point(const Rational& re, const Rational& im, Prec p) const;
    bool disjoint(const ComplexBox& other, Prec p) const;        // certified disjointness
    bool overlaps(const ComplexBox& other, Prec p) const { return !disjoint(other, p); }

    static ComplexBox add(const ComplexBox& a, const ComplexBox& b, Prec p);
    static ComplexBox sub(const ComplexBox& a, const ComplexBox& b, Prec p);
    static ComplexBox neg(const ComplexBox& a, Prec p);
    static ComplexBox conj(const ComplexBox& a, Prec p);
    static ComplexBox mul(const ComplexBox& a, const ComplexBox& b, Prec p);
    static ComplexBox div(const ComplexBox& a, const ComplexBox& b, Prec p); // pre: b excludes zero
    static ComplexBox inverse(const ComplexBox& a, Prec p);                  // pre: a excludes zero
    static ComplexBox mul_scalar(const ComplexBox& a, const Rational& q, Prec p);
    static ComplexBox pow(const ComplexBox& a, long e, Prec p); // negative e requires excludes_zero

    // Certified |z| enclosure.
    static RealInterval modulus(const ComplexBox& a, Prec p);
    // Certified enclosure of exp(z) over the whole box.
    static ComplexBox exp(const ComplexBox& a, Prec p);
    // Certified enclosure of log|z|; pre: excludes_zero.
    static RealInterval log_abs(const ComplexBox& a, Prec p);
    // Certified principal-argument enclosure; pre: excludes_zero and the box
    // does not cross the branch cut (negative real axis). A box lying on the
    // cut (strictly negative real part, imaginary interval containing zero
    // with zero width center... ) must be handled by the caller.
    static RealInterval arg_principal(const ComplexBox& a, Prec p);
    // True if the box certifiably avoids the closed negative real axis
    // including zero.
    bool avoids_branch_cut(Prec p) const;

    static ComplexBox two_pi_i(const Rational& multiple, Prec p);

    std::string str(Prec p) const;

private:
    Real re_{};
    Real im_{};
    Real rad_{};
};

// Widens the radius so the box also covers the given extra error bound.
ComplexBox widen(const ComplexBox& a, const Real& extra, Prec p);

} // namespace expeq
