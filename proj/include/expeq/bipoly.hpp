#pragma once

/* Sparse bivariate polynomials over a pluggable coefficient ring.
 * Terms live in an ordered map keyed by (x-exponent, y-exponent); zero
 * coefficients are never stored. CoeffOps<T> supplies the ring operations
 * (taking an AlgContext so algebraic coefficients can thread their
 * degree-cap/precision policy through).
 */

#include <map>
#include <sstream>
#include <utility>

#include "expeq/algebraic.hpp"

namespace expeq {

template <typename T>
struct CoeffOps;

template <>
struct CoeffOps<Rational> {
    static bool is_zero(const Rational& a) { return a.is_zero(); }
    static Rational add(const Rational& a, const Rational& b, const AlgContext&) { return a + b; }
    static Rational mul(const Rational& a, const Rational& b, const AlgContext&) { return a * b; }
    static Rational neg(const Rational& a, const AlgContext&) { return -a; }
    static Rational from_long(long v) { return {v}; }
    static ComplexBox to_box(const Rational& a, Prec p, const AlgContext&) {
        return ComplexBox::exact(a, Rational(0), p);
    }
    static std::string str(const Rational& a) { return a.str(); }
};

template <>
struct CoeffOps<AlgebraicNumber> {
    static bool is_zero(const AlgebraicNumber& a) { return a.is_zero(); }
    static AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& c) {
        return alg_add(a, b, c);
    }
    static AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b, const AlgContext& c) {
        return alg_mul(a, b, c);
    }
    static AlgebraicNumber neg(const AlgebraicNumber& a, const AlgContext&) { return alg_neg(a); }
    static AlgebraicNumber from_long(long v) { return AlgebraicNumber(Rational(v)); }
    static ComplexBox to_box(const AlgebraicNumber& a, Prec p, const AlgContext& c) {
        return a.box(p, c.prec);
    }
    static std::string str(const AlgebraicNumber& a) { return a.str(); }
};

template <typename T>
class BivariatePolynomial {
public:
    using Exponents = std::pair<int, int>;
    using TermMap = std::map<Exponents, T>;

    BivariatePolynomial() = default;

    static BivariatePolynomial constant(T v) {
        BivariatePolynomial p;
        p.set({0, 0}, std::move(v));
        return p;
    }
    static BivariatePolynomial monomial(int i, int j, T v) {
        BivariatePolynomial p;
        p.set({i, j}, std::move(v));
        return p;
    }

    void set(Exponents e, T v) {
        if (CoeffOps<T>::is_zero(v)) {
            terms_.erase(e);
        } else {
            terms_.insert_or_assign(e, std::move(v));
        }
    }
    void add_term(Exponents e, const T& v, const AlgContext& ctx = {}) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            set(e, v);
        } else {
            T s = CoeffOps<T>::add(it->second, v, ctx);
            if (CoeffOps<T>::is_zero(s)) {
                terms_.erase(it);
            } else {
                it->second = std::move(s);
            }
        }
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    int degree_x() const {
        int d = -1;
        for (const auto& [e, v] : terms_) d = std::max(d, e.first);
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (const auto& [e, v] : terms_) d = std::max(d, e.second);
        return d;
    }

    BivariatePolynomial partial_x(const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [e, v] : terms_) {
            if (e.first == 0) continue;
            T scaled = CoeffOps<T>::mul(v, CoeffOps<T>::from_long(e.first), ctx);
            out.add_term({e.first - 1, e.second}, scaled, ctx);
        }
        return out;
    }
    BivariatePolynomial partial_y(const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [e, v] : terms_) {
            if (e.second == 0) continue;
            T scaled = CoeffOps<T>::mul(v, CoeffOps<T>::from_long(e.second), ctx);
            out.add_term({e.first, e.second - 1}, scaled, ctx);
        }
        return out;
    }

    // (d/dx p != 0, d/dy p != 0)
    std::pair<bool, bool> partials_nonzero() const {
        bool px = false, py = false;
        for (const auto& [e, v] : terms_) {
            if (e.first > 0) px = true;
            if (e.second > 0) py = true;
        }
        return {px, py};
    }

    BivariatePolynomial plus(const BivariatePolynomial& o, const AlgContext& ctx = {}) const {
        BivariatePolynomial out = *this;
        for (const auto& [e, v] : o.terms_) out.add_term(e, v, ctx);
        return out;
    }
    BivariatePolynomial times(const BivariatePolynomial& o, const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [ea, va] : terms_)
            for (const auto& [eb, vb] : o.terms_)
                out.add_term({ea.first + eb.first, ea.second + eb.second},
                             CoeffOps<T>::mul(va, vb, ctx), ctx);
        return out;
    }
    BivariatePolynomial negated(const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [e, v] : terms_) out.set(e, CoeffOps<T>::neg(v, ctx));
        return out;
    }
    BivariatePolynomial scaled(const T& k, const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [e, v] : terms_) out.add_term(e, CoeffOps<T>::mul(v, k, ctx), ctx);
        return out;
    }

    // Certified enclosure of p(x0, y0) for every x0 in x, y0 in y.
    ComplexBox eval_interval(const ComplexBox& x, const ComplexBox& y, Prec p,
                             const AlgContext& ctx = {}) const {
        int dx = std::max(degree_x(), 0);
        int dy = std::max(degree_y(), 0);
        std::vector<ComplexBox> xp(static_cast<size_t>(dx) + 1), yp(static_cast<size_t>(dy) + 1);
        xp[0] = ComplexBox::exact(Rational(1), Rational(0), p);
        yp[0] = xp[0];
        for (int i = 1; i <= dx; ++i) xp[static_cast<size_t>(i)] = ComplexBox::mul(xp[static_cast<size_t>(i - 1)], x, p);
        for (int j = 1; j <= dy; ++j) yp[static_cast<size_t>(j)] = ComplexBox::mul(yp[static_cast<size_t>(j - 1)], y, p);
        ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
        for (const auto& [e, v] : terms_) {
            ComplexBox t = ComplexBox::mul(CoeffOps<T>::to_box(v, p, ctx),
                                           ComplexBox::mul(xp[static_cast<size_t>(e.first)],
                                                           yp[static_cast<size_t>(e.second)], p),
                                           p);
            acc = ComplexBox::add(acc, t, p);
        }
        return acc;
    }

    // p(shift + X, scale * Y), expanded.
    BivariatePolynomial compose_affine(const T& shift, const T& scale, const AlgContext& ctx = {}) const {
        BivariatePolynomial out;
        for (const auto& [e, v] : terms_) {
            // scale^j * v * (shift + X)^i * Y^j
            T c = v;
            for (int k = 0; k < e.second; ++k) c = CoeffOps<T>::mul(c, scale, ctx);
            // binomial expansion of (shift + X)^i
            std::vector<T> shift_pow;
            shift_pow.push_back(CoeffOps<T>::from_long(1));
            for (int k = 1; k <= e.first; ++k)
                shift_pow.push_back(CoeffOps<T>::mul(shift_pow.back(), shift, ctx));
            for (int k = 0; k <= e.first; ++k) {
                Integer binom = Integer::binomial(static_cast<unsigned long>(e.first),
                                                  static_cast<unsigned long>(k));
                T term = CoeffOps<T>::mul(c, shift_pow[static_cast<size_t>(e.first - k)], ctx);
                T scaled_term = CoeffOps<T>::mul(term, CoeffOps<T>::from_long(1), ctx);
                // multiply by the binomial coefficient
                T b = CoeffOps<T>::from_long(0);
                // binom fits a long for desk-scale degrees
                if (!binom.fits_long()) throw GuardExceeded("binomial overflow in compose_affine");
                b = CoeffOps<T>::from_long(binom.to_long());
                out.add_term({k, e.second}, CoeffOps<T>::mul(scaled_term, b, ctx), ctx);
            }
        }
        return out;
    }

    template <typename U, typename Fn>
    BivariatePolynomial<U> transform(Fn&& fn, const AlgContext& ctx = {}) const {
        BivariatePolynomial<U> out;
        for (const auto& [e, v] : terms_) out.add_term(e, fn(v), ctx);
        return out;
    }

    std::string str(const std::string& xv = "x", const std::string& yv = "y") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, v] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << CoeffOps<T>::str(v) << ")";
            if (e.first > 0) os << "*" << xv << (e.first > 1 ? "^" + std::to_string(e.first) : "");
            if (e.second > 0) os << "*" << yv << (e.second > 1 ? "^" + std::to_string(e.second) : "");
        }
        return os.str();
    }

private:
    TermMap terms_;
};

} // namespace expeq
