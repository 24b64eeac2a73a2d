#include "expeq/intpoly.hpp"

#include <sstream>

namespace expeq {

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
    std::vector<Integer> c(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
}

IntPolynomial operator-(const IntPolynomial& a) { return a.mul_scalar(Integer(-1)); }

IntPolynomial IntPolynomial::mul_scalar(const Integer& k) const {
    if (k.is_zero()) return {};
    std::vector<Integer> c = c_;
    for (auto& v : c) v *= k;
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::derivative() const {
    if (degree() < 1) return {};
    std::vector<Integer> c;
    c.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * Integer(static_cast<long>(i)));
    return IntPolynomial(std::move(c));
}

Integer IntPolynomial::content() const {
    Integer g(0);
    for (const auto& v : c_) g = Integer::gcd(g, v);
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
    if (is_zero()) return {};
    Integer g = content();
    std::vector<Integer> c;
    c.reserve(c_.size());
    for (const auto& v : c_) c.push_back(Integer::divexact(v, g));
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::normalized() const {
    IntPolynomial p = primitive_part();
    if (!p.is_zero() && p.lead().sign() < 0) p = p.mul_scalar(Integer(-1));
    return p;
}

IntPolynomial IntPolynomial::negate_var() const {
    std::vector<Integer> c = c_;
    for (size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
    return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::reversed() const {
    std::vector<Integer> c(c_.rbegin(), c_.rend());
    return IntPolynomial(std::move(c));
}

int IntPolynomial::valuation() const {
    if (is_zero()) return -1;
    int v = 0;
    while (c_[static_cast<size_t>(v)].is_zero()) ++v;
    return v;
}

IntPolynomial IntPolynomial::shift_down(int v) const {
    std::vector<Integer> c(c_.begin() + v, c_.end());
    return IntPolynomial(std::move(c));
}

Integer IntPolynomial::eval(const Integer& x) const {
    Integer acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational IntPolynomial::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rational(*it);
    return acc;
}

ComplexBox IntPolynomial::eval(const ComplexBox& z, Prec p) const {
    ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = ComplexBox::mul(acc, z, p);
        acc = ComplexBox::add(acc, ComplexBox::exact(Rational(*it), Rational(0), p), p);
    }
    return acc;
}

RealInterval IntPolynomial::eval(const RealInterval& x, Prec p) const {
    RealInterval acc = RealInterval::zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc = RealInterval::mul(acc, x, p);
        acc = RealInterval::add(acc, RealInterval::from_integer(*it, p), p);
    }
    return acc;
}

Integer IntPolynomial::norm2_squared() const {
    Integer s(0);
    for (const auto& v : c_) s += v * v;
    return s;
}

Integer IntPolynomial::height() const {
    Integer h(0);
    for (const auto& v : c_) {
        Integer a = Integer::abs(v);
        if (a > h) h = a;
    }
    return h;
}

bool IntPolynomial::try_divide(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& quotient) {
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    if (a.is_zero()) {
        quotient = {};
        return true;
    }
    if (a.degree() < b.degree()) return false;
    std::vector<Integer> rem = a.c_;
    std::vector<Integer> q(static_cast<size_t>(a.degree() - b.degree()) + 1, Integer(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        Integer& top = rem[static_cast<size_t>(k + b.degree())];
        if (top.is_zero()) continue;
        if (!Integer::divides(b.lead(), top)) return false;
        Integer qk = Integer::divexact(top, b.lead());
        q[static_cast<size_t>(k)] = qk;
        for (int i = 0; i <= b.degree(); ++i)
            rem[static_cast<size_t>(k + i)] -= qk * b.coeff(i);
    }
    for (const auto& v : rem)
        if (!v.is_zero()) return false;
    quotient = IntPolynomial(std::move(q));
    return true;
}

IntPolynomial IntPolynomial::divexact(const IntPolynomial& a, const IntPolynomial& b) {
    IntPolynomial q;
    if (!try_divide(a, b, q)) throw InvalidInput("inexact polynomial division");
    return q;
}

IntPolynomial IntPolynomial::pseudo_rem(const IntPolynomial& a, const IntPolynomial& b) {
    if (b.is_zero()) throw DivisionByZero("pseudo-remainder by zero");
    IntPolynomial r = a;
    int e = a.degree() - b.degree() + 1;
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        // r <- lc(b) * r - lc(r) * x^k * b
        IntPolynomial t = (IntPolynomial::x_power(k) * b).mul_scalar(r.lead());
        r = r.mul_scalar(b.lead()) - t;
        --e;
    }
    if (e > 0) {
        Integer scale = Integer::pow(b.lead() < Integer(0) ? -b.lead() : b.lead(), static_cast<unsigned long>(e));
        // Sign-exact scaling is irrelevant for the primitive PRS below.
        r = r.mul_scalar(scale);
    }
    return r;
}

IntPolynomial IntPolynomial::gcd(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();
    Integer cont = Integer::gcd(a.content(), b.content());
    IntPolynomial f = a.primitive_part();
    IntPolynomial g = b.primitive_part();
    if (f.degree() < g.degree()) std::swap(f, g);
    // Primitive PRS: simple and exact; desk-scale degrees keep it cheap.
    while (!g.is_zero()) {
        IntPolynomial r = pseudo_rem(f, g).primitive_part();
        f = g;
        g = r;
    }
    IntPolynomial res = f.normalized().mul_scalar(cont);
    if (res.lead().sign() < 0) res = res.mul_scalar(Integer(-1));
    return res;
}

IntPolynomial IntPolynomial::squarefree_part() const {
    if (is_zero()) return {};
    if (degree() == 0) return IntPolynomial{1};
    IntPolynomial f = normalized();
    IntPolynomial g = gcd(f, f.derivative());
    return divexact(f, g).normalized();
}

std::vector<std::pair<IntPolynomial, int>> IntPolynomial::squarefree_decomposition() const {
    // Yun's algorithm on the primitive part.
    std::vector<std::pair<IntPolynomial, int>> out;
    if (is_zero() || degree() == 0) return out;
    IntPolynomial f = normalized();
    IntPolynomial df = f.derivative();
    IntPolynomial a = gcd(f, df);
    IntPolynomial c = divexact(f, a);
    IntPolynomial d = divexact(df, a) - c.derivative();
    int mult = 1;
    while (!(c.degree() == 0)) {
        IntPolynomial g = gcd(c, d);
        if (g.degree() > 0) out.emplace_back(g.normalized(), mult);
        c = divexact(c, g);
        d = divexact(d, g) - c.derivative();
        ++mult;
    }
    return out;
}

std::string IntPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& a = coeff(i);
        if (a.is_zero()) continue;
        std::string mag = Integer::abs(a).str();
        if (first) {
            if (a.sign() < 0) os << "-";
            first = false;
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
        }
        bool unit = mag == "1";
        if (i == 0) {
            os << mag;
        } else {
            if (!unit) os << mag << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

Integer det_bareiss(std::vector<std::vector<Integer>> m) {
    size_t n = m.size();
    if (n == 0) return {1};
    Integer denom(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return {0};
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = Integer::divexact(t, denom);
            }
            m[i][k] = Integer(0);
        }
        denom = m[k][k];
    }
    Integer det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

IntPolynomial cyclotomic(unsigned long q) {
    // x^q - 1 divided by the cyclotomic polynomials of the proper divisors.
    std::vector<Integer> c(static_cast<size_t>(q) + 1, Integer(0));
    c[0] = Integer(-1);
    c[static_cast<size_t>(q)] = Integer(1);
    IntPolynomial num{std::move(c)};
    for (unsigned long d = 1; d < q; ++d) {
        if (q % d != 0) continue;
        num = IntPolynomial::divexact(num, cyclotomic(d));
    }
    return num;
}

Integer factor_coeff_bound(const IntPolynomial& f, int m) {
    if (m < 0) return {1};
    Integer norm = Integer::sqrt_ceil(f.norm2_squared());
    Integer binom = Integer::binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(m / 2));
    return binom * norm * Integer::abs(f.lead()) + Integer(1);
}

} // namespace expeq
