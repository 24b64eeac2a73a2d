#include "expeq/formal.hpp"

#include <sstream>

#include "expeq/errors.hpp"

namespace expeq {

void FormalPoly::add_term(const Monomial& m, const AlgebraicNumber& v, const AlgContext& ctx) {
    if (v.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, v);
        return;
    }
    AlgebraicNumber s = alg_add(it->second, v, ctx);
    if (s.is_zero()) {
        terms_.erase(it);
    } else {
        it->second = std::move(s);
    }
}

AlgebraicNumber FormalPoly::constant_value() const {
    if (terms_.empty()) return AlgebraicNumber(Rational(0));
    if (terms_.size() != 1 || !terms_.begin()->first.empty())
        throw InvalidInput("not a constant formal polynomial");
    return terms_.begin()->second;
}

FormalPoly FormalPoly::plus(const FormalPoly& o, const AlgContext& ctx) const {
    FormalPoly out = *this;
    for (const auto& [m, v] : o.terms_) out.add_term(m, v, ctx);
    return out;
}

FormalPoly FormalPoly::times(const FormalPoly& o, const AlgContext& ctx) const {
    FormalPoly out;
    for (const auto& [ma, va] : terms_)
        for (const auto& [mb, vb] : o.terms_) {
            Monomial m = ma;
            for (const auto& [name, e] : mb) {
                int ne = (m.count(name) ? m[name] : 0) + e;
                if (ne == 0) {
                    m.erase(name);
                } else {
                    m[name] = ne;
                }
            }
            out.add_term(m, alg_mul(va, vb, ctx), ctx);
        }
    return out;
}

FormalPoly FormalPoly::negated(const AlgContext& ctx) const {
    FormalPoly out;
    for (const auto& [m, v] : terms_) out.set(m, alg_neg(v));
    (void)ctx;
    return out;
}

FormalPoly FormalPoly::scaled(const AlgebraicNumber& k, const AlgContext& ctx) const {
    FormalPoly out;
    if (k.is_zero()) return out;
    for (const auto& [m, v] : terms_) out.add_term(m, alg_mul(v, k, ctx), ctx);
    return out;
}

FormalPoly FormalPoly::pow(unsigned long e, const AlgContext& ctx) const {
    FormalPoly acc = FormalPoly::constant(Rational(1));
    FormalPoly cur = *this;
    while (e) {
        if (e & 1) acc = acc.times(cur, ctx);
        e >>= 1;
        if (e) cur = cur.times(cur, ctx);
    }
    return acc;
}

bool FormalPoly::equals(const FormalPoly& o, const AlgContext& ctx) const {
    return plus(o.negated(ctx), ctx).is_zero();
}

std::vector<std::string> FormalPoly::symbols() const {
    std::map<std::string, bool> seen;
    for (const auto& [m, v] : terms_)
        for (const auto& [name, e] : m) seen[name] = true;
    std::vector<std::string> out;
    out.reserve(seen.size());
    for (const auto& [name, b] : seen) out.push_back(name);
    return out;
}

bool FormalPoly::mentions(const std::string& name) const {
    for (const auto& [m, v] : terms_)
        if (m.count(name)) return true;
    return false;
}

int FormalPoly::degree_in(const std::string& name) const {
    int d = 0;
    for (const auto& [m, v] : terms_) {
        auto it = m.find(name);
        if (it != m.end()) d = std::max(d, it->second);
    }
    return d;
}

FormalPoly FormalPoly::substituted(const std::string& name, const FormalPoly& repl,
                                   const AlgContext& ctx) const {
    FormalPoly out;
    for (const auto& [m, v] : terms_) {
        auto it = m.find(name);
        if (it == m.end()) {
            out.add_term(m, v, ctx);
            continue;
        }
        int e = it->second;
        if (e < 0) throw InvalidInput("substitution into a negative power");
        Monomial rest = m;
        rest.erase(name);
        FormalPoly part;
        part.set(rest, v);
        out = out.plus(part.times(repl.pow(static_cast<unsigned long>(e), ctx), ctx), ctx);
    }
    return out;
}

AlgebraicNumber FormalPoly::specialize(const std::map<std::string, AlgebraicNumber>& assignment,
                                       const AlgContext& ctx) const {
    AlgebraicNumber acc(Rational(0));
    for (const auto& [m, v] : terms_) {
        AlgebraicNumber t = v;
        for (const auto& [name, e] : m) {
            auto it = assignment.find(name);
            if (it == assignment.end()) throw InvalidInput("unassigned symbol in specialization: " + name);
            t = alg_mul(t, alg_pow(it->second, e, ctx), ctx);
        }
        acc = alg_add(acc, t, ctx);
    }
    return acc;
}

ComplexBox FormalPoly::eval_box(const std::function<ComplexBox(const std::string&, Prec)>& env, Prec p,
                                const AlgContext& ctx) const {
    ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
    for (const auto& [m, v] : terms_) {
        ComplexBox t = v.box(p, ctx.prec);
        for (const auto& [name, e] : m) t = ComplexBox::mul(t, ComplexBox::pow(env(name, p), e, p), p);
        acc = ComplexBox::add(acc, t, p);
    }
    return acc;
}

std::string FormalPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, v] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.str() << ")";
        for (const auto& [name, e] : m) {
            os << "*" << name;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

/* ---- FormalCoefficient ---- */

FormalCoefficient::FormalCoefficient(FormalPoly num, FormalPoly den, const AlgContext& ctx)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("formal coefficient with zero denominator");
    normalize(ctx);
}

namespace {

// Single-symbol polynomial gcd over the algebraic numbers (monic Euclid); the
// hook for denominator reduction when both sides are univariate in the same
// symbol.
bool as_univariate(const FormalPoly& p, const std::string& name, std::vector<AlgebraicNumber>& coeffs) {
    int deg = 0;
    for (const auto& [m, v] : p.terms()) {
        for (const auto& [n, e] : m)
            if (n != name) return false;
        auto it = m.find(name);
        deg = std::max(deg, it == m.end() ? 0 : it->second);
    }
    coeffs.assign(static_cast<size_t>(deg) + 1, AlgebraicNumber(Rational(0)));
    for (const auto& [m, v] : p.terms()) {
        auto it = m.find(name);
        coeffs[static_cast<size_t>(it == m.end() ? 0 : it->second)] = v;
    }
    return true;
}

FormalPoly from_univariate(const std::vector<AlgebraicNumber>& coeffs, const std::string& name) {
    FormalPoly out;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i].is_zero()) continue;
        Monomial m;
        if (i > 0) m[name] = static_cast<int>(i);
        out.set(m, coeffs[i]);
    }
    return out;
}

void trim_uni(std::vector<AlgebraicNumber>& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

std::vector<AlgebraicNumber> uni_rem(std::vector<AlgebraicNumber> a,
                                     const std::vector<AlgebraicNumber>& b, const AlgContext& ctx) {
    while (a.size() >= b.size() && !a.empty()) {
        AlgebraicNumber q = alg_div(a.back(), b.back(), ctx);
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[off + i] = alg_sub(a[off + i], alg_mul(q, b[i], ctx), ctx);
        a.pop_back();
        trim_uni(a);
    }
    return a;
}

std::vector<AlgebraicNumber> uni_gcd(std::vector<AlgebraicNumber> a, std::vector<AlgebraicNumber> b,
                                     const AlgContext& ctx) {
    trim_uni(a);
    trim_uni(b);
    while (!b.empty()) {
        auto r = uni_rem(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        AlgebraicNumber lead = a.back();
        for (auto& c : a) c = alg_div(c, lead, ctx);
    }
    return a;
}

std::vector<AlgebraicNumber> uni_divexact(const std::vector<AlgebraicNumber>& a,
                                          const std::vector<AlgebraicNumber>& b, const AlgContext& ctx) {
    std::vector<AlgebraicNumber> rem = a, q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0,
                                            AlgebraicNumber(Rational(0)));
    while (rem.size() >= b.size() && !rem.empty()) {
        AlgebraicNumber c = alg_div(rem.back(), b.back(), ctx);
        size_t off = rem.size() - b.size();
        q[off] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[off + i] = alg_sub(rem[off + i], alg_mul(c, b[i], ctx), ctx);
        rem.pop_back();
        trim_uni(rem);
    }
    if (!rem.empty()) throw InvalidInput("inexact univariate division in formal gcd reduction");
    return q;
}

} // namespace

void FormalCoefficient::normalize(const AlgContext& ctx) {
    if (num_.is_zero()) {
        den_ = FormalPoly::constant(Rational(1));
        return;
    }
    // Cancel a common monomial factor.
    auto common = [&](const FormalPoly& p) {
        Monomial acc;
        bool first = true;
        for (const auto& [m, v] : p.terms()) {
            if (first) {
                acc = m;
                first = false;
                continue;
            }
            Monomial next;
            for (const auto& [name, e] : acc) {
                auto it = m.find(name);
                if (it != m.end()) next[name] = std::min(e, it->second);
            }
            acc = std::move(next);
        }
        return acc;
    };
    Monomial g1 = common(num_), g2 = common(den_);
    Monomial g;
    for (const auto& [name, e] : g1) {
        auto it = g2.find(name);
        if (it != g2.end()) g[name] = std::min(e, it->second);
    }
    if (!g.empty()) {
        auto strip = [&](const FormalPoly& p) {
            FormalPoly out;
            for (const auto& [m, v] : p.terms()) {
                Monomial nm = m;
                for (const auto& [name, e] : g) {
                    int ne = nm[name] - e;
                    if (ne == 0) {
                        nm.erase(name);
                    } else {
                        nm[name] = ne;
                    }
                }
                out.set(nm, v);
            }
            return out;
        };
        num_ = strip(num_);
        den_ = strip(den_);
    }
    // Single-symbol gcd reduction when both are univariate in one common symbol.
    auto ns = num_.symbols();
    auto ds = den_.symbols();
    if (!den_.is_constant() && ds.size() == 1 && (ns.empty() || (ns.size() == 1 && ns[0] == ds[0]))) {
        std::vector<AlgebraicNumber> un, ud;
        if (as_univariate(num_, ds[0], un) && as_univariate(den_, ds[0], ud)) {
            trim_uni(un);
            trim_uni(ud);
            auto g3 = uni_gcd(un, ud, ctx);
            if (g3.size() > 1) {
                un = uni_divexact(un, g3, ctx);
                ud = uni_divexact(ud, g3, ctx);
                num_ = from_univariate(un, ds[0]);
                den_ = from_univariate(ud, ds[0]);
            }
        }
    }
    // Scale so the denominator's leading term has coefficient 1.
    AlgebraicNumber lead = den_.terms().rbegin()->second;
    if (!(lead.is_rational() && lead.as_rational().is_one())) {
        AlgebraicNumber inv = alg_inverse(lead);
        num_ = num_.scaled(inv, ctx);
        den_ = den_.scaled(inv, ctx);
    }
}

AlgebraicNumber FormalCoefficient::constant_value(const AlgContext& ctx) const {
    return alg_div(num_.constant_value(), den_.constant_value(), ctx);
}

FormalCoefficient FormalCoefficient::plus(const FormalCoefficient& o, const AlgContext& ctx) const {
    if (den_.equals(o.den_, ctx)) return {num_.plus(o.num_, ctx), den_, ctx};
    FormalPoly n = num_.times(o.den_, ctx).plus(o.num_.times(den_, ctx), ctx);
    return {std::move(n), den_.times(o.den_, ctx), ctx};
}

FormalCoefficient FormalCoefficient::times(const FormalCoefficient& o, const AlgContext& ctx) const {
    return {num_.times(o.num_, ctx), den_.times(o.den_, ctx), ctx};
}

FormalCoefficient FormalCoefficient::negated(const AlgContext& ctx) const {
    return {num_.negated(ctx), den_, ctx};
}

FormalCoefficient FormalCoefficient::inverse(const AlgContext& ctx) const {
    if (is_zero()) throw DivisionByZero("inverse of zero formal coefficient");
    return {den_, num_, ctx};
}

bool FormalCoefficient::equals(const FormalCoefficient& o, const AlgContext& ctx) const {
    return num_.times(o.den_, ctx).equals(o.num_.times(den_, ctx), ctx);
}

std::vector<std::string> FormalCoefficient::symbols() const {
    auto out = num_.symbols();
    for (const auto& s : den_.symbols())
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

FormalCoefficient FormalCoefficient::substituted(const std::string& name, const FormalPoly& repl,
                                                 const AlgContext& ctx) const {
    return {num_.substituted(name, repl, ctx), den_.substituted(name, repl, ctx), ctx};
}

AlgebraicNumber FormalCoefficient::specialize(const std::map<std::string, AlgebraicNumber>& assignment,
                                              const AlgContext& ctx) const {
    AlgebraicNumber d = den_.specialize(assignment, ctx);
    if (d.is_zero())
        throw SpecializationAnnihilates("denominator specializes to zero (clear denominators first)");
    return alg_div(num_.specialize(assignment, ctx), d, ctx);
}

ComplexBox FormalCoefficient::eval_box(const std::function<ComplexBox(const std::string&, Prec)>& env,
                                       Prec p, const AlgContext& ctx) const {
    ComplexBox n = num_.eval_box(env, p, ctx);
    if (den_.is_constant() && den_.constant_value().is_rational() &&
        den_.constant_value().as_rational().is_one())
        return n;
    ComplexBox d = den_.eval_box(env, p, ctx);
    return ComplexBox::div(n, d, p);
}

std::string FormalCoefficient::str() const {
    if (den_.is_constant() && !den_.is_zero() && den_.constant_value().is_rational() &&
        den_.constant_value().as_rational().is_one())
        return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace expeq
