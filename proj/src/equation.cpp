#include "expeq/equation.hpp"

#include <sstream>

#include "expeq/errors.hpp"

namespace expeq {

LogElement LogElement::log_of(AlgebraicNumber lambda, long branch) {
    if (lambda.is_zero()) throw InvalidInput("logarithm of zero");
    LogElement e;
    e.kind = Kind::log_of_algebraic;
    e.lambda = std::move(lambda);
    e.branch = branch;
    return e;
}

LogElement LogElement::two_pi_i(Rational multiple) {
    LogElement e;
    e.kind = Kind::two_pi_i_scaled;
    e.two_pi_multiple = std::move(multiple);
    return e;
}

LogElement LogElement::formal(std::string name) {
    LogElement e;
    e.kind = Kind::formal;
    e.name = std::move(name);
    return e;
}

std::string LogElement::describe() const {
    switch (kind) {
        case Kind::log_of_algebraic: {
            std::ostringstream os;
            os << "log(" << lambda.str() << ")";
            if (branch != 0) os << " + " << branch << "*2pii";
            return os.str();
        }
        case Kind::two_pi_i_scaled:
            return two_pi_multiple.str() + "*2pii";
        case Kind::formal:
            return name;
    }
    return "?";
}

AlgContext ExpPolyEquation::alg_context(Prec bits) const {
    AlgContext ctx;
    ctx.prec.bits = bits;
    return ctx;
}

namespace {

// Certified value of a logarithm branch of an algebraic number.
ComplexBox log_branch_box(const AlgebraicNumber& lambda, long branch, Prec p) {
    PrecisionContext pc;
    pc.bits = p;
    for (;;) {
        ComplexBox lb = lambda.box(pc.bits, pc);
        if (lb.excludes_zero(pc.bits)) {
            RealInterval re = ComplexBox::log_abs(lb, pc.bits);
            if (lb.avoids_branch_cut(pc.bits)) {
                RealInterval arg = ComplexBox::arg_principal(lb, pc.bits);
                RealInterval shift = RealInterval::mul_scalar(RealInterval::pi(pc.bits),
                                                              Rational(2 * branch), pc.bits);
                return ComplexBox::from_intervals(re, RealInterval::add(arg, shift, pc.bits), p);
            }
            // Box straddles the cut: a real negative value has Arg = pi exactly.
            if (lambda.is_real(pc) && lb.re_interval(pc.bits).is_negative()) {
                RealInterval arg = RealInterval::mul_scalar(RealInterval::pi(pc.bits),
                                                            Rational(2 * branch + 1), pc.bits);
                return ComplexBox::from_intervals(re, arg, p);
            }
        }
        pc = pc.escalate();
    }
}

} // namespace

ComplexBox ExpPolyEquation::basis_value(size_t j, Prec p) const {
    if (j >= basis.size()) throw InvalidInput("basis index out of range");
    const LogElement& e = basis[j];
    switch (e.kind) {
        case LogElement::Kind::log_of_algebraic:
            return log_branch_box(e.lambda, e.branch, p);
        case LogElement::Kind::two_pi_i_scaled:
            return ComplexBox::two_pi_i(e.two_pi_multiple, p);
        case LogElement::Kind::formal:
            return symbol_box(e.name, p);
    }
    throw InvalidInput("unknown basis kind");
}

ComplexBox ExpPolyEquation::symbol_box(const std::string& name, Prec p) const {
    if (name == kTwoPiISymbol) return ComplexBox::two_pi_i(Rational(1), p);
    if (name.rfind("@b", 0) == 0) {
        size_t j = std::stoul(name.substr(2));
        return basis_value(j, p);
    }
    if (name.rfind("@exp:", 0) == 0) {
        ComplexBox inner = symbol_box(name.substr(5), p);
        return ComplexBox::exp(inner, p);
    }
    auto it = symbols.find(name);
    if (it == symbols.end()) throw InvalidInput("unknown symbol: " + name);
    const SymbolDef& def = it->second;
    if (def.kind == SymbolDef::Kind::free_box) {
        ComplexBox center = ComplexBox::exact(def.re, def.im, p);
        return widen(center, Real::from_rational(def.rad, p, MPFR_RNDU), p);
    }
    ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
    for (size_t j = 0; j < def.combo.size(); ++j) {
        if (def.combo[j].is_zero()) continue;
        acc = ComplexBox::add(acc, ComplexBox::mul_scalar(basis_value(j, p), def.combo[j], p), p);
    }
    return acc;
}

std::function<ComplexBox(const std::string&, Prec)> ExpPolyEquation::env() const {
    return [this](const std::string& name, Prec p) { return symbol_box(name, p); };
}

FormalPoly ExpPolyEquation::basis_formal_value(size_t j) const {
    const LogElement& e = basis[j];
    switch (e.kind) {
        case LogElement::Kind::log_of_algebraic:
            return FormalPoly::symbol(basis_symbol(j));
        case LogElement::Kind::two_pi_i_scaled: {
            FormalPoly p = FormalPoly::symbol(kTwoPiISymbol);
            return p.scaled(AlgebraicNumber(e.two_pi_multiple));
        }
        case LogElement::Kind::formal:
            return FormalPoly::symbol(e.name);
    }
    throw InvalidInput("unknown basis kind");
}

FormalPoly ExpPolyEquation::resolve_bound(const FormalPoly& poly, const AlgContext& ctx) const {
    FormalPoly out = poly;
    for (int round = 0; round < 4; ++round) {
        bool changed = false;
        for (const auto& name : out.symbols()) {
            auto it = symbols.find(name);
            if (it == symbols.end() || it->second.kind != SymbolDef::Kind::basis_combination) continue;
            FormalPoly repl;
            for (size_t j = 0; j < it->second.combo.size(); ++j) {
                if (it->second.combo[j].is_zero()) continue;
                repl = repl.plus(basis_formal_value(j).scaled(AlgebraicNumber(it->second.combo[j]), ctx),
                                 ctx);
            }
            out = out.substituted(name, repl, ctx);
            changed = true;
        }
        if (!changed) return out;
    }
    return out;
}

ComplexBox ExpPolyEquation::value_box(const std::vector<Integer>& n, Prec prec,
                                      const AlgContext& ctx) const {
    if (n.size() != basis.size()) throw InvalidInput("candidate dimension mismatch");
    ComplexBox w = ComplexBox::exact(Rational(0), Rational(0), prec);
    for (size_t j = 0; j < n.size(); ++j) {
        if (n[j].is_zero()) continue;
        w = ComplexBox::add(w, ComplexBox::mul_scalar(basis_value(j, prec), Rational(n[j]), prec), prec);
    }
    ComplexBox ew = ComplexBox::exp(w, prec);
    // Evaluate p coefficient-wise through the symbol environment.
    ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), prec);
    for (const auto& [e, coeff] : p.terms()) {
        ComplexBox t = coeff.eval_box(env(), prec, ctx);
        t = ComplexBox::mul(t, ComplexBox::pow(w, e.first, prec), prec);
        t = ComplexBox::mul(t, ComplexBox::pow(ew, e.second, prec), prec);
        acc = ComplexBox::add(acc, t, prec);
    }
    return acc;
}

bool verify_relation_exact(const std::vector<LogElement>& basis, const std::vector<Integer>& m,
                           const PrecisionContext& prec, const AlgContext& ctx) {
    if (m.size() != basis.size()) throw InvalidInput("relation dimension mismatch");
    AlgebraicNumber prod(Rational(1));
    Rational twopi_mult(0); // rational multiple of 2*pi*i from branches and scaled entries
    ComplexBox logsum = ComplexBox::exact(Rational(0), Rational(0), prec.bits);
    bool any_log = false;
    for (size_t j = 0; j < m.size(); ++j) {
        if (m[j].is_zero()) continue;
        if (!m[j].fits_long()) return false;
        long e = m[j].to_long();
        const LogElement& el = basis[j];
        switch (el.kind) {
            case LogElement::Kind::formal:
                return false; // no symbolic handle on a free transcendental
            case LogElement::Kind::two_pi_i_scaled:
                twopi_mult += el.two_pi_multiple * Rational(e);
                break;
            case LogElement::Kind::log_of_algebraic: {
                prod = alg_mul(prod, alg_pow(el.lambda, e, ctx), ctx);
                twopi_mult += Rational(el.branch) * Rational(e);
                any_log = true;
                break;
            }
        }
    }
    if (!(prod.is_rational() && prod.as_rational().is_one())) return false;
    // prod = 1 makes sum_j m_j log(lambda_j) = 2*pi*i*s for an integer s;
    // certify s from the principal-log sum and fold it into the bookkeeping.
    Integer s(0);
    if (any_log) {
        PrecisionContext pc = prec;
        for (;;) {
            Prec p = pc.bits;
            ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
            ExpPolyEquation helper;
            helper.basis = basis;
            for (size_t j = 0; j < m.size(); ++j) {
                if (m[j].is_zero()) continue;
                if (basis[j].kind != LogElement::Kind::log_of_algebraic) continue;
                LogElement principal = LogElement::log_of(basis[j].lambda, 0);
                ExpPolyEquation h2;
                h2.basis = {principal};
                acc = ComplexBox::add(acc, ComplexBox::mul_scalar(h2.basis_value(0, p), Rational(m[j]), p), p);
            }
            ComplexBox twopi = ComplexBox::two_pi_i(Rational(1), p);
            RealInterval ratio = ComplexBox::div(acc, twopi, p).im_interval(p);
            // acc is purely a multiple of 2*pi*i; its ratio has Re = s, Im = 0.
            RealInterval re_ratio = ComplexBox::div(acc, twopi, p).re_interval(p);
            if (re_ratio.width(p) < Real(1, p)) {
                Real mid = re_ratio.mid(p);
                Real rounded(p);
                mpfr_round(rounded.raw(), mid.raw());
                mpfr_get_z(s.raw(), rounded.raw(), MPFR_RNDN);
                break;
            }
            (void)ratio;
            if (pc.bits >= pc.cap) return false;
            pc = pc.escalate();
        }
    }
    return (Rational(s) + twopi_mult).is_zero();
}

ExpPolyEquation ExponentialSum::carrier() const {
    ExpPolyEquation eq;
    eq.basis = basis;
    eq.symbols = symbols;
    eq.asserted_independent = asserted_independent;
    return eq;
}

ComplexBox ExponentialSum::term_box(size_t idx, const std::vector<Integer>& n, Prec p,
                                    const AlgContext& ctx) const {
    const Term& t = terms.at(idx);
    ExpPolyEquation eq = carrier();
    ComplexBox w = ComplexBox::exact(Rational(0), Rational(0), p);
    for (size_t j = 0; j < n.size(); ++j) {
        if (n[j].is_zero()) continue;
        w = ComplexBox::add(w, ComplexBox::mul_scalar(eq.basis_value(j, p), Rational(n[j]), p), p);
    }
    ComplexBox q = ComplexBox::exact(Rational(0), Rational(0), p);
    for (auto it = t.w_poly.rbegin(); it != t.w_poly.rend(); ++it) {
        q = ComplexBox::mul(q, w, p);
        q = ComplexBox::add(q, it->eval_box(eq.env(), p, ctx), p);
    }
    ComplexBox factor = ComplexBox::exp(ComplexBox::mul_scalar(w, Rational(t.level), p), p);
    return ComplexBox::mul(q, factor, p);
}

FormalCoefficient ExponentialSum::term_symbolic(size_t idx, const std::vector<Integer>& n,
                                                const AlgContext& ctx) const {
    const Term& t = terms.at(idx);
    ExpPolyEquation eq = carrier();
    if (n.size() != basis.size()) throw InvalidInput("candidate dimension mismatch");
    // w = n.b as an exact formal polynomial.
    FormalPoly w;
    for (size_t j = 0; j < n.size(); ++j) {
        if (n[j].is_zero()) continue;
        w = w.plus(eq.basis_formal_value(j).scaled(AlgebraicNumber(Rational(n[j])), ctx), ctx);
    }
    w = eq.resolve_bound(w, ctx);
    // q(w).
    FormalCoefficient q;
    for (auto it = t.w_poly.rbegin(); it != t.w_poly.rend(); ++it) {
        q = q.times(FormalCoefficient(w), ctx);
        FormalCoefficient c(eq.resolve_bound(it->num(), ctx), eq.resolve_bound(it->den(), ctx), ctx);
        q = q.plus(c, ctx);
    }
    // exp(level * n.b) = prod exp(b_j)^(level*n_j), exactly.
    AlgebraicNumber alg_part(Rational(1));
    FormalPoly sym_num = FormalPoly::constant(Rational(1));
    FormalPoly sym_den = FormalPoly::constant(Rational(1));
    for (size_t j = 0; j < n.size(); ++j) {
        if (n[j].is_zero() || t.level == 0) continue;
        if (!n[j].fits_long()) throw GuardExceeded("candidate coordinate too large");
        long e = n[j].to_long() * t.level;
        const LogElement& el = basis[j];
        switch (el.kind) {
            case LogElement::Kind::log_of_algebraic:
                alg_part = alg_mul(alg_part, alg_pow(el.lambda, e, ctx), ctx);
                break;
            case LogElement::Kind::two_pi_i_scaled: {
                Rational r = el.two_pi_multiple * Rational(e);
                alg_part = alg_mul(alg_part, root_of_unity(r.num(), r.den(), ctx.prec), ctx);
                break;
            }
            case LogElement::Kind::formal: {
                FormalPoly s = FormalPoly::symbol(exp_symbol(el.name), static_cast<int>(std::abs(e)));
                if (e > 0) {
                    sym_num = sym_num.times(s, ctx);
                } else {
                    sym_den = sym_den.times(s, ctx);
                }
                break;
            }
        }
    }
    FormalCoefficient expfac(sym_num.scaled(alg_part, ctx), sym_den, ctx);
    return q.times(expfac, ctx);
}

} // namespace expeq
