#include <algorithm>

#include "expeq/equation.hpp"
#include "expeq/errors.hpp"

namespace expeq {

ExponentialSum expand_exponential_sum(const ExpPolyEquation& eq, const AlgContext& ctx) {
    (void)ctx;
    ExponentialSum sum;
    sum.basis = eq.basis;
    sum.symbols = eq.symbols;
    sum.asserted_independent = eq.asserted_independent;
    std::map<int, std::vector<FormalCoefficient>> by_level;
    for (const auto& [e, v] : eq.p.terms()) {
        auto& w_poly = by_level[e.second];
        if (static_cast<int>(w_poly.size()) <= e.first)
            w_poly.resize(static_cast<size_t>(e.first) + 1, FormalCoefficient{});
        w_poly[static_cast<size_t>(e.first)] = v;
    }
    for (auto& [level, w_poly] : by_level) {
        while (!w_poly.empty() && w_poly.back().is_zero()) w_poly.pop_back();
        if (w_poly.empty()) continue;
        sum.terms.push_back({level, std::move(w_poly)});
    }
    return sum;
}

/* ---- rescale_denominator ---- */

namespace {

// Rewrites one symbol across every coefficient of the polynomial.
BivariatePolynomial<FormalCoefficient> substitute_everywhere(
    const BivariatePolynomial<FormalCoefficient>& p, const std::string& name, const FormalPoly& repl,
    const AlgContext& ctx) {
    BivariatePolynomial<FormalCoefficient> out;
    for (const auto& [e, v] : p.terms()) out.add_term(e, v.substituted(name, repl, ctx), ctx);
    return out;
}

bool mentions_symbol(const BivariatePolynomial<FormalCoefficient>& p, const std::string& name) {
    for (const auto& [e, v] : p.terms()) {
        if (v.num().mentions(name) || v.den().mentions(name)) return true;
    }
    return false;
}

// Integer nearest to the midpoint of a width-<1 interval guaranteed to
// contain an integer.
std::optional<Integer> unique_integer_in(const RealInterval& iv, Prec p) {
    if (iv.width(p) >= Real(1, p)) return std::nullopt;
    Real mid = iv.mid(p);
    Real rounded(p);
    mpfr_round(rounded.raw(), mid.raw());
    Integer z;
    mpfr_get_z(z.raw(), rounded.raw(), MPFR_RNDN);
    // verify containment
    Real zr = Real::from_integer(z, p, MPFR_RNDN);
    if (zr >= iv.lo() && zr <= iv.hi()) return z;
    return std::nullopt;
}

} // namespace

ExpPolyEquation rescale_denominator(const ExpPolyEquation& eq, const Integer& N, const AlgContext& ctx) {
    if (N < Integer(1)) throw InvalidInput("rescale_denominator requires N >= 1");
    if (N.is_one()) return eq;
    if (!N.fits_long()) throw GuardExceeded("rescale denominator too large");
    unsigned long n = static_cast<unsigned long>(N.to_long());

    ExpPolyEquation out;
    out.asserted_independent = eq.asserted_independent;
    out.p = eq.p;
    out.symbols = eq.symbols;
    Rational invN(Integer(1), N);

    for (size_t j = 0; j < eq.basis.size(); ++j) {
        const LogElement& e = eq.basis[j];
        switch (e.kind) {
            case LogElement::Kind::two_pi_i_scaled:
                out.basis.push_back(LogElement::two_pi_i(e.two_pi_multiple * invN));
                break;
            case LogElement::Kind::log_of_algebraic: {
                // New entry is log(lambda^(1/N)) for the N-th root designated by
                // exp(b_j / N), with the branch recomputed exactly.
                auto approx = [&](Prec p) {
                    ComplexBox b = eq.basis_value(j, p);
                    return ComplexBox::exp(ComplexBox::mul_scalar(b, invN, p), p);
                };
                AlgebraicNumber root = alg_nth_root(e.lambda, n, approx, ctx);
                // branch': (theta - Arg(root)) / 2pi where theta = Im(b_j)/N.
                PrecisionContext pc = ctx.prec;
                std::optional<Integer> k;
                for (;;) {
                    Prec p = pc.bits;
                    ComplexBox bj = eq.basis_value(j, p);
                    RealInterval theta = ComplexBox::mul_scalar(bj, invN, p).im_interval(p);
                    ComplexBox rb = root.box(p, pc);
                    if (rb.excludes_zero(p) && rb.avoids_branch_cut(p)) {
                        RealInterval arg = ComplexBox::arg_principal(rb, p);
                        RealInterval twopi = RealInterval::mul_scalar(RealInterval::pi(p), Rational(2), p);
                        RealInterval kiv = RealInterval::div(RealInterval::sub(theta, arg, p), twopi, p);
                        k = unique_integer_in(kiv, p);
                        if (k) break;
                    } else if (rb.excludes_zero(p) && root.is_real(pc) &&
                               rb.re_interval(p).is_negative()) {
                        RealInterval pi_iv = RealInterval::pi(p);
                        RealInterval twopi = RealInterval::mul_scalar(pi_iv, Rational(2), p);
                        RealInterval kiv = RealInterval::div(RealInterval::sub(theta, pi_iv, p), twopi, p);
                        k = unique_integer_in(kiv, p);
                        if (k) break;
                    }
                    pc = pc.escalate();
                }
                if (!k->fits_long()) throw GuardExceeded("rescaled branch index too large");
                out.basis.push_back(LogElement::log_of(root, k->to_long()));
                break;
            }
            case LogElement::Kind::formal: {
                // New free symbol for tau/N; rebind tau = N * (new entry).
                std::string scaled_name = e.name + "#div" + N.str();
                out.basis.push_back(LogElement::formal(scaled_name));
                auto it = eq.symbols.find(e.name);
                if (it == eq.symbols.end()) throw InvalidInput("formal basis entry without symbol value");
                SymbolDef scaled = it->second;
                if (scaled.kind == SymbolDef::Kind::free_box) {
                    scaled.re = scaled.re * invN;
                    scaled.im = scaled.im * invN;
                    scaled.rad = scaled.rad * invN;
                } else {
                    for (auto& qc : scaled.combo) qc = qc * invN;
                }
                out.symbols[scaled_name] = scaled;
                SymbolDef bind;
                bind.kind = SymbolDef::Kind::basis_combination;
                bind.combo.assign(eq.basis.size(), Rational(0));
                bind.combo[j] = Rational(N);
                out.symbols[e.name] = bind;
                break;
            }
        }
    }
    // Bound combos over the old basis rescale by N.
    for (auto& [name, def] : out.symbols) {
        if (def.kind != SymbolDef::Kind::basis_combination) continue;
        if (eq.symbols.count(name) && eq.symbols.at(name).kind == SymbolDef::Kind::basis_combination) {
            for (auto& qc : def.combo) qc = qc * Rational(N);
        }
    }
    // Basis-reference symbols in coefficients: @bj_old = N * @bj_new.
    for (size_t j = 0; j < eq.basis.size(); ++j) {
        std::string name = basis_symbol(j);
        if (!mentions_symbol(out.p, name)) continue;
        out.p = substitute_everywhere(out.p, name, FormalPoly::symbol(name).scaled(AlgebraicNumber(Rational(N)), ctx),
                                      ctx);
    }
    return out;
}

/* ---- classify_degeneracy ---- */

DegeneracyResult classify_degeneracy(const ExponentialSum& sum, const std::vector<Integer>& candidate,
                                     const PrecisionContext& prec, int subset_guard) {
    size_t s = sum.terms.size();
    if (candidate.size() != sum.basis.size()) throw InvalidInput("candidate dimension mismatch");
    if (static_cast<int>(s) > subset_guard)
        throw GuardExceeded("degeneracy subset scan over " + std::to_string(s) + " terms exceeds guard");
    if (s <= 1) return {};
    AlgContext ctx;
    ctx.prec = prec;

    // Symbolic zero certificates per term (exact).
    std::vector<int> symbolically_zero(s, -1);
    auto term_is_zero = [&](size_t i) {
        if (symbolically_zero[i] < 0)
            symbolically_zero[i] = sum.term_symbolic(i, candidate, ctx).is_zero() ? 1 : 0;
        return symbolically_zero[i] == 1;
    };
    for (size_t i = 0; i < s; ++i) {
        if (term_is_zero(i)) return {true, {sum.terms[i].level}};
    }

    PrecisionContext pc = prec;
    std::vector<size_t> unresolved;
    for (;;) {
        Prec p = pc.bits;
        std::vector<ComplexBox> vals;
        vals.reserve(s);
        for (size_t i = 0; i < s; ++i) vals.push_back(sum.term_box(i, candidate, p, ctx));
        unresolved.clear();
        for (size_t mask = 1; mask + 1 < (size_t{1} << s); ++mask) {
            ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
            for (size_t i = 0; i < s; ++i)
                if (mask & (size_t{1} << i)) acc = ComplexBox::add(acc, vals[i], p);
            if (acc.excludes_zero(p)) continue;
            // Interval straddles zero: exact symbolic check.
            FormalCoefficient sym;
            for (size_t i = 0; i < s; ++i)
                if (mask & (size_t{1} << i)) sym = sym.plus(sum.term_symbolic(i, candidate, ctx), ctx);
            if (sym.is_zero()) {
                std::vector<int> witness;
                for (size_t i = 0; i < s; ++i)
                    if (mask & (size_t{1} << i)) witness.push_back(sum.terms[i].level);
                return {true, witness};
            }
            unresolved.push_back(mask);
        }
        if (unresolved.empty()) return {};
        pc = pc.escalate(); // throws PrecisionExhausted at the cap
    }
}

/* ---- extract_algebraic_log_sublattice ---- */

SublatticeExtraction extract_algebraic_log_sublattice(const ExpPolyEquation& eq) {
    SublatticeExtraction out;
    std::vector<size_t> kept;
    std::optional<size_t> tpi;
    for (size_t j = 0; j < eq.basis.size(); ++j) {
        if (!eq.basis[j].algebraic_exponential()) continue;
        if (eq.basis[j].kind == LogElement::Kind::two_pi_i_scaled) {
            if (tpi) throw InvalidInput("two 2-pi-i basis entries are never Q-linearly independent");
            tpi = j;
        } else {
            kept.push_back(j);
        }
    }
    if (tpi) {
        out.kept.push_back(*tpi);
        out.two_pi_i_index = 0;
    }
    for (size_t j : kept) out.kept.push_back(j);
    for (size_t idx : out.kept) {
        out.c.push_back(eq.basis[idx]);
        std::vector<Integer> row(eq.basis.size(), Integer(0));
        row[idx] = Integer(1);
        out.embedding.push_back(std::move(row));
    }
    return out;
}

/* ---- translate ---- */

namespace {

// Formal value of b_j using the naming of the *new* basis (post-extraction).
FormalPoly old_entry_formal_value(const ExpPolyEquation& eq, const SublatticeExtraction& sub, size_t j) {
    const LogElement& e = eq.basis[j];
    switch (e.kind) {
        case LogElement::Kind::log_of_algebraic: {
            for (size_t i = 0; i < sub.kept.size(); ++i)
                if (sub.kept[i] == j) return FormalPoly::symbol(basis_symbol(i));
            throw InvalidInput("log entry missing from extraction");
        }
        case LogElement::Kind::two_pi_i_scaled:
            return FormalPoly::symbol(kTwoPiISymbol).scaled(AlgebraicNumber(e.two_pi_multiple));
        case LogElement::Kind::formal:
            return FormalPoly::symbol(e.name);
    }
    throw InvalidInput("unknown basis kind");
}

} // namespace

ExpPolyEquation translate_core(const ExpPolyEquation& eq, const SublatticeExtraction& sub,
                               const FormalCoefficient& a_formal, const FormalCoefficient& a_exp,
                               const AlgContext& ctx) {
    if (a_exp.is_zero()) throw InvalidInput("translate with zero exponential factor");
    ExpPolyEquation out;
    out.asserted_independent = eq.asserted_independent;
    out.basis = sub.c;

    // Coefficients: first rename @b<old> to the new indexing (via fresh
    // temporaries to avoid collisions), then apply the affine substitution.
    BivariatePolynomial<FormalCoefficient> poly = eq.p;
    std::map<size_t, std::string> temp;
    for (size_t i = 0; i < sub.kept.size(); ++i) {
        size_t oldj = sub.kept[i];
        if (eq.basis[oldj].kind != LogElement::Kind::log_of_algebraic) continue;
        std::string tmp = "@tmp" + std::to_string(i);
        if (mentions_symbol(poly, basis_symbol(oldj)))
            poly = substitute_everywhere(poly, basis_symbol(oldj), FormalPoly::symbol(tmp), ctx);
        temp[i] = tmp;
    }
    for (const auto& [i, tmp] : temp) {
        if (mentions_symbol(poly, tmp))
            poly = substitute_everywhere(poly, tmp, FormalPoly::symbol(basis_symbol(i)), ctx);
    }

    out.p = poly.compose_affine(a_formal, a_exp, ctx);

    // Symbols: bound combos reindex onto c; weights on dropped (formal)
    // entries fold into the entry's own symbol via substitution at resolve
    // time, so they must vanish here.
    for (const auto& [name, def] : eq.symbols) {
        if (def.kind != SymbolDef::Kind::basis_combination) {
            out.symbols[name] = def;
            continue;
        }
        SymbolDef nd;
        nd.kind = SymbolDef::Kind::basis_combination;
        nd.combo.assign(sub.c.size(), Rational(0));
        bool ok = true;
        for (size_t j = 0; j < def.combo.size() && ok; ++j) {
            if (def.combo[j].is_zero()) continue;
            bool found = false;
            for (size_t i = 0; i < sub.kept.size(); ++i) {
                if (sub.kept[i] == j) {
                    nd.combo[i] = def.combo[j];
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        if (!ok)
            throw InvalidInput("bound symbol " + name +
                               " references a dropped (formal) basis entry; not supported");
        out.symbols[name] = nd;
    }
    return out;
}

ExpPolyEquation translate_by_class(const ExpPolyEquation& eq, const SublatticeExtraction& sub,
                                   const std::vector<Integer>& n_m, const AlgContext& ctx) {
    if (n_m.size() != eq.basis.size()) throw InvalidInput("class vector dimension mismatch");
    // a = n_m . b, exactly; exp(a) = prod exp(b_j)^(n_m,j), exactly.
    FormalPoly a;
    AlgebraicNumber exp_alg(Rational(1));
    FormalPoly exp_num = FormalPoly::constant(Rational(1));
    FormalPoly exp_den = FormalPoly::constant(Rational(1));
    for (size_t j = 0; j < n_m.size(); ++j) {
        if (n_m[j].is_zero()) continue;
        if (!n_m[j].fits_long()) throw GuardExceeded("class translate coordinate too large");
        long e = n_m[j].to_long();
        a = a.plus(old_entry_formal_value(eq, sub, j).scaled(AlgebraicNumber(Rational(n_m[j])), ctx), ctx);
        const LogElement& el = eq.basis[j];
        switch (el.kind) {
            case LogElement::Kind::log_of_algebraic:
                exp_alg = alg_mul(exp_alg, alg_pow(el.lambda, e, ctx), ctx);
                break;
            case LogElement::Kind::two_pi_i_scaled: {
                Rational r = el.two_pi_multiple * Rational(e);
                exp_alg = alg_mul(exp_alg, root_of_unity(r.num(), r.den(), ctx.prec), ctx);
                break;
            }
            case LogElement::Kind::formal: {
                FormalPoly s = FormalPoly::symbol(exp_symbol(el.name), static_cast<int>(std::labs(e)));
                if (e > 0) {
                    exp_num = exp_num.times(s, ctx);
                } else {
                    exp_den = exp_den.times(s, ctx);
                }
                break;
            }
        }
    }
    FormalCoefficient a_exp(exp_num.scaled(exp_alg, ctx), exp_den, ctx);
    return translate_core(eq, sub, FormalCoefficient(a), a_exp, ctx);
}

/* ---- split_two_pi_i ---- */

std::vector<ExpPolyEquation> split_two_pi_i(const ExpPolyEquation& eq, const AlgContext& ctx) {
    if (eq.basis.empty() || eq.basis[0].kind != LogElement::Kind::two_pi_i_scaled)
        throw InvalidInput("split_two_pi_i requires a leading 2-pi-i basis entry");
    Rational r = eq.basis[0].two_pi_multiple;
    Integer q = r.den();
    Integer pnum = r.num();
    if (!q.fits_long()) throw GuardExceeded("split order too large");
    long N = q.to_long();

    std::vector<ExpPolyEquation> out;
    for (long residue = 0; residue < N; ++residue) {
        ExpPolyEquation branch;
        branch.asserted_independent = eq.asserted_independent;
        branch.basis = eq.basis;
        branch.basis[0] = LogElement::two_pi_i(Rational(pnum));
        branch.symbols = eq.symbols;
        // Rebase bound combos on the first entry: old = (r / p) * new.
        for (auto& [name, def] : branch.symbols) {
            if (def.kind == SymbolDef::Kind::basis_combination && !def.combo.empty() &&
                !def.combo[0].is_zero()) {
                def.combo[0] = def.combo[0] * r / Rational(pnum);
            }
        }
        // x shift: residue * r * 2pii; y scale: exp(residue * r * 2pii).
        FormalCoefficient shift(
            FormalPoly::symbol(kTwoPiISymbol).scaled(AlgebraicNumber(r * Rational(residue)), ctx));
        Rational zr = r * Rational(residue);
        AlgebraicNumber zeta = root_of_unity(zr.num(), zr.den(), ctx.prec);
        FormalCoefficient scale = FormalCoefficient::constant(zeta);
        branch.p = eq.p.compose_affine(shift, scale, ctx);
        out.push_back(std::move(branch));
    }
    return out;
}

/* ---- specialize_formal ---- */

SpecializeResult specialize_formal(const BivariatePolynomial<FormalCoefficient>& p,
                                   const std::map<std::string, AlgebraicNumber>& assignment,
                                   const AlgContext& ctx) {
    // Clear denominators: multiply by the least common denominator (distinct
    // denominator polynomials deduplicated; exact single-symbol gcds are
    // handled inside FormalCoefficient normalization).
    std::vector<FormalPoly> dens;
    for (const auto& [e, v] : p.terms()) {
        if (!v.has_denominator()) continue;
        bool seen = false;
        for (const auto& d : dens) seen = seen || d.equals(v.den(), ctx);
        if (!seen) dens.push_back(v.den());
    }
    FormalPoly lcd = FormalPoly::constant(Rational(1));
    for (const auto& d : dens) lcd = lcd.times(d, ctx);

    BivariatePolynomial<AlgebraicNumber> spec;
    for (const auto& [e, v] : p.terms()) {
        FormalCoefficient cleared = v.times(FormalCoefficient(lcd), ctx);
        if (cleared.has_denominator())
            throw InvalidInput("denominator clearing failed (non-principal denominators)");
        AlgebraicNumber val = cleared.num().specialize(assignment, ctx);
        spec.add_term(e, val, ctx);
    }
    SpecializeResult out;
    out.specialized = spec;
    out.nonzero = !spec.is_zero();
    if (!out.nonzero) throw SpecializationAnnihilates("polynomial specializes to zero");
    auto [dx, dy] = spec.partials_nonzero();
    out.dx_nonzero = dx;
    out.dy_nonzero = dy;
    out.univariate_x = !dy && dx;  // lives in C[x]
    out.univariate_y = !dx && dy;  // lives in C[y]
    if (!dx && !dy) {
        // Constant nonzero: degenerate in both directions; callers treat as
        // a contradiction witness (no solutions).
        out.univariate_x = true;
        out.univariate_y = true;
    }
    return out;
}

} // namespace expeq
