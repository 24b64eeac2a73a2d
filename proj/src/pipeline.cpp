#include "expeq/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "expeq/errors.hpp"

namespace expeq {

namespace {

struct BranchInput {
    ExpPolyEquation eq;      // over basis c
    std::string label;
    std::vector<Integer> n_m;       // class translate (rescaled lattice)
    SublatticeExtraction sub;       // extraction used
    long split_order = 1;           // q of the 2-pi-i split
    long split_residue = 0;
    bool has_two_pi_i = false;      // first basis entry of c is 2-pi-i
    Integer rescale_N{1};
};

std::string vec_str(const std::vector<Integer>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + ")";
}

// Original-problem rational coordinates of a branch solution.
std::vector<Rational> to_original(const BranchInput& bi, const std::vector<Integer>& n_branch) {
    std::vector<Integer> n_c = n_branch;
    if (bi.has_two_pi_i && !n_c.empty()) {
        n_c[0] = n_c[0] * Integer(bi.split_order) + Integer(bi.split_residue);
    }
    std::vector<Integer> n_res = bi.n_m;
    for (size_t i = 0; i < n_c.size(); ++i) n_res[bi.sub.kept[i]] += n_c[i];
    std::vector<Rational> out;
    out.reserve(n_res.size());
    for (const auto& z : n_res) out.emplace_back(z, bi.rescale_N);
    return out;
}

// Deterministic specialization schedule: attempt a assigns the k-th symbol
// (basis entries first, then the remaining names sorted) the rational a + k.
struct Sigma {
    std::map<std::string, AlgebraicNumber> assignment;
    std::vector<AlgebraicNumber> c_values; // sigma of the non-2-pi-i entries of c
};

std::optional<Sigma> choose_sigma(const ExpPolyEquation& eq, bool has_two_pi_i,
                                  SpecializeResult& spec_out, const AlgContext& ctx, int max_retries,
                                  std::vector<std::string>& notes) {
    // Resolve bound symbols first so only independent names remain.
    BivariatePolynomial<FormalCoefficient> resolved;
    for (const auto& [e, v] : eq.p.terms()) {
        FormalCoefficient r(eq.resolve_bound(v.num(), ctx), eq.resolve_bound(v.den(), ctx), ctx);
        resolved.add_term(e, r, ctx);
    }
    std::set<std::string> names;
    for (const auto& [e, v] : resolved.terms())
        for (const auto& s : v.symbols()) names.insert(s);

    std::vector<std::string> basis_names;
    for (size_t j = 0; j < eq.basis.size(); ++j)
        if (eq.basis[j].kind == LogElement::Kind::log_of_algebraic) basis_names.push_back(basis_symbol(j));
    std::vector<std::string> other_names;
    for (const auto& s : names) {
        if (s == kTwoPiISymbol) continue;
        if (std::find(basis_names.begin(), basis_names.end(), s) != basis_names.end()) continue;
        other_names.push_back(s);
    }
    std::sort(other_names.begin(), other_names.end());

    std::optional<Sigma> fallback;
    std::optional<SpecializeResult> fallback_spec;
    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        Sigma sigma;
        sigma.assignment[kTwoPiISymbol] = AlgebraicNumber(Rational(0));
        long v = attempt;
        for (const auto& s : basis_names) sigma.assignment[s] = AlgebraicNumber(Rational(v++));
        for (const auto& s : other_names) sigma.assignment[s] = AlgebraicNumber(Rational(v++));
        for (size_t j = 0; j < eq.basis.size(); ++j) {
            if (has_two_pi_i && j == 0) continue;
            if (eq.basis[j].kind == LogElement::Kind::log_of_algebraic) {
                sigma.c_values.push_back(sigma.assignment.at(basis_symbol(j)));
            }
        }
        try {
            SpecializeResult spec = specialize_formal(resolved, sigma.assignment, ctx);
            if (spec.dx_nonzero && spec.dy_nonzero) {
                spec_out = spec;
                return sigma;
            }
            if (!fallback) {
                fallback = sigma;
                fallback_spec = spec;
            }
        } catch (const SpecializationAnnihilates&) {
            // next attempt
        }
    }
    if (fallback) {
        notes.push_back("specialization is univariate-degenerate for every retry; using the special case");
        spec_out = *fallback_spec;
        return fallback;
    }
    return std::nullopt;
}

// Exact symbolic value of y-row polynomial p_i(E) = sum_j c_ij E^j at the
// exact exponential E = exp(n_rest . c') (first coordinate contributes 1).
FormalCoefficient row_at_exp(const BranchInput& bi, int i, const std::vector<Integer>& n_full,
                             const AlgContext& ctx) {
    // Row value sum_j c_ij E^j at the exact exponential E = exp(n_full . c).
    FormalCoefficient acc;
    for (const auto& [e, v] : bi.eq.p.terms()) {
        if (e.first != i) continue;
        ExponentialSum::Term t;
        t.level = e.second;
        t.w_poly = {v};
        ExponentialSum s;
        s.basis = bi.eq.basis;
        s.symbols = bi.eq.symbols;
        s.terms = {t};
        acc = acc.plus(s.term_symbolic(0, n_full, ctx), ctx);
    }
    return acc;
}

// Certified window |n0| <= W for integer roots of u(x) = p(v x + w, E).
// Sets `vanishes` when u is identically zero, i.e. every n0 solves.
std::optional<long> n0_window(const BranchInput& bi, const std::vector<Integer>& n_rest,
                              const PrecisionContext& policy, const AlgContext& ctx,
                              std::vector<std::string>& notes, bool& vanishes) {
    const auto& eq = bi.eq;
    int dx = std::max(eq.p.degree_x(), 0);
    // Largest x-row whose exact value at E is nonzero.
    std::vector<Integer> n_full(eq.basis.size(), Integer(0));
    for (size_t i = 0; i < n_rest.size(); ++i) n_full[i + 1] = n_rest[i];
    int top = -1;
    for (int i = dx; i >= 0 && top < 0; --i) {
        if (!row_at_exp(bi, i, n_full, ctx).is_zero()) top = i;
    }
    if (top < 0) {
        vanishes = true;
        notes.push_back("every n0 solves at n' = " + vec_str(n_rest) +
                        " (the x-polynomial vanishes identically)");
        return std::nullopt;
    }
    PrecisionContext pc = policy;
    for (;;) {
        Prec p = pc.bits;
        ComplexBox v = eq.basis_value(0, p);
        ComplexBox w = ComplexBox::exact(Rational(0), Rational(0), p);
        for (size_t i = 0; i < n_rest.size(); ++i)
            w = ComplexBox::add(w, ComplexBox::mul_scalar(eq.basis_value(i + 1, p), Rational(n_rest[i]), p), p);
        ComplexBox E = ComplexBox::exp(w, p);
        std::vector<ComplexBox> a(static_cast<size_t>(top) + 1,
                                  ComplexBox::exact(Rational(0), Rational(0), p));
        for (const auto& [e, coeff] : eq.p.terms()) {
            if (e.first > top) continue;
            ComplexBox t = coeff.eval_box(eq.env(), p, ctx);
            t = ComplexBox::mul(t, ComplexBox::pow(E, e.second, p), p);
            a[static_cast<size_t>(e.first)] = ComplexBox::add(a[static_cast<size_t>(e.first)], t, p);
        }
        // u_k = sum_{i>=k} C(i,k) a_i v^k w^(i-k).
        std::vector<ComplexBox> u(static_cast<size_t>(top) + 1,
                                  ComplexBox::exact(Rational(0), Rational(0), p));
        for (int k = 0; k <= top; ++k) {
            for (int i = k; i <= top; ++i) {
                Integer binom = Integer::binomial(static_cast<unsigned long>(i), static_cast<unsigned long>(k));
                ComplexBox t = ComplexBox::mul_scalar(a[static_cast<size_t>(i)], Rational(binom), p);
                t = ComplexBox::mul(t, ComplexBox::pow(v, k, p), p);
                t = ComplexBox::mul(t, ComplexBox::pow(w, i - k, p), p);
                u[static_cast<size_t>(k)] = ComplexBox::add(u[static_cast<size_t>(k)], t, p);
            }
        }
        if (u[static_cast<size_t>(top)].excludes_zero(p)) {
            Real lead_lo = ComplexBox::modulus(u[static_cast<size_t>(top)], p).lo();
            Real ratio(0, p);
            for (int k = 0; k < top; ++k) {
                Real up = ComplexBox::modulus(u[static_cast<size_t>(k)], p).hi();
                ratio = Real::max(ratio, Real::div(up, lead_lo, p, MPFR_RNDU));
            }
            Real W = Real::add(ratio, Real(1, p), p, MPFR_RNDU);
            if (W > Real(1L << 30, p)) {
                notes.push_back("n0 window too large at n' = " + vec_str(n_rest));
                return std::nullopt;
            }
            Real ceilW(p);
            mpfr_ceil(ceilW.raw(), W.raw());
            return static_cast<long>(ceilW.to_double());
        }
        if (pc.bits >= pc.cap) {
            notes.push_back("could not certify the n0 window at n' = " + vec_str(n_rest));
            return std::nullopt;
        }
        pc = pc.escalate();
    }
}

struct Tally {
    BranchCertificate cert;
    long guard;
    Integer tested{0};
    bool infinite_family = false; // some n' admits every n0
};

void record(Tally& t, const BranchInput& bi, const std::vector<Integer>& n,
            const CandidateResult& res) {
    t.tested += Integer(1);
    switch (res.status) {
        case CandidateStatus::exactly_verified:
            ++t.cert.exactly_verified;
            break;
        case CandidateStatus::probable:
            ++t.cert.probable;
            break;
        case CandidateStatus::certified_non_solution:
            t.cert.certified_non_solutions += Integer(1);
            return;
    }
    SolutionRecord rec;
    rec.n = n;
    rec.original = to_original(bi, n);
    rec.status = res.status;
    rec.precision = res.precision;
    rec.all_coefficients_vanish = res.all_coefficients_vanish;
    if (res.all_coefficients_vanish)
        t.cert.exceptional_notes.push_back("all q_i vanish at " + vec_str(n));
    t.cert.solutions.push_back(std::move(rec));
}

// Tests candidate n' (recovering n0 when the branch has a leading 2-pi-i
// coordinate) and records outcomes.
void test_with_recovery(Tally& t, const BranchInput& bi, const std::vector<Integer>& n_rest,
                        const PrecisionContext& policy, const AlgContext& ctx) {
    if (!bi.has_two_pi_i) {
        record(t, bi, n_rest, test_candidate(bi.eq, n_rest, policy, ctx));
        return;
    }
    bool vanishes = false;
    auto W = n0_window(bi, n_rest, policy, ctx, t.cert.exceptional_notes, vanishes);
    if (vanishes) t.infinite_family = true;
    if (!W) return;
    for (long x0 = -*W; x0 <= *W; ++x0) {
        std::vector<Integer> full;
        full.reserve(n_rest.size() + 1);
        full.emplace_back(x0);
        for (const auto& z : n_rest) full.push_back(z);
        if (t.tested >= Integer(t.guard))
            throw GuardExceeded("candidate guard exceeded during n0 recovery");
        record(t, bi, full, test_candidate(bi.eq, full, policy, ctx));
    }
}

/* ---- the univariate special case (r^sigma in C[x] or C[y]) ---- */

// Roots of a univariate polynomial with rational coefficients, as exact
// algebraic numbers (rational roots separate for the fast lattice matching).
struct UnivariateRoots {
    std::vector<Rational> rational;
    std::vector<AlgebraicNumber> irrational;
    bool coefficients_rational = true;
};

UnivariateRoots univariate_roots(const std::vector<AlgebraicNumber>& coeffs,
                                 const PrecisionContext& prec) {
    UnivariateRoots out;
    Integer lcm(1);
    for (const auto& c : coeffs) {
        if (!c.is_rational()) {
            out.coefficients_rational = false;
            return out;
        }
        lcm = Integer::lcm(lcm, c.as_rational().den());
    }
    std::vector<Integer> zc;
    for (const auto& c : coeffs) {
        Rational q = c.as_rational() * Rational(lcm);
        zc.push_back(q.num());
    }
    IntPolynomial f{std::move(zc)};
    if (f.is_zero()) return out;
    for (const auto& [fac, mult] : factor_over_Z(f)) {
        (void)mult;
        if (fac.degree() == 1) {
            out.rational.push_back(-Rational(fac.coeff(0)) / Rational(fac.coeff(1)));
        } else if (fac.degree() > 1) {
            PrecisionContext pc = prec;
            for (const auto& box : isolate_roots(fac, Real::pow2(-static_cast<long>(prec.bits) / 2,
                                                                 prec.bits),
                                                 pc))
                out.irrational.emplace_back(fac, box, pc);
        }
    }
    return out;
}

// Solve lambda^m = rho for a single algebraic lambda (not a root of unity),
// via the exact identity h(lambda^m) = |m| h(lambda).
std::optional<Integer> match_single_algebraic(const AlgebraicNumber& lambda, const AlgebraicNumber& rho,
                                              const PrecisionContext& prec, const AlgContext& ctx) {
    HeightValue hl = weil_height(lambda, prec);
    if (hl.lower().sign() <= 0) return std::nullopt; // root of unity or precision gap
    HeightValue hr = weil_height(rho, prec);
    Prec p = prec.bits;
    Real bound = Real::div(hr.upper(), hl.lower(), p, MPFR_RNDU);
    Real ceilv(p);
    mpfr_ceil(ceilv.raw(), bound.raw());
    if (ceilv > Real(1L << 16, p)) return std::nullopt;
    long M = static_cast<long>(ceilv.to_double());
    for (long m = -M; m <= M; ++m) {
        if (alg_pow(lambda, m, ctx).equals(rho, prec)) return Integer(m);
    }
    return std::nullopt;
}

// Solve prod lambda_i^{n_i} = rho exactly over the rational lattice.
std::optional<std::vector<Integer>> match_exp_lattice(const std::vector<Rational>& lambdas,
                                                      const Rational& rho) {
    if (rho.is_zero()) return std::nullopt;
    // Valuation system over all primes involved.
    std::set<Integer> primes;
    auto fr = factor_rational(rho);
    std::vector<std::map<Integer, int>> fl;
    for (const auto& l : lambdas) {
        fl.push_back(factor_rational(l));
        for (const auto& [p, e] : fl.back()) primes.insert(p);
    }
    for (const auto& [p, e] : fr) primes.insert(p);
    size_t t = lambdas.size();
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    for (const auto& p : primes) {
        std::vector<Rational> row;
        for (size_t i = 0; i < t; ++i) {
            auto it = fl[i].find(p);
            row.emplace_back(it == fl[i].end() ? 0 : it->second);
        }
        auto it = fr.find(p);
        rhs.emplace_back(it == fr.end() ? 0 : it->second);
        rows.push_back(std::move(row));
    }
    // Solve rows * n = rhs over Q (least-squares-free exact elimination).
    size_t m = rows.size();
    for (size_t i = 0; i < m; ++i) rows[i].push_back(rhs[i]);
    size_t rank = 0;
    std::vector<size_t> pivots;
    for (size_t col = 0; col < t && rank < m; ++col) {
        size_t piv = rank;
        while (piv < m && rows[piv][col].is_zero()) ++piv;
        if (piv == m) continue;
        std::swap(rows[rank], rows[piv]);
        Rational inv = Rational::inverse(rows[rank][col]);
        for (auto& v : rows[rank]) v *= inv;
        for (size_t r = 0; r < m; ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            Rational f = rows[r][col];
            for (size_t j = 0; j <= t; ++j) rows[r][j] -= f * rows[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    for (size_t r = rank; r < m; ++r)
        if (!rows[r][t].is_zero()) return std::nullopt; // inconsistent
    std::vector<Rational> n(t, Rational(0));
    for (size_t r = 0; r < rank; ++r) n[pivots[r]] = rows[r][t];
    // Must be integral (free columns would mean dependence; preconditions
    // exclude it, but verify integrality regardless).
    std::vector<Integer> out;
    Rational check(1);
    for (size_t i = 0; i < t; ++i) {
        if (!n[i].is_integer()) return std::nullopt;
        out.push_back(n[i].num());
        if (!out[i].fits_long()) return std::nullopt;
        check *= Rational::pow(lambdas[i], out[i].to_long());
    }
    if (check != rho) return std::nullopt; // sign mismatch
    return out;
}

} // namespace

FinitenessCertificate run_pipeline(const ExpPolyEquation& input, const PipelineOptions& opts) {
    FinitenessCertificate summary;
    AlgContext ctx;
    ctx.degree_cap = opts.guards.degree_cap;
    ctx.prec.bits = opts.precision_bits;
    ctx.prec.cap = opts.guards.precision_cap;
    PrecisionContext policy = ctx.prec;

    if (input.p.is_zero()) throw InvalidInput("zero polynomial");

    ExpPolyEquation rescaled = rescale_denominator(input, opts.denominator_N, ctx);
    SublatticeExtraction sub = extract_algebraic_log_sublattice(rescaled);
    if (sub.c.empty()) {
        summary.verdict = "not-applicable: no algebraic-exponential sublattice";
        return summary;
    }

    std::vector<std::vector<Integer>> classes = opts.class_translates;
    if (classes.empty()) classes.push_back(std::vector<Integer>(rescaled.basis.size(), Integer(0)));

    std::vector<BranchInput> branches;
    for (size_t ci = 0; ci < classes.size(); ++ci) {
        if (classes[ci].size() != rescaled.basis.size())
            throw InvalidInput("class translate dimension mismatch");
        ExpPolyEquation eqc = translate_by_class(rescaled, sub, classes[ci], ctx);
        bool has2pi = sub.two_pi_i_index.has_value();
        if (has2pi) {
            Rational r = eqc.basis[0].two_pi_multiple;
            std::vector<ExpPolyEquation> split = split_two_pi_i(eqc, ctx);
            for (size_t si = 0; si < split.size(); ++si) {
                BranchInput bi;
                bi.eq = std::move(split[si]);
                bi.label = "class " + vec_str(classes[ci]) + ", residue " + std::to_string(si) + "/" +
                           std::to_string(split.size());
                bi.n_m = classes[ci];
                bi.sub = sub;
                bi.split_order = static_cast<long>(split.size());
                bi.split_residue = static_cast<long>(si);
                bi.has_two_pi_i = true;
                bi.rescale_N = opts.denominator_N;
                branches.push_back(std::move(bi));
            }
        } else {
            BranchInput bi;
            bi.eq = std::move(eqc);
            bi.label = "class " + vec_str(classes[ci]);
            bi.n_m = classes[ci];
            bi.sub = sub;
            bi.rescale_N = opts.denominator_N;
            branches.push_back(std::move(bi));
        }
    }

    for (auto& bi : branches) {
        Tally tally{{}, opts.guards.enumeration, Integer(0)};
        BranchCertificate& cert = tally.cert;
        cert.label = bi.label;
        cert.chain_A = Real(0, 64);
        cert.chain_C = Real(0, 64);
        try {
            // sigma.
            SpecializeResult spec;
            auto sigma = choose_sigma(bi.eq, bi.has_two_pi_i, spec, ctx, 32, cert.exceptional_notes);
            if (!sigma) {
                cert.applicable = false;
                cert.verdict = "not-applicable: every specialization annihilates the polynomial";
                summary.branches.push_back(std::move(cert));
                continue;
            }
            for (const auto& [k, v] : sigma->assignment)
                cert.sigma[k] = v.is_rational() ? v.as_rational().str() : v.str();

            // Exponentials of the non-2-pi-i part of c (for a3 and the special case).
            std::vector<Rational> gamma;
            bool gamma_rational = true;
            std::vector<size_t> gamma_positions; // positions within bi.eq.basis
            for (size_t j = 0; j < bi.eq.basis.size(); ++j) {
                const LogElement& e = bi.eq.basis[j];
                if (e.kind == LogElement::Kind::two_pi_i_scaled) continue;
                if (e.kind != LogElement::Kind::log_of_algebraic)
                    throw InvalidInput("internal: non-algebraic entry in extracted basis");
                gamma_positions.push_back(j);
                if (e.lambda.is_rational()) {
                    gamma.push_back(e.lambda.as_rational());
                } else {
                    gamma_rational = false;
                }
            }
            size_t rest_dim = gamma_positions.size();

            if (spec.dx_nonzero && spec.dy_nonzero && rest_dim > 0) {
                // Height chain. a3 comes from the place-decomposition LP for
                // rational exponentials; a single algebraic entry uses the
                // exact identity h(gamma^m) = |m| h(gamma) instead.
                std::optional<RealInterval> a3_opt;
                if (gamma_rational) {
                    MultIndependence mi = mult_independent(gamma);
                    if (!mi.independent) {
                        cert.applicable = false;
                        cert.verdict = "not-applicable: exp(c') is multiplicatively dependent " +
                                       vec_str(mi.relation);
                        summary.branches.push_back(std::move(cert));
                        continue;
                    }
                    a3_opt = a3_constant(gamma, policy);
                } else if (rest_dim == 1) {
                    const AlgebraicNumber& lam = bi.eq.basis[gamma_positions[0]].lambda;
                    if (lam.is_root_of_unity()) {
                        cert.applicable = false;
                        cert.verdict = "not-applicable: exp(c') is a root of unity";
                        summary.branches.push_back(std::move(cert));
                        continue;
                    }
                    PrecisionContext hp = policy;
                    for (;;) {
                        HeightValue h = weil_height(lam, hp);
                        if (h.lower().sign() > 0) {
                            a3_opt = h.value;
                            break;
                        }
                        hp = hp.escalate();
                    }
                } else {
                    cert.applicable = false;
                    cert.verdict =
                        "not-applicable: a3 requires rational exponentials exp(c') in this version";
                    summary.branches.push_back(std::move(cert));
                    continue;
                }
                RealInterval a3 = *a3_opt;
                AffineBound a4 = a4_bound(spec.specialized, A4Direction::y_from_x, policy);
                AffineBound a1 = a1_constant(sigma->c_values, policy);
                BoundInputs bin = make_bound_inputs(a3, a4, a1, policy.bits);
                cert.a3 = a3;
                cert.chain_A = bin.chain_A;
                cert.chain_C = bin.chain_C;
                cert.bound_B = compute_bound(bin);
                cert.height_chain_used = true;
                enumerate_candidates(static_cast<int>(rest_dim), cert.bound_B, opts.guards.enumeration,
                                     [&](const std::vector<Integer>& n_rest) {
                                         test_with_recovery(tally, bi, n_rest, policy, ctx);
                                     });
            } else if (rest_dim == 0) {
                // Only the 2-pi-i coordinate remains: single n0 recovery.
                cert.height_chain_used = false;
                cert.bound_B = 0;
                cert.exceptional_notes.push_back("basis reduces to the 2-pi-i coordinate only");
                test_with_recovery(tally, bi, {}, policy, ctx);
            } else {
                // Univariate special case: r^sigma lives in C[x] or C[y] only.
                cert.height_chain_used = false;
                cert.bound_B = 0;
                std::vector<AlgebraicNumber> uni;
                bool in_y = spec.univariate_y;
                int deg = in_y ? spec.specialized.degree_y() : spec.specialized.degree_x();
                uni.assign(static_cast<size_t>(std::max(deg, 0)) + 1, AlgebraicNumber(Rational(0)));
                for (const auto& [e, v] : spec.specialized.terms())
                    uni[static_cast<size_t>(in_y ? e.second : e.first)] = v;
                cert.exceptional_notes.push_back(std::string("univariate special case in ") +
                                                 (in_y ? "y" : "x"));
                UnivariateRoots roots = univariate_roots(uni, policy);
                if (!roots.coefficients_rational) {
                    cert.applicable = false;
                    cert.verdict =
                        "not-applicable: univariate special case needs rational coefficients in this version";
                    summary.branches.push_back(std::move(cert));
                    continue;
                }
                if (!roots.irrational.empty() && !in_y)
                    cert.exceptional_notes.push_back(
                        "irrational roots of the x-specialization are not matched against the lattice");
                if (in_y) {
                    if (gamma_rational) {
                        // Irrational y-roots cannot equal rational power products.
                        for (const auto& rho : roots.rational) {
                            auto n_rest = match_exp_lattice(gamma, rho);
                            if (!n_rest) continue;
                            test_with_recovery(tally, bi, *n_rest, policy, ctx);
                        }
                    } else if (rest_dim == 1) {
                        const AlgebraicNumber& lam = bi.eq.basis[gamma_positions[0]].lambda;
                        std::vector<AlgebraicNumber> rhos = roots.irrational;
                        for (const auto& q : roots.rational) rhos.emplace_back(q);
                        for (const auto& rho : rhos) {
                            if (rho.is_zero()) continue;
                            auto m = match_single_algebraic(lam, rho, policy, ctx);
                            if (!m) continue;
                            test_with_recovery(tally, bi, {*m}, policy, ctx);
                        }
                    } else {
                        cert.applicable = false;
                        cert.verdict = "not-applicable: exponential lattice matching needs rational "
                                       "exponentials in this version";
                        summary.branches.push_back(std::move(cert));
                        continue;
                    }
                } else {
                    // x-case: match roots rho = n'.c' against the additive lattice.
                    if (rest_dim == 1) {
                        for (const auto& rho : roots.rational) {
                            // n'_1 = rho / c'_1 must be an integer; certify by interval.
                            PrecisionContext pc = policy;
                            std::optional<Integer> k;
                            for (;;) {
                                Prec p = pc.bits;
                                ComplexBox c1 = bi.eq.basis_value(gamma_positions[0], p);
                                ComplexBox rb = ComplexBox::exact(rho, Rational(0), p);
                                if (c1.excludes_zero(p)) {
                                    ComplexBox ratio = ComplexBox::div(rb, c1, p);
                                    RealInterval im = ratio.im_interval(p);
                                    RealInterval re = ratio.re_interval(p);
                                    if (!im.contains_zero()) break; // not on the lattice
                                    Real w1(1, p);
                                    if (re.width(p) < w1) {
                                        Real mid = re.mid(p);
                                        Real rounded(p);
                                        mpfr_round(rounded.raw(), mid.raw());
                                        Integer z;
                                        mpfr_get_z(z.raw(), rounded.raw(), MPFR_RNDN);
                                        Real zr = Real::from_integer(z, p, MPFR_RNDN);
                                        if (zr >= re.lo() && zr <= re.hi()) {
                                            k = z;
                                        }
                                        break;
                                    }
                                }
                                if (pc.bits >= pc.cap) break;
                                pc = pc.escalate();
                            }
                            if (k) test_with_recovery(tally, bi, {*k}, policy, ctx);
                        }
                        // rho = 0 root means n'.c' = 0 -> n' = 0.
                    } else {
                        cert.exceptional_notes.push_back(
                            "x-root lattice matching over dimension >= 2 reports relation evidence only");
                        for (const auto& rho : roots.rational) {
                            Prec p = policy.bits;
                            std::vector<ComplexBox> vals;
                            for (size_t gp : gamma_positions) vals.push_back(bi.eq.basis_value(gp, p));
                            vals.push_back(ComplexBox::exact(-rho, Rational(0), p));
                            auto rels = find_integer_relations(vals, Integer(1000), policy);
                            for (const auto& rel : rels) {
                                const Integer& last = rel.coefficients.back();
                                if (!(last == Integer(1) || last == Integer(-1))) continue;
                                std::vector<Integer> n_rest;
                                for (size_t i = 0; i + 1 < rel.coefficients.size(); ++i) {
                                    Integer ci2 = rel.coefficients[i];
                                    n_rest.push_back(last == Integer(1) ? ci2 : -ci2);
                                }
                                test_with_recovery(tally, bi, n_rest, policy, ctx);
                            }
                        }
                    }
                }
            }
            if (tally.infinite_family) {
                cert.applicable = false;
                cert.verdict =
                    "not-applicable: dp/dx = 0 along the 2-pi-i coordinate (an infinite n0 family exists)";
            } else {
                cert.verdict = "certificate";
            }
        } catch (const Error& err) {
            cert.applicable = false;
            cert.verdict = std::string("not-applicable: ") + err.code() + ": " + err.what();
        }
        cert.candidates_total = tally.tested;
        summary.branches.push_back(std::move(cert));
    }

    bool all_ok = true;
    for (const auto& b : summary.branches) {
        all_ok = all_ok && b.applicable;
        summary.total_exactly_verified += b.exactly_verified;
        summary.total_probable += b.probable;
    }
    summary.verdict = all_ok ? "certificate" : "not-applicable: see branches";
    return summary;
}

} // namespace expeq
