#include "expeq/lattice.hpp"

#include <algorithm>
#include <functional>

#include "expeq/errors.hpp"

namespace expeq {

namespace {

RealInterval log_abs_interval_of_rational(const Rational& a, Prec bits) {
    // log|a| = log|num| - log den, outward rounded.
    Real lo = Real::sub(Real::log(Real::from_integer(Integer::abs(a.num()), bits, MPFR_RNDD), bits, MPFR_RNDD),
                        Real::log(Real::from_integer(a.den(), bits, MPFR_RNDU), bits, MPFR_RNDU), bits, MPFR_RNDD);
    Real hi = Real::sub(Real::log(Real::from_integer(Integer::abs(a.num()), bits, MPFR_RNDU), bits, MPFR_RNDU),
                        Real::log(Real::from_integer(a.den(), bits, MPFR_RNDD), bits, MPFR_RNDD), bits, MPFR_RNDU);
    return {lo, hi};
}

void factor_into(const Integer& n0, int sign_exp, std::map<Integer, int>& out) {
    Integer n = Integer::abs(n0);
    if (n.is_zero()) throw InvalidInput("factoring zero");
    Integer p(2);
    Integer limit(1000000);
    while (p * p <= n && p <= limit) {
        while (Integer::divides(p, n)) {
            out[p] += sign_exp;
            n = Integer::divexact(n, p);
        }
        mpz_nextprime(p.raw(), p.raw());
    }
    if (!n.is_one()) {
        if (mpz_probab_prime_p(n.raw(), 40) == 0)
            throw GuardExceeded("cannot factor " + n.str() + " (composite beyond trial-division bound)");
        out[n] += sign_exp;
    }
}

} // namespace

std::map<Integer, int> factor_rational(const Rational& q) {
    if (q.is_zero()) throw InvalidInput("factoring zero");
    std::map<Integer, int> out;
    if (!Integer::abs(q.num()).is_one()) factor_into(q.num(), 1, out);
    if (!q.den().is_one()) factor_into(q.den(), -1, out);
    for (auto it = out.begin(); it != out.end();) {
        if (it->second == 0) {
            it = out.erase(it);
        } else {
            ++it;
        }
    }
    return out;
}

PlaceMatrix place_matrix(const std::vector<Rational>& gamma, Prec bits) {
    PlaceMatrix pm;
    pm.bits = bits;
    std::map<Integer, std::vector<int>> vals; // prime -> valuations per entry
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i].is_zero()) throw InvalidInput("place matrix entry is zero");
        for (const auto& [p, e] : factor_rational(gamma[i])) {
            auto& row = vals[p];
            row.resize(gamma.size(), 0);
            row[i] = e;
        }
    }
    for (auto& [p, row] : vals) {
        row.resize(gamma.size(), 0);
        pm.primes.push_back(p);
        std::vector<Integer> r;
        r.reserve(row.size());
        for (int e : row) r.emplace_back(e);
        pm.valuations.push_back(std::move(r));
    }
    for (const auto& g : gamma) {
        Rational a = Rational::abs(g);
        RealInterval num = log_abs_interval_of_rational(a, bits);
        pm.archimedean.push_back(num);
    }
    return pm;
}

MultIndependence mult_independent(const std::vector<Rational>& gamma) {
    for (const auto& g : gamma)
        if (g.is_zero()) throw InvalidInput("multiplicative independence of zero entry");
    size_t t = gamma.size();
    if (t == 0) return {true, {}};
    // +-1 entries are torsion: gamma_i^1 = 1 or gamma_i^2 = 1.
    for (size_t i = 0; i < t; ++i) {
        if (gamma[i] == Rational(1) || gamma[i] == Rational(-1)) {
            std::vector<Integer> m(t, Integer(0));
            m[i] = gamma[i] == Rational(1) ? Integer(1) : Integer(2);
            return {false, m};
        }
    }
    PlaceMatrix pm = place_matrix(gamma, 64);
    // Kernel over Q of the valuation matrix (rows = primes).
    std::vector<std::vector<Rational>> rows;
    for (const auto& vr : pm.valuations) {
        std::vector<Rational> r;
        r.reserve(t);
        for (const auto& v : vr) r.emplace_back(v);
        rows.push_back(std::move(r));
    }
    auto kernel = v_space_kernel(rows);
    for (const auto& k : kernel) {
        // Scale to a primitive integer vector.
        Integer lcm(1);
        for (const auto& q : k) lcm = Integer::lcm(lcm, q.den());
        std::vector<Integer> m;
        Integer g(0);
        for (const auto& q : k) {
            Integer z = Integer::divexact(q.num() * lcm, q.den());
            g = Integer::gcd(g, z);
            m.push_back(z);
        }
        bool nonzero = false;
        for (auto& z : m) {
            if (!g.is_zero()) z = Integer::divexact(z, g);
            if (!z.is_zero()) nonzero = true;
        }
        if (!nonzero) continue;
        // |gamma|^m = 1; fix the sign torsion if needed.
        Rational prod(1);
        for (size_t i = 0; i < t; ++i) {
            if (!m[i].fits_long()) throw GuardExceeded("relation exponent too large");
            prod *= Rational::pow(gamma[i], m[i].to_long());
        }
        if (prod == Rational(1)) return {false, m};
        if (prod == Rational(-1)) {
            for (auto& z : m) z *= Integer(2);
            return {false, m};
        }
        throw InvalidInput("internal: kernel vector is not a multiplicative relation");
    }
    return {true, {}};
}

/* ---- exact rational simplex (Bland's rule) ---- */

SimplexResult simplex_max(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                          const std::vector<Rational>& c) {
    size_t m = A.size();
    size_t n = c.size();
    for (const auto& bi : b)
        if (bi < Rational(0)) throw InvalidInput("simplex_max requires b >= 0");
    // Tableau with slack basis: rows 0..m-1, columns 0..n-1 original, n..n+m-1
    // slacks, last column = rhs. Objective row at index m (negated costs).
    std::vector<std::vector<Rational>> T(m + 1, std::vector<Rational>(n + m + 1, Rational(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = Rational(1);
        T[i][n + m] = b[i];
    }
    for (size_t j = 0; j < n; ++j) T[m][j] = -c[j];
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        // Bland: entering column = smallest index with negative reduced cost.
        size_t enter = n + m;
        for (size_t j = 0; j < n + m; ++j)
            if (T[m][j] < Rational(0)) {
                enter = j;
                break;
            }
        if (enter == n + m) break; // optimal
        // Ratio test, Bland tie-break on basis variable index.
        size_t leave = m;
        Rational best;
        for (size_t i = 0; i < m; ++i) {
            if (T[i][enter] <= Rational(0)) continue;
            Rational ratio = T[i][n + m] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) return {SimplexResult::Status::unbounded, Rational(0), {}};
        // Pivot.
        Rational piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (size_t i = 0; i <= m; ++i) {
            if (i == leave || T[i][enter].is_zero()) continue;
            Rational f = T[i][enter];
            for (size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    std::vector<Rational> x(n, Rational(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T[i][n + m];
    Rational value(0);
    for (size_t j = 0; j < n; ++j) value += c[j] * x[j];
    return {SimplexResult::Status::optimal, value, x};
}

/* ---- a3 via orthant LPs over the place decomposition ---- */

namespace {

// One relaxed LP: maximize sum of m-tilde over the orthant, subject to the
// polyhedral norm budget. `outer` selects the relaxation direction: true
// enlarges the feasible region (certified lower bound on a3), false shrinks
// it (upper estimate).
std::optional<Rational> orthant_lp(const PlaceMatrix& pm, const std::vector<int>& eps, bool outer,
                                   Prec p) {
    size_t t = eps.size();
    size_t np = pm.primes.size();
    // Variables: m-tilde (t), w_p (np), u_inf (1).
    size_t nv = t + np + 1;
    std::vector<std::vector<Rational>> A;
    std::vector<Rational> b;
    // Finite places: w_p >= +- sum_i eps_i v_p(gamma_i) mt_i  (exact rows).
    for (size_t pi = 0; pi < np; ++pi) {
        for (int sgn : {+1, -1}) {
            std::vector<Rational> row(nv, Rational(0));
            for (size_t i = 0; i < t; ++i)
                row[i] = Rational(sgn * eps[i]) * Rational(pm.valuations[pi][i]);
            row[t + pi] = Rational(-1);
            A.push_back(std::move(row));
            b.emplace_back(0);
        }
    }
    // Archimedean: u >= +- sum_i eps_i L_i mt_i with L_i picked from its
    // enclosure to relax (outer) or tighten (inner) the constraint.
    for (int sgn : {+1, -1}) {
        std::vector<Rational> row(nv, Rational(0));
        for (size_t i = 0; i < t; ++i) {
            const RealInterval& L = pm.archimedean[i];
            // Coefficient of mt_i is sgn*eps_i*L_i with mt_i >= 0; the outer
            // relaxation takes the endpoint that weakens the constraint.
            Rational a1 = Rational(sgn * eps[i]) * L.lo().to_rational();
            Rational a2 = Rational(sgn * eps[i]) * L.hi().to_rational();
            Rational cmin = a1 < a2 ? a1 : a2;
            Rational cmax = a1 < a2 ? a2 : a1;
            row[i] = outer ? cmin : cmax;
        }
        row[t + np] = Rational(-1);
        A.push_back(std::move(row));
        b.emplace_back(0);
    }
    // Budget: sum_p log(p) w_p + u_inf <= 2, log p rounded toward the
    // relaxation direction (down for outer).
    {
        std::vector<Rational> row(nv, Rational(0));
        for (size_t pi = 0; pi < np; ++pi) {
            Real lp = Real::log(Real::from_integer(pm.primes[pi], p, outer ? MPFR_RNDD : MPFR_RNDU), p,
                                outer ? MPFR_RNDD : MPFR_RNDU);
            row[t + pi] = lp.to_rational();
        }
        row[t + np] = Rational(1);
        A.push_back(std::move(row));
        b.emplace_back(2);
    }
    std::vector<Rational> c(nv, Rational(0));
    for (size_t i = 0; i < t; ++i) c[i] = Rational(1);
    SimplexResult res = simplex_max(A, b, c);
    if (res.status == SimplexResult::Status::unbounded) return std::nullopt;
    return res.value;
}

} // namespace

RealInterval a3_constant(const std::vector<Rational>& gamma, const PrecisionContext& ctx) {
    size_t t = gamma.size();
    if (t == 0) throw InvalidInput("a3 of empty vector");
    if (t > 6) throw GuardExceeded("a3 supports at most 6 entries (2^t sign-pattern LPs)");
    for (const auto& g : gamma) {
        if (g.is_zero()) throw InvalidInput("a3 entry is zero");
        if (g == Rational(1) || g == Rational(-1)) throw InvalidInput("a3 entry is a root of unity");
    }
    MultIndependence mi = mult_independent(gamma);
    if (!mi.independent) {
        std::string rel;
        for (const auto& z : mi.relation) rel += (rel.empty() ? "" : ",") + z.str();
        throw DependenceDetected("multiplicative dependence with exponents (" + rel + ")");
    }

    PrecisionContext pc = ctx;
    for (;;) {
        Prec p = pc.bits;
        PlaceMatrix pm = place_matrix(gamma, p);
        // Orthants in lexicographic order of sign patterns (deterministic merge).
        bool unbounded = false;
        std::optional<Rational> best_outer, best_inner;
        for (size_t mask = 0; mask < (size_t{1} << t) && !unbounded; ++mask) {
            std::vector<int> eps(t);
            for (size_t i = 0; i < t; ++i) eps[i] = (mask >> i) & 1 ? -1 : +1;
            auto mo = orthant_lp(pm, eps, true, p);
            if (!mo) {
                unbounded = true;
                break;
            }
            auto mi2 = orthant_lp(pm, eps, false, p);
            if (!best_outer || *mo > *best_outer) best_outer = *mo;
            if (mi2 && (!best_inner || *mi2 > *best_inner)) best_inner = *mi2;
        }
        if (!unbounded && best_outer && *best_outer > Rational(0)) {
            Rational lower = Rational::inverse(*best_outer); // certified: true a3 >= 1/outer-max
            Rational upper = best_inner && !best_inner->is_zero() ? Rational::inverse(*best_inner) : lower;
            Real lo = Real::from_rational(lower, p, MPFR_RNDD);
            Real hi = Real::from_rational(upper, p, MPFR_RNDU);
            if (hi < lo) hi = lo;
            return {lo, hi};
        }
        pc = pc.escalate(); // throws PrecisionExhausted at the cap
    }
}

RealInterval brute_force_a3(const std::vector<Rational>& gamma, long M, Prec bits) {
    size_t t = gamma.size();
    if (t == 0 || M < 1) throw InvalidInput("brute_force_a3 needs entries and M >= 1");
    std::optional<RealInterval> best; // enclosure of the minimum ratio
    std::vector<long> m(t, 0);
    std::function<void(size_t, long)> walk = [&](size_t idx, long remaining) {
        if (idx == t) {
            long norm = 0;
            for (long v : m) norm += std::abs(v);
            if (norm == 0) return;
            Rational val(1);
            for (size_t i = 0; i < t; ++i) val *= Rational::pow(gamma[i], m[i]);
            Integer mx = Integer::abs(val.num());
            if (val.den() > mx) mx = val.den();
            RealInterval h = mx.is_one() ? RealInterval::zero()
                                         : RealInterval{Real::log(Real::from_integer(mx, bits, MPFR_RNDD), bits, MPFR_RNDD),
                                                        Real::log(Real::from_integer(mx, bits, MPFR_RNDU), bits, MPFR_RNDU)};
            RealInterval ratio = RealInterval::mul_scalar(h, Rational(Integer(1), Integer(norm)), bits);
            if (!best) {
                best = ratio;
            } else {
                best = RealInterval{Real::min(best->lo(), ratio.lo()), Real::min(best->hi(), ratio.hi())};
            }
            return;
        }
        for (long v = -remaining; v <= remaining; ++v) {
            m[idx] = v;
            walk(idx + 1, remaining - std::abs(v));
        }
        m[idx] = 0;
    };
    walk(0, M);
    return *best;
}

/* ---- LLL and relation detection ---- */

void lll_reduce(std::vector<std::vector<Integer>>& basis) {
    size_t n = basis.size();
    if (n == 0) return;
    size_t dim = basis[0].size();
    auto dotzz = [&](const std::vector<Integer>& a, const std::vector<Integer>& b) {
        Integer s(0);
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    };
    // Rational Gram-Schmidt data, recomputed incrementally.
    std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> B(n, Rational(0)); // |b*_i|^2
    std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim, Rational(0)));

    auto recompute = [&]() {
        for (size_t i = 0; i < n; ++i) {
            for (size_t d = 0; d < dim; ++d) star[i][d] = Rational(basis[i][d]);
            for (size_t j = 0; j < i; ++j) {
                Rational num(0);
                for (size_t d = 0; d < dim; ++d) num += Rational(basis[i][d]) * star[j][d];
                mu[i][j] = B[j].is_zero() ? Rational(0) : num / B[j];
                for (size_t d = 0; d < dim; ++d) star[i][d] -= mu[i][j] * star[j][d];
            }
            Rational norm(0);
            for (size_t d = 0; d < dim; ++d) norm += star[i][d] * star[i][d];
            B[i] = norm;
        }
    };
    recompute();

    Rational delta(3, 4);
    size_t k = 1;
    size_t rounds = 0;
    const size_t round_guard = 10000;
    while (k < n) {
        if (++rounds > round_guard) break; // termination guard
        // Size reduction.
        for (size_t j = k; j-- > 0;) {
            Rational q = mu[k][j];
            // nearest integer to q
            Integer nearest = Integer::fdiv_q(q.num() * Integer(2) + q.den(), q.den() * Integer(2));
            if (!nearest.is_zero()) {
                for (size_t d = 0; d < dim; ++d) basis[k][d] -= nearest * basis[j][d];
                recompute();
            }
        }
        // Lovasz condition.
        Rational lhs = B[k];
        Rational rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1];
        if (lhs >= rhs) {
            ++k;
        } else {
            std::swap(basis[k], basis[k - 1]);
            recompute();
            k = k > 1 ? k - 1 : 1;
        }
    }
    (void)dotzz;
}

std::vector<RelationCandidate> find_integer_relations(const std::vector<ComplexBox>& values,
                                                      const Integer& coeff_bound,
                                                      const PrecisionContext& ctx) {
    size_t n = values.size();
    if (n == 0) return {};
    if (coeff_bound < Integer(1)) throw InvalidInput("coeff_bound must be >= 1");
    Prec p = ctx.bits;
    Prec scaled = 2 * p; // lattice scaling at twice working precision
    std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(n + 2, Integer(0)));
    for (size_t i = 0; i < n; ++i) {
        basis[i][i] = Integer(1);
        // round(2^scaled * re), round(2^scaled * im)
        for (int part = 0; part < 2; ++part) {
            Real v = part == 0 ? values[i].re() : values[i].im();
            Real s = Real::mul(v, Real::pow2(static_cast<long>(scaled), scaled + 64), scaled + 64, MPFR_RNDN);
            Integer z;
            mpfr_get_z(z.raw(), s.raw(), MPFR_RNDN);
            basis[i][n + static_cast<size_t>(part)] = z;
        }
    }
    lll_reduce(basis);

    std::vector<RelationCandidate> out;
    for (const auto& row : basis) {
        std::vector<Integer> m(row.begin(), row.begin() + static_cast<long>(n));
        bool nonzero = false, small = true;
        for (const auto& z : m) {
            if (!z.is_zero()) nonzero = true;
            if (Integer::abs(z) > coeff_bound) small = false;
        }
        if (!nonzero || !small) continue;
        // Canonical sign: first nonzero coefficient positive.
        for (const auto& z : m) {
            if (z.is_zero()) continue;
            if (z.sign() < 0)
                for (auto& w : m) w = -w;
            break;
        }
        // Residual from the input boxes.
        ComplexBox acc = ComplexBox::exact(Rational(0), Rational(0), p);
        Integer norm1(0);
        Real maxmod(0, p);
        for (size_t i = 0; i < n; ++i) {
            if (m[i].is_zero()) continue;
            norm1 += Integer::abs(m[i]);
            maxmod = Real::max(maxmod, ComplexBox::modulus(values[i], p).hi());
            acc = ComplexBox::add(acc, ComplexBox::mul_scalar(values[i], Rational(m[i]), p), p);
        }
        RealInterval res = ComplexBox::modulus(acc, p);
        // Interval-consistent with zero at working precision.
        Real tol = Real::mul(Real::add(Real(1, p), maxmod, p, MPFR_RNDU),
                             Real::from_integer(norm1, p, MPFR_RNDU), p, MPFR_RNDU);
        tol = Real::mul(tol, Real::pow2(-static_cast<long>(p) + 16, p), p, MPFR_RNDU);
        if (res.lo() <= tol) {
            bool dup = false;
            for (const auto& prev : out) dup = dup || prev.coefficients == m;
            if (!dup) out.push_back({std::move(m), res, RelationCandidate::Status::numeric_only});
        }
    }
    std::sort(out.begin(), out.end(), [](const RelationCandidate& a, const RelationCandidate& b) {
        Integer na(0), nb(0);
        for (const auto& z : a.coefficients) na += Integer::abs(z);
        for (const auto& z : b.coefficients) nb += Integer::abs(z);
        if (na != nb) return na < nb;
        return a.coefficients < b.coefficients;
    });
    return out;
}

std::vector<std::vector<Rational>> v_space_kernel(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) throw InvalidInput("v_space_kernel of empty matrix (dimension unknown)");
    size_t ncols = rows[0].size();
    std::vector<std::vector<Rational>> m = rows;
    for (const auto& r : m)
        if (r.size() != ncols) throw InvalidInput("ragged matrix");
    // RREF.
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < ncols && rank < m.size(); ++col) {
        size_t piv = rank;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        Rational inv = Rational::inverse(m[rank][col]);
        for (auto& v : m[rank]) v *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == rank || m[i][col].is_zero()) continue;
            Rational f = m[i][col];
            for (size_t j = 0; j < ncols; ++j) m[i][j] -= f * m[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<std::vector<Rational>> kernel;
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    for (size_t free_col = 0; free_col < ncols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rational> v(ncols, Rational(0));
        v[free_col] = Rational(1);
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free_col];
        kernel.push_back(std::move(v));
    }
    return kernel;
}

} // namespace expeq
