#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"

using namespace expeq;

namespace {

// p = x - tau*y with tau = (3/8) log 2, basis (log 2).
ExpPolyEquation tau38() {
    ExpPolyEquation eq;
    eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
    SymbolDef tau;
    tau.kind = SymbolDef::Kind::basis_combination;
    tau.combo = {Rational(3, 8)};
    eq.symbols["tau"] = tau;
    eq.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
    eq.p.set({0, 1}, FormalCoefficient::symbol("tau").negated());
    eq.asserted_independent = true;
    return eq;
}

ExpPolyEquation simple(const std::vector<std::tuple<int, int, Rational>>& terms,
                       std::vector<LogElement> basis) {
    ExpPolyEquation eq;
    eq.basis = std::move(basis);
    for (const auto& [i, j, c] : terms) eq.p.set({i, j}, FormalCoefficient::constant(c));
    eq.asserted_independent = true;
    return eq;
}

LogElement log2_entry() { return LogElement::log_of(AlgebraicNumber(Rational(2)), 0); }
LogElement log3_entry() { return LogElement::log_of(AlgebraicNumber(Rational(3)), 0); }


struct Rng {
    unsigned long long s = 0xfeedfacecafeULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
};

} // namespace

TEST_CASE("expand_exponential_sum: spec examples") {
    AlgContext ctx;
    SUBCASE("p = x - tau*y over (log 2): levels 0 and 1") {
        ExponentialSum sum = expand_exponential_sum(tau38(), ctx);
        REQUIRE(sum.terms.size() == 2);
        CHECK(sum.terms[0].level == 0);
        REQUIRE(sum.terms[0].w_poly.size() == 2); // q_0(w) = w
        CHECK(sum.terms[0].w_poly[0].is_zero());
        CHECK(sum.terms[1].level == 1);
        REQUIRE(sum.terms[1].w_poly.size() == 1); // q_1 = -tau
    }
    SUBCASE("p = y^2 - x over (log 2, log 3): levels 0 and 2") {
        ExpPolyEquation eq = simple({{0, 2, Rational(1)}, {1, 0, Rational(-1)}},
                                    {log2_entry(), log3_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        REQUIRE(sum.terms.size() == 2);
        CHECK(sum.terms[0].level == 0);
        CHECK(sum.terms[1].level == 2);
        CHECK(sum.terms[1].w_poly.size() == 1);
    }
    SUBCASE("p = xy + x + 1 over (log 2): numeric identity at 20 random n") {
        ExpPolyEquation eq =
            simple({{1, 1, Rational(1)}, {1, 0, Rational(1)}, {0, 0, Rational(1)}}, {log2_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        REQUIRE(sum.terms.size() == 2);
        Prec p = 160;
        Rng rng;
        for (int k = 0; k < 20; ++k) {
            std::vector<Integer> n{Integer(rng.range(-10, 10))};
            ComplexBox direct = eq.value_box(n, p, ctx);
            ComplexBox viasum = ComplexBox::exact(Rational(0), Rational(0), p);
            for (size_t i = 0; i < sum.terms.size(); ++i)
                viasum = ComplexBox::add(viasum, sum.term_box(i, n, p, ctx), p);
            ComplexBox diff = ComplexBox::sub(direct, viasum, p);
            CHECK(diff.contains_zero(p));
            CHECK(ComplexBox::modulus(diff, p).hi().to_double() < 1e-20);
        }
    }
}

TEST_CASE("round-trip: expansion re-evaluation matches direct evaluation (50 per fixture)") {
    AlgContext ctx;
    Prec p = 160;
    Rng rng;
    std::vector<ExpPolyEquation> fixtures;
    fixtures.push_back(tau38());
    fixtures.push_back(simple({{0, 2, Rational(1)}, {1, 0, Rational(-1)}}, {log2_entry(), log3_entry()}));
    for (const auto& eq : fixtures) {
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        for (int k = 0; k < 50; ++k) {
            std::vector<Integer> n;
            for (size_t j = 0; j < eq.basis.size(); ++j) n.emplace_back(rng.range(-6, 6));
            ComplexBox direct = eq.value_box(n, p, ctx);
            ComplexBox viasum = ComplexBox::exact(Rational(0), Rational(0), p);
            for (size_t i = 0; i < sum.terms.size(); ++i)
                viasum = ComplexBox::add(viasum, sum.term_box(i, n, p, ctx), p);
            CHECK(ComplexBox::sub(direct, viasum, p).contains_zero(p));
        }
    }
}

TEST_CASE("rescale_denominator: spec examples") {
    AlgContext ctx;
    SUBCASE("N = 1 identity") {
        ExpPolyEquation eq = tau38();
        ExpPolyEquation r = rescale_denominator(eq, Integer(1), ctx);
        CHECK(r.basis.size() == eq.basis.size());
        CHECK(r.basis[0].lambda.as_rational() == Rational(2));
    }
    SUBCASE("b = (log 2), N = 2: new lambda = sqrt 2") {
        ExpPolyEquation r = rescale_denominator(simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                                       {log2_entry()}),
                                                Integer(2), ctx);
        REQUIRE(r.basis.size() == 1);
        CHECK(r.basis[0].kind == LogElement::Kind::log_of_algebraic);
        CHECK(r.basis[0].lambda.minpoly() == IntPolynomial{-2, 0, 1});
        CHECK(r.basis[0].branch == 0);
    }
    SUBCASE("two_pi_i entries scale the multiple") {
        ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                    {LogElement::two_pi_i(Rational(1)), log2_entry()});
        ExpPolyEquation r = rescale_denominator(eq, Integer(3), ctx);
        CHECK(r.basis[0].two_pi_multiple == Rational(1, 3));
    }
    SUBCASE("fixture correspondence: tau38 with N = 4, solutions match under q -> 4q") {
        ExpPolyEquation eq = tau38();
        ExpPolyEquation r = rescale_denominator(eq, Integer(4), ctx);
        // integer solutions of the rescaled equation on |n| <= 40 (oracle scan)
        auto rs = oracles::window_solutions(r, 16);
        // rational solutions of the original with denominator dividing 4 within
        // |numerator| <= 16: only q = 3 (i.e. n = 12 after scaling).
        REQUIRE(rs.size() == 1);
        CHECK(rs[0][0] == Integer(12));
        auto orig = oracles::window_solutions(eq, 4);
        REQUIRE(orig.size() == 1);
        CHECK(orig[0][0] == Integer(3));
    }
}

TEST_CASE("rescale composition: N then M equals N*M") {
    AlgContext ctx;
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}}, {log2_entry()});
    ExpPolyEquation a = rescale_denominator(rescale_denominator(eq, Integer(2), ctx), Integer(3), ctx);
    ExpPolyEquation b = rescale_denominator(eq, Integer(6), ctx);
    REQUIRE(a.basis.size() == 1);
    REQUIRE(b.basis.size() == 1);
    CHECK(a.basis[0].lambda.minpoly() == b.basis[0].lambda.minpoly());
    CHECK(a.basis[0].lambda.equals(b.basis[0].lambda));
    CHECK(a.basis[0].branch == b.basis[0].branch);
}

TEST_CASE("classify_degeneracy: spec examples") {
    AlgContext ctx;
    PrecisionContext pc;
    SUBCASE("p = y - 1 + x y^2 at n = 0: level-2 term vanishes") {
        ExpPolyEquation eq = simple(
            {{0, 1, Rational(1)}, {0, 0, Rational(-1)}, {1, 2, Rational(1)}}, {log2_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        auto res = classify_degeneracy(sum, {Integer(0)}, pc);
        REQUIRE(res.degenerate);
        CHECK(res.witness_levels == std::vector<int>{2});
    }
    SUBCASE("p = y^2 - 3y + 2 + x(y - 1) at n = 0: non-degenerate full zero") {
        ExpPolyEquation eq = simple({{0, 2, Rational(1)},
                                     {0, 1, Rational(-3)},
                                     {0, 0, Rational(2)},
                                     {1, 1, Rational(1)},
                                     {1, 0, Rational(-1)}},
                                    {log2_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        // oracle: subset sums over {2, -3, 1} exclude zero for proper subsets
        auto witness = oracles::subset_zero({Rational(2), Rational(-3), Rational(1)});
        CHECK_FALSE(witness.has_value());
        auto res = classify_degeneracy(sum, {Integer(0)}, pc);
        CHECK_FALSE(res.degenerate);
    }
    SUBCASE("two nonzero terms are never degenerate") {
        ExpPolyEquation eq = simple({{0, 0, Rational(5)}, {0, 1, Rational(1)}}, {log2_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        auto res = classify_degeneracy(sum, {Integer(3)}, pc);
        CHECK_FALSE(res.degenerate);
    }
    SUBCASE("guard on subset count") {
        ExpPolyEquation eq = simple({{0, 0, Rational(1)},
                                     {0, 1, Rational(1)},
                                     {0, 2, Rational(1)},
                                     {0, 3, Rational(1)}},
                                    {log2_entry()});
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        CHECK_THROWS_AS(classify_degeneracy(sum, {Integer(1)}, pc, 3), GuardExceeded);
    }
}

TEST_CASE("degeneracy classifier matches the 2^s oracle on random constant sums") {
    AlgContext ctx;
    PrecisionContext pc;
    Rng rng;
    for (int iter = 0; iter < 20; ++iter) {
        // random constant coefficients over basis (log 2): term values at n
        // are q_i * 2^(i n), exactly rational.
        int s = 3 + static_cast<int>(rng.next() % 4); // 3..6 terms
        ExpPolyEquation eq;
        eq.basis.push_back(log2_entry());
        std::vector<Rational> qs;
        for (int i = 0; i < s; ++i) {
            Rational c(rng.range(-3, 3));
            if (c.is_zero()) c = Rational(1);
            // occasionally engineer a vanishing pair
            if (i == 2 && rng.next() % 2 == 0) c = -qs[0] * Rational::pow(Rational(2), -2 * 1);
            qs.push_back(c);
            eq.p.set({0, i}, FormalCoefficient::constant(c));
        }
        long n = rng.range(-2, 2);
        ExponentialSum sum = expand_exponential_sum(eq, ctx);
        std::vector<Rational> terms;
        for (int i = 0; i < s; ++i) terms.push_back(qs[static_cast<size_t>(i)] * Rational::pow(Rational(2), i * n));
        auto oracle = oracles::subset_zero(terms);
        auto res = classify_degeneracy(sum, {Integer(n)}, pc);
        CHECK(res.degenerate == oracle.has_value());
    }
}

TEST_CASE("extract_algebraic_log_sublattice: spec examples") {
    SUBCASE("(log 2, formal tau) -> c = (log 2), embedding (1 0)") {
        ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                    {log2_entry(), LogElement::formal("tau")});
        SymbolDef t;
        t.kind = SymbolDef::Kind::free_box;
        t.re = Rational(1, 3);
        eq.symbols["tau"] = t;
        auto sub = extract_algebraic_log_sublattice(eq);
        REQUIRE(sub.c.size() == 1);
        CHECK(sub.c[0].kind == LogElement::Kind::log_of_algebraic);
        CHECK(sub.embedding[0][0] == Integer(1));
        CHECK(sub.embedding[0][1] == Integer(0));
        CHECK_FALSE(sub.two_pi_i_index.has_value());
    }
    SUBCASE("(2pii/3, log 2) -> identity, 2pii first") {
        ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                    {LogElement::two_pi_i(Rational(1, 3)), log2_entry()});
        auto sub = extract_algebraic_log_sublattice(eq);
        REQUIRE(sub.c.size() == 2);
        CHECK(sub.two_pi_i_index == size_t{0});
        CHECK(sub.c[0].two_pi_multiple == Rational(1, 3));
        CHECK(sub.embedding[0][0] == Integer(1));
        CHECK(sub.embedding[1][1] == Integer(1));
    }
    SUBCASE("all-formal basis -> empty sublattice") {
        ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                    {LogElement::formal("t")});
        SymbolDef t;
        t.kind = SymbolDef::Kind::free_box;
        t.re = Rational(1, 3);
        eq.symbols["t"] = t;
        auto sub = extract_algebraic_log_sublattice(eq);
        CHECK(sub.c.empty());
    }
}

TEST_CASE("translate_by_class: spec examples") {
    AlgContext ctx;
    Prec p = 160;
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}}, {log2_entry()});
    auto sub = extract_algebraic_log_sublattice(eq);

    SUBCASE("n_m = 0 is the identity") {
        ExpPolyEquation t = translate_by_class(eq, sub, {Integer(0)}, ctx);
        CHECK(t.p.term_count() == eq.p.term_count());
        std::vector<Integer> n{Integer(2)};
        CHECK(ComplexBox::sub(t.value_box(n, p, ctx), eq.value_box(n, p, ctx), p).contains_zero(p));
    }
    SUBCASE("p = x - y, a = log 2: r(X, Y) = log2 + X - 2Y, numeric identity at samples") {
        ExpPolyEquation t = translate_by_class(eq, sub, {Integer(1)}, ctx);
        // r(n') must equal p(n' + 1) for integer points (solution bijection)
        for (long n = -4; n <= 4; ++n) {
            ComplexBox lhs = t.value_box({Integer(n)}, p, ctx);
            ComplexBox rhs = eq.value_box({Integer(n + 1)}, p, ctx);
            CHECK(ComplexBox::sub(lhs, rhs, p).contains_zero(p));
        }
    }
    SUBCASE("degree preservation on random polynomials") {
        Rng rng;
        for (int iter = 0; iter < 10; ++iter) {
            ExpPolyEquation r;
            r.basis = eq.basis;
            int dx = 1 + static_cast<int>(rng.next() % 3);
            int dy = 1 + static_cast<int>(rng.next() % 3);
            for (int i = 0; i <= dx; ++i)
                for (int j = 0; j <= dy; ++j) {
                    long c = rng.range(-2, 2);
                    if (i == dx && j == 0 && c == 0) c = 1;
                    if (i == 0 && j == dy && c == 0) c = 1;
                    if (c != 0) r.p.set({i, j}, FormalCoefficient::constant(Rational(c)));
                }
            ExpPolyEquation t = translate_by_class(r, sub, {Integer(1)}, ctx);
            CHECK(t.p.degree_x() == r.p.degree_x());
            CHECK(t.p.degree_y() == r.p.degree_y());
        }
    }
    SUBCASE("translate by a then -a returns the original") {
        ExpPolyEquation t1 = translate_by_class(eq, sub, {Integer(2)}, ctx);
        auto sub1 = extract_algebraic_log_sublattice(t1);
        ExpPolyEquation t2 = translate_by_class(t1, sub1, {Integer(-2)}, ctx);
        for (const auto& [e, v] : eq.p.terms()) {
            auto it = t2.p.terms().find(e);
            REQUIRE(it != t2.p.terms().end());
            CHECK(it->second.equals(v, ctx));
        }
        CHECK(t2.p.term_count() == eq.p.term_count());
    }
}

TEST_CASE("split_two_pi_i: spec examples") {
    AlgContext ctx;
    SUBCASE("N = 1 singleton identity") {
        ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                    {LogElement::two_pi_i(Rational(1)), log2_entry()});
        auto branches = split_two_pi_i(eq, ctx);
        REQUIRE(branches.size() == 1);
        CHECK(branches[0].p.term_count() == eq.p.term_count());
    }
    SUBCASE("zeta_4 = i has minpoly x^2 + 1") {
        CHECK(root_of_unity(Integer(1), Integer(4)).minpoly() == IntPolynomial{1, 0, 1});
    }
    SUBCASE("N = 2 preserves brute-force solution sets (3 fixtures, window 8)") {
        std::vector<ExpPolyEquation> fixtures;
        // p = y - 1: solutions n0 even, n1 = 0
        fixtures.push_back(simple({{0, 1, Rational(1)}, {0, 0, Rational(-1)}},
                                  {LogElement::two_pi_i(Rational(1, 2)), log2_entry()}));
        // p = x - y: no solutions on the window
        fixtures.push_back(simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                  {LogElement::two_pi_i(Rational(1, 2)), log2_entry()}));
        // p = x - pii*y: solution (-1, 0)
        {
            ExpPolyEquation eq = simple({{1, 0, Rational(1)}},
                                        {LogElement::two_pi_i(Rational(1, 2)), log2_entry()});
            SymbolDef hp;
            hp.kind = SymbolDef::Kind::basis_combination;
            hp.combo = {Rational(1), Rational(0)};
            eq.symbols["hp"] = hp;
            eq.p.set({0, 1}, FormalCoefficient::symbol("hp").negated());
            fixtures.push_back(eq);
        }
        for (const auto& eq : fixtures) {
            auto input_solutions = oracles::window_solutions(eq, 8);
            auto branches = split_two_pi_i(eq, ctx);
            REQUIRE(branches.size() == 2);
            // map branch solutions (m, n1) -> (2m + residue, n1)
            std::vector<std::vector<Integer>> mapped;
            for (size_t r = 0; r < branches.size(); ++r) {
                // window on m: |m| <= 4 covers n0 in [-8, 8]
                for (const auto& s : oracles::window_solutions(branches[r], 4)) {
                    std::vector<Integer> n = s;
                    n[0] = n[0] * Integer(2) + Integer(static_cast<long>(r));
                    if (Integer::abs(n[0]) <= Integer(8)) mapped.push_back(n);
                }
            }
            std::sort(mapped.begin(), mapped.end(),
                      [](const auto& a, const auto& b) {
                          for (size_t i = 0; i < a.size(); ++i) {
                              if (a[i] != b[i]) return a[i] < b[i];
                          }
                          return false;
                      });
            auto expectset = input_solutions;
            std::sort(expectset.begin(), expectset.end(),
                      [](const auto& a, const auto& b) {
                          for (size_t i = 0; i < a.size(); ++i) {
                              if (a[i] != b[i]) return a[i] < b[i];
                          }
                          return false;
                      });
            CHECK(mapped == expectset);
        }
    }
}

TEST_CASE("specialize_formal: spec examples") {
    AlgContext ctx;
    std::map<std::string, AlgebraicNumber> sigma{{"tau", AlgebraicNumber(Rational(0))}};
    SUBCASE("p = x - (1 + tau) y, tau -> 0: x - y, all flags healthy") {
        BivariatePolynomial<FormalCoefficient> p;
        p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
        FormalPoly c = FormalPoly::constant(Rational(1)).plus(FormalPoly::symbol("tau"), ctx);
        p.set({0, 1}, FormalCoefficient(c).negated(ctx));
        auto res = specialize_formal(p, sigma, ctx);
        CHECK(res.nonzero);
        CHECK(res.dx_nonzero);
        CHECK(res.dy_nonzero);
        CHECK_FALSE(res.univariate_x);
        CHECK_FALSE(res.univariate_y);
    }
    SUBCASE("p = x - tau y, tau -> 0: univariate-degenerate in x") {
        BivariatePolynomial<FormalCoefficient> p;
        p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
        p.set({0, 1}, FormalCoefficient::symbol("tau").negated(ctx));
        auto res = specialize_formal(p, sigma, ctx);
        CHECK(res.univariate_x);
        CHECK_FALSE(res.univariate_y);
    }
    SUBCASE("p = x - (1/tau) y, tau -> 0: clears to tau x - y, univariate in y") {
        BivariatePolynomial<FormalCoefficient> p;
        p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
        p.set({0, 1}, FormalCoefficient::symbol("tau", -1).negated(ctx));
        auto res = specialize_formal(p, sigma, ctx);
        CHECK(res.univariate_y);
        CHECK_FALSE(res.univariate_x);
        // manual clearing oracle: tau*x - y at tau = 0 is -y
        auto it = res.specialized.terms().find({0, 1});
        REQUIRE(it != res.specialized.terms().end());
        CHECK(it->second.as_rational() == Rational(-1));
    }
    SUBCASE("annihilation reported") {
        BivariatePolynomial<FormalCoefficient> p;
        p.set({1, 0}, FormalCoefficient(FormalPoly::symbol("tau")));
        CHECK_THROWS_AS(specialize_formal(p, sigma, ctx), SpecializationAnnihilates);
    }
}

TEST_CASE("specialization commutes with evaluation on 100 random points x 5 fixtures") {
    AlgContext ctx;
    Rng rng;
    // fixtures: formal-coefficient polynomials in tau
    std::vector<BivariatePolynomial<FormalCoefficient>> fixtures;
    for (int f = 0; f < 5; ++f) {
        BivariatePolynomial<FormalCoefficient> p;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= 1; ++j) {
                long c = rng.range(-2, 2);
                long d = rng.range(0, 2);
                if (c == 0 && i == 0 && j == 0) c = 1;
                if (c == 0) continue;
                FormalPoly term = FormalPoly::symbol("tau", static_cast<int>(d)).scaled(
                    AlgebraicNumber(Rational(c)), ctx);
                p.add_term({i, j}, FormalCoefficient(term), ctx);
            }
        fixtures.push_back(p);
    }
    for (const auto& p : fixtures) {
        std::map<std::string, AlgebraicNumber> sigma{{"tau", AlgebraicNumber(Rational(rng.range(1, 5)))}};
        auto res = specialize_formal(p, sigma, ctx);
        for (int k = 0; k < 20; ++k) {
            Rational x0(rng.range(-5, 5), rng.range(1, 3));
            Rational y0(rng.range(-5, 5), rng.range(1, 3));
            // specialize-then-evaluate
            AlgebraicNumber via_spec(Rational(0));
            for (const auto& [e, v] : res.specialized.terms()) {
                Rational mono = Rational::pow(x0, e.first) * Rational::pow(y0, e.second);
                via_spec = alg_add(via_spec, alg_mul(v, AlgebraicNumber(mono), ctx), ctx);
            }
            // evaluate-then-specialize (coefficients evaluated as formal, then sigma)
            AlgebraicNumber via_eval(Rational(0));
            for (const auto& [e, v] : p.terms()) {
                AlgebraicNumber cval = v.specialize(sigma, ctx);
                Rational mono = Rational::pow(x0, e.first) * Rational::pow(y0, e.second);
                via_eval = alg_add(via_eval, alg_mul(cval, AlgebraicNumber(mono), ctx), ctx);
            }
            CHECK(via_spec.equals(via_eval));
        }
    }
}

TEST_CASE("rescale with a nonzero branch lands on the right root") {
    // b = log 2 + 2pii (branch 1); b/2 = exp-log of -sqrt(2) with branch 0.
    AlgContext ctx;
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                {LogElement::log_of(AlgebraicNumber(Rational(2)), 1)});
    ExpPolyEquation r = rescale_denominator(eq, Integer(2), ctx);
    REQUIRE(r.basis.size() == 1);
    const LogElement& e = r.basis[0];
    CHECK(e.lambda.minpoly() == IntPolynomial{-2, 0, 1});
    // designated root is the negative one
    Prec p = 96;
    CHECK(e.lambda.box(48).re_interval(p).is_negative());
    CHECK(e.branch == 0);
    // value check: basis_value(b/2) ~ 0.3466 + pi*i
    ComplexBox v = r.basis_value(0, p);
    CHECK(std::abs(v.re().to_double() - std::log(2.0) / 2) < 1e-12);
    CHECK(std::abs(v.im().to_double() - 3.14159265358979) < 1e-9);
}

TEST_CASE("logarithm branches: negative real values take Arg = pi exactly") {
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                {LogElement::log_of(AlgebraicNumber(Rational(-3)), 0)});
    Prec p = 128;
    ComplexBox v = eq.basis_value(0, p);
    CHECK(std::abs(v.re().to_double() - std::log(3.0)) < 1e-20);
    CHECK(std::abs(v.im().to_double() - 3.141592653589793) < 1e-12);
    // branch -1: Arg + 2*pi*(-1) = -pi
    ExpPolyEquation eq2 = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                 {LogElement::log_of(AlgebraicNumber(Rational(-3)), -1)});
    ComplexBox v2 = eq2.basis_value(0, p);
    CHECK(std::abs(v2.im().to_double() + 3.141592653589793) < 1e-12);
}

TEST_CASE("translate across a formal entry keeps the value correspondence") {
    AlgContext ctx;
    Prec p = 160;
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}, {0, 0, Rational(5)}},
                                {log2_entry(), LogElement::formal("t")});
    SymbolDef t;
    t.kind = SymbolDef::Kind::free_box;
    t.re = Rational(1, 3);
    t.im = Rational(0);
    t.rad = Rational(0);
    eq.symbols["t"] = t;
    auto sub = extract_algebraic_log_sublattice(eq);
    REQUIRE(sub.c.size() == 1);
    std::vector<Integer> n_m{Integer(2), Integer(-1)}; // touches the formal entry
    ExpPolyEquation tr = translate_by_class(eq, sub, n_m, ctx);
    REQUIRE(tr.basis.size() == 1);
    for (long np = -3; np <= 3; ++np) {
        ComplexBox lhs = tr.value_box({Integer(np)}, p, ctx);
        ComplexBox rhs = eq.value_box({Integer(2 + np), Integer(-1)}, p, ctx);
        ComplexBox diff = ComplexBox::sub(lhs, rhs, p);
        CHECK(diff.contains_zero(p));
        CHECK(ComplexBox::modulus(diff, p).hi().to_double() < 1e-30);
    }
}

TEST_CASE("split with a general two-pi-i multiple (r = 3/2)") {
    AlgContext ctx;
    ExpPolyEquation eq = simple({{1, 0, Rational(1)}, {0, 1, Rational(-1)}},
                                {LogElement::two_pi_i(Rational(3, 2)), log2_entry()});
    auto branches = split_two_pi_i(eq, ctx);
    REQUIRE(branches.size() == 2);
    for (const auto& b : branches) CHECK(b.basis[0].two_pi_multiple == Rational(3));
    // window preservation under n0 = 2m + r
    auto input_solutions = oracles::window_solutions(eq, 6);
    std::vector<std::vector<Integer>> mapped;
    for (size_t r = 0; r < branches.size(); ++r)
        for (const auto& s : oracles::window_solutions(branches[r], 3)) {
            std::vector<Integer> n = s;
            n[0] = n[0] * Integer(2) + Integer(static_cast<long>(r));
            if (Integer::abs(n[0]) <= Integer(6)) mapped.push_back(n);
        }
    CHECK(mapped.size() == input_solutions.size());
}
