#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "oracles.hpp"

#include "expeq/pipeline.hpp"

using namespace expeq;

namespace {

BoundInputs mk(double a3, double A, double C) {
    Prec p = 128;
    return {Real::from_rational(Rational::parse(std::to_string(a3)), p, MPFR_RNDD),
            Real::from_rational(Rational::parse(std::to_string(A)), p, MPFR_RNDU),
            Real::from_rational(Rational::parse(std::to_string(C)), p, MPFR_RNDU)};
}

// Direct-scan oracle for the bound: max b <= limit with a3 b <= A log b + C.
long bound_oracle(double a3, double A, double C, long limit = 100000) {
    long best = 0;
    for (long b = 1; b <= limit; ++b) {
        double rhs = C + (b >= 2 ? A * std::log(double(b)) : 0.0);
        if (a3 * b <= rhs) best = b;
    }
    return best;
}

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

struct Rng {
    unsigned long long s = 0xabcdef12345ULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * double(next() % 1000000) / 1000000.0;
    }
};

} // namespace

TEST_CASE("compute_bound: spec examples against the scan oracle") {
    SUBCASE("a3 = log 2, A = 0, C = log 1000 -> 9") {
        BoundInputs in = mk(std::log(2.0), 0.0, std::log(1000.0));
        long B = compute_bound(in);
        CHECK(B == 9);
        CHECK(B == bound_oracle(std::log(2.0), 0.0, std::log(1000.0)));
        // 9 log 2 <= log 1000 < 10 log 2
        CHECK(9 * std::log(2.0) <= std::log(1000.0));
        CHECK(std::log(1000.0) < 10 * std::log(2.0));
    }
    SUBCASE("A = C = 0 -> 0") { CHECK(compute_bound(mk(0.5, 0.0, 0.0)) == 0); }
    SUBCASE("a3 = 0.424908, A = 2, C = 5: crossing in (27, 28)") {
        long B = compute_bound(mk(0.424908, 2.0, 5.0));
        long oracle = bound_oracle(0.424908, 2.0, 5.0);
        CHECK(B == oracle);
        CHECK(B == 27); // the last integer before the crossing
        // the crossing really lies in (27, 28):
        CHECK(0.424908 * 27 <= 2 * std::log(27.0) + 5);
        CHECK(0.424908 * 28 > 2 * std::log(28.0) + 5);
    }
    SUBCASE("dip case: true region detached from 1 (a3 = 1, A = 10, C = 0)") {
        long B = compute_bound(mk(1.0, 10.0, 0.0));
        CHECK(B == bound_oracle(1.0, 10.0, 0.0));
        CHECK_FALSE(1.0 * 1 <= 0.0); // b = 1 itself fails
        CHECK(B > 1);
    }
}

TEST_CASE("bound monotonicity suite over 100 random triples") {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        double a3 = rng.uniform(0.05, 2.0);
        double A = rng.uniform(0.0, 5.0);
        double C = rng.uniform(0.0, 8.0);
        long B = compute_bound(mk(a3, A, C));
        CHECK(compute_bound(mk(a3, A, C + 0.5)) >= B);
        CHECK(compute_bound(mk(a3, A + 0.5, C)) >= B);
        CHECK(compute_bound(mk(a3 + 0.25, A, C)) <= B);
        CHECK(B == bound_oracle(a3, A, C));
    }
}

TEST_CASE("enumerate_candidates: spec examples") {
    SUBCASE("dim 1, B = 2: five vectors") {
        std::vector<long> seen;
        enumerate_candidates(1, 2, 100, [&](const std::vector<Integer>& n) {
            seen.push_back(n[0].to_long());
        });
        CHECK(seen == std::vector<long>{0, -1, 1, -2, 2}); // graded lex
        std::set<long> s(seen.begin(), seen.end());
        CHECK(s == std::set<long>{-2, -1, 0, 1, 2});
    }
    SUBCASE("dim 2, B = 1: origin plus four unit vectors") {
        long count = 0;
        enumerate_candidates(2, 1, 100, [&](const std::vector<Integer>&) { ++count; });
        CHECK(count == 5);
    }
    SUBCASE("dim 2, B = 3: 25 = 2B^2 + 2B + 1 (count oracle)") {
        long count = 0;
        enumerate_candidates(2, 3, 100, [&](const std::vector<Integer>&) { ++count; });
        CHECK(count == 25);
        CHECK(l1_ball_count(2, 3) == Integer(2 * 9 + 2 * 3 + 1));
    }
    SUBCASE("uniqueness and the graded property") {
        std::set<std::pair<long, long>> seen;
        long last_norm = 0;
        enumerate_candidates(2, 4, 1000, [&](const std::vector<Integer>& n) {
            long norm = std::labs(n[0].to_long()) + std::labs(n[1].to_long());
            CHECK(norm >= last_norm);
            last_norm = norm;
            CHECK(seen.insert({n[0].to_long(), n[1].to_long()}).second);
        });
        CHECK(seen.size() == 41);
    }
    SUBCASE("guard exceeded carries the exact count") {
        bool threw = false;
        try {
            enumerate_candidates(3, 10, 100, [](const std::vector<Integer>&) {});
        } catch (const GuardExceeded& e) {
            threw = true;
            std::string msg = e.what();
            CHECK(msg.find(l1_ball_count(3, 10).str()) != std::string::npos);
        }
        CHECK(threw);
    }
}

TEST_CASE("test_candidate: spec fixture statuses") {
    PrecisionContext pc;
    AlgContext ctx;
    ExpPolyEquation eq = tau38();
    SUBCASE("n = 3 exactly verified (8*3 = 3*2^3 oracle)") {
        CHECK(Integer(8 * 3) == Integer(3 * 8));
        auto res = test_candidate(eq, {Integer(3)}, pc, ctx);
        CHECK(res.status == CandidateStatus::exactly_verified);
    }
    SUBCASE("n = 1 certified non-solution (value = log2 / 4)") {
        auto res = test_candidate(eq, {Integer(1)}, pc, ctx);
        CHECK(res.status == CandidateStatus::certified_non_solution);
    }
    SUBCASE("n = 0 with p = xy + x: exactly verified, all coefficients vanish") {
        ExpPolyEquation eq2;
        eq2.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
        eq2.p.set({1, 1}, FormalCoefficient::constant(Rational(1)));
        eq2.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
        auto res = test_candidate(eq2, {Integer(0)}, pc, ctx);
        CHECK(res.status == CandidateStatus::exactly_verified);
        CHECK(res.all_coefficients_vanish);
    }
}

TEST_CASE("test_candidate soundness: exact solutions re-substitute to zero at double precision") {
    PrecisionContext pc;
    AlgContext ctx;
    ExpPolyEquation eq = tau38();
    auto res = test_candidate(eq, {Integer(3)}, pc, ctx);
    REQUIRE(res.status == CandidateStatus::exactly_verified);
    ComplexBox v = eq.value_box({Integer(3)}, 2 * pc.bits, ctx);
    CHECK(v.contains_zero(2 * pc.bits));
    // and a certified non-solution has a re-checkable exclusion level
    auto non = test_candidate(eq, {Integer(1)}, pc, ctx);
    REQUIRE(non.status == CandidateStatus::certified_non_solution);
    CHECK(eq.value_box({Integer(1)}, non.precision, ctx).excludes_zero(non.precision));
}

TEST_CASE("run_pipeline: spec fixtures") {
    SUBCASE("tau38: unique solution n = 3, finite B, zero probables") {
        PipelineOptions opts;
        FinitenessCertificate cert = run_pipeline(tau38(), opts);
        CHECK(cert.verdict == "certificate");
        REQUIRE(cert.branches.size() == 1);
        const auto& b = cert.branches[0];
        CHECK(b.bound_B > 0);
        CHECK(b.exactly_verified == 1);
        CHECK(b.probable == 0);
        REQUIRE(b.solutions.size() == 1);
        CHECK(b.solutions[0].n == std::vector<Integer>{Integer(3)});
        // oracle: 8n = 3*2^n has the unique integer solution n = 3
        for (long n = -20; n <= 20; ++n) {
            bool solves = false;
            if (n >= 0) solves = (8 * n == 3 * (1L << n) && n < 30);
            CHECK(solves == (n == 3));
        }
    }
    SUBCASE("p = y - 2 over (log 2): certificate lists n = 1") {
        ExpPolyEquation eq;
        eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
        eq.p.set({0, 1}, FormalCoefficient::constant(Rational(1)));
        eq.p.set({0, 0}, FormalCoefficient::constant(Rational(-2)));
        FinitenessCertificate cert = run_pipeline(eq, {});
        CHECK(cert.verdict == "certificate");
        REQUIRE(cert.branches.size() == 1);
        REQUIRE(cert.branches[0].solutions.size() == 1);
        CHECK(cert.branches[0].solutions[0].n == std::vector<Integer>{Integer(1)});
    }
    SUBCASE("all-formal basis: structured not-applicable verdict") {
        ExpPolyEquation eq;
        eq.basis.push_back(LogElement::formal("t"));
        SymbolDef t;
        t.kind = SymbolDef::Kind::free_box;
        t.re = Rational(1, 3);
        t.rad = Rational(1, 1000);
        eq.symbols["t"] = t;
        eq.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
        eq.p.set({0, 1}, FormalCoefficient::constant(Rational(-1)));
        FinitenessCertificate cert = run_pipeline(eq, {});
        CHECK(cert.verdict == "not-applicable: no algebraic-exponential sublattice");
    }
}

TEST_CASE("pipeline agreement with brute force over |n|_1 <= B + 10") {
    PipelineOptions opts;
    ExpPolyEquation eq = tau38();
    FinitenessCertificate cert = run_pipeline(eq, opts);
    REQUIRE(cert.branches.size() == 1);
    long window = cert.branches[0].bound_B + 10;
    auto scan = oracles::window_solutions(eq, window);
    std::vector<std::vector<Integer>> pipeline_solutions;
    for (const auto& s : cert.branches[0].solutions)
        if (s.status == CandidateStatus::exactly_verified) pipeline_solutions.push_back(s.n);
    CHECK(pipeline_solutions == scan);
}

TEST_CASE("pipeline: degenerate sigma branch exercised (2pii coefficient)") {
    // p = x - 2pii*y over (2pii, log 2): sigma(2pii) = 0 makes r^sigma = x.
    ExpPolyEquation eq;
    eq.basis.push_back(LogElement::two_pi_i(Rational(1)));
    eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
    SymbolDef pp;
    pp.kind = SymbolDef::Kind::basis_combination;
    pp.combo = {Rational(1), Rational(0)};
    eq.symbols["pp"] = pp;
    eq.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
    eq.p.set({0, 1}, FormalCoefficient::symbol("pp").negated());
    eq.asserted_independent = true;
    FinitenessCertificate cert = run_pipeline(eq, {});
    CHECK(cert.verdict == "certificate");
    REQUIRE(cert.branches.size() == 1);
    bool degenerate_path = false;
    for (const auto& note : cert.branches[0].exceptional_notes)
        degenerate_path = degenerate_path || note.find("univariate special case") != std::string::npos;
    CHECK(degenerate_path);
    REQUIRE(cert.branches[0].solutions.size() == 1);
    CHECK(cert.branches[0].solutions[0].n == std::vector<Integer>{Integer(1), Integer(0)});
    // oracle: n0*2pii + n1 log2 = 2pii * 2^n1 forces n1 = 0 (real part), n0 = 1.
}

TEST_CASE("completeness bookkeeping: buckets cover the ball") {
    PipelineOptions opts;
    FinitenessCertificate cert = run_pipeline(tau38(), opts);
    const auto& b = cert.branches[0];
    Integer covered = b.certified_non_solutions + Integer(b.exactly_verified) + Integer(b.probable);
    CHECK(covered == b.candidates_total);
    CHECK(b.candidates_total == l1_ball_count(1, b.bound_B));
}

TEST_CASE("two-dimensional basis pipeline: unique solution (1, 1)") {
    // p = x - tau y over (log 2, log 3) with tau = (log2 + log3)/6: over the
    // monomial basis the solution needs 6 n1 = 6 n2 = 2^n1 3^n2, forcing
    // n1 = n2 = 1 (the oracle below scans a window around the bound).
    ExpPolyEquation eq;
    eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
    eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(3)), 0));
    SymbolDef tau;
    tau.kind = SymbolDef::Kind::basis_combination;
    tau.combo = {Rational(1, 6), Rational(1, 6)};
    eq.symbols["tau"] = tau;
    eq.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
    eq.p.set({0, 1}, FormalCoefficient::symbol("tau").negated());
    eq.asserted_independent = true;

    FinitenessCertificate cert = run_pipeline(eq, {});
    REQUIRE(cert.verdict == "certificate");
    const auto& b = cert.branches[0];
    CHECK(b.probable == 0);
    REQUIRE(b.solutions.size() == 1);
    CHECK(b.solutions[0].n == std::vector<Integer>{Integer(1), Integer(1)});
    CHECK(b.candidates_total == l1_ball_count(2, b.bound_B));
    // independent window scan agrees (radius_inf 4 covers the solution region)
    auto scan = oracles::window_solutions(eq, 4);
    REQUIRE(scan.size() == 1);
    CHECK(scan[0] == b.solutions[0].n);
}

TEST_CASE("nonzero class translates: both classes recover the same original solution") {
    ExpPolyEquation eq = tau38();
    PipelineOptions opts;
    opts.class_translates = {{Integer(0)}, {Integer(3)}};
    FinitenessCertificate cert = run_pipeline(eq, opts);
    REQUIRE(cert.branches.size() == 2);
    for (const auto& b : cert.branches) {
        REQUIRE(b.verdict == "certificate");
        REQUIRE(b.solutions.size() == 1);
        CHECK(b.solutions[0].original == std::vector<Rational>{Rational(3)});
    }
    // class (3) sees it at n' = 0, class (0) at n' = 3
    CHECK(cert.branches[0].solutions[0].n == std::vector<Integer>{Integer(3)});
    CHECK(cert.branches[1].solutions[0].n == std::vector<Integer>{Integer(0)});
}

TEST_CASE("algebraic coefficients flow through sigma and the height chain") {
    // p = x - sqrt(2) tau y with tau = (3/8) log 2: the log2-coefficient of the
    // value is n - (3 sqrt2 / 8) 2^n, never zero over the rationals, so the
    // certificate is empty and every candidate is certified excluded.
    ExpPolyEquation eq;
    eq.basis.push_back(LogElement::log_of(AlgebraicNumber(Rational(2)), 0));
    SymbolDef tau;
    tau.kind = SymbolDef::Kind::basis_combination;
    tau.combo = {Rational(3, 8)};
    eq.symbols["tau"] = tau;
    eq.p.set({1, 0}, FormalCoefficient::constant(Rational(1)));
    Prec p = 96;
    AlgebraicNumber sqrt2(IntPolynomial{-2, 0, 1},
                          widen(ComplexBox::exact(Rational(141, 100), Rational(0), p),
                                Real::from_rational(Rational(1, 10), p, MPFR_RNDU), p));
    FormalPoly coeff = FormalPoly::symbol("tau").scaled(alg_neg(sqrt2));
    eq.p.set({0, 1}, FormalCoefficient(coeff));
    eq.asserted_independent = true;

    FinitenessCertificate cert = run_pipeline(eq, {});
    REQUIRE(cert.verdict == "certificate");
    const auto& b = cert.branches[0];
    CHECK(b.bound_B > 0);
    CHECK(b.solutions.empty());
    CHECK(b.probable == 0);
    CHECK(b.certified_non_solutions == l1_ball_count(1, b.bound_B));
}
