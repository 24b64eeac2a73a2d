#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"

#include "expeq/algebraic.hpp"
#include "expeq/bipoly.hpp"

using namespace expeq;

namespace {

ComplexBox around(const Rational& re, const Rational& im, const Rational& rad, Prec p = 64) {
    return widen(ComplexBox::exact(re, im, p), Real::from_rational(rad, p, MPFR_RNDU), p);
}

AlgebraicNumber sqrt2() {
    return {IntPolynomial{-2, 0, 1}, around(Rational(141, 100), Rational(0), Rational(1, 10))};
}
AlgebraicNumber golden() {
    return {IntPolynomial{-1, -1, 1}, around(Rational(162, 100), Rational(0), Rational(1, 10))};
}

// Deterministic pseudo-random rationals.
struct Rng {
    unsigned long long s = 88172645463325252ULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational rational(long maxabs) {
        long num = range(-maxabs, maxabs);
        long den = range(1, maxabs);
        return {num, den};
    }
};

} // namespace

TEST_CASE("rational invariants: canonical form") {
    Rational q(Integer(6), Integer(-4));
    CHECK(q.num() == Integer(-3));
    CHECK(q.den() == Integer(2));
    CHECK(Rational::parse("-1.25") == Rational(-5, 4));
    CHECK(Rational::parse("3/9") == Rational(1, 3));
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
}

TEST_CASE("complex box enclosure under sampled arithmetic") {
    // Exact rational points inside boxes stay inside images (enclosure).
    Prec p = 96;
    Rng rng;
    for (int iter = 0; iter < 60; ++iter) {
        Rational are = rng.rational(9), aim = rng.rational(9);
        Rational bre = rng.rational(9), bim = rng.rational(9);
        ComplexBox a = around(are, aim, Rational(1, 64), p);
        ComplexBox b = around(bre, bim, Rational(1, 64), p);
        // point selections: centers themselves
        ComplexBox sum = ComplexBox::add(a, b, p);
        CHECK(sum.contains_point(are + bre, aim + bim, p));
        ComplexBox prod = ComplexBox::mul(a, b, p);
        CHECK(prod.contains_point(are * bre - aim * bim, are * bim + aim * bre, p));
        if (!(are.is_zero() && aim.is_zero())) {
            ComplexBox av = ComplexBox::exact(are, aim, p);
            if (av.excludes_zero(p)) {
                ComplexBox inv = ComplexBox::inverse(av, p);
                Rational n2 = are * are + aim * aim;
                CHECK(inv.contains_point(are / n2, -aim / n2, p));
            }
        }
    }
}

TEST_CASE("exp enclosure on rational points") {
    Prec p = 96;
    // exp(0) = 1 exactly; exp over a wide box still contains exp(center).
    ComplexBox z = around(Rational(0), Rational(0), Rational(1, 8), p);
    ComplexBox e = ComplexBox::exp(z, p);
    CHECK(e.contains_point(Rational(1), Rational(0), p));
}

TEST_CASE("intpoly gcd / squarefree / division") {
    IntPolynomial a{-2, 0, 1};     // x^2 - 2
    IntPolynomial b{2, 3, 1};      // (x+1)(x+2)
    IntPolynomial prod = a * b;
    CHECK(IntPolynomial::gcd(prod, a) == a.normalized());
    CHECK(IntPolynomial::divexact(prod, b) == a);
    IntPolynomial sq = a * a * b;
    CHECK(sq.squarefree_part() == (a * b).normalized());
    auto dec = sq.squarefree_decomposition();
    REQUIRE(dec.size() == 2);
    CHECK(dec[0].first == b.normalized());
    CHECK(dec[0].second == 1);
    CHECK(dec[1].first == a.normalized());
    CHECK(dec[1].second == 2);
}

TEST_CASE("irreducibility: spec examples") {
    CHECK(irreducible_over_Q(IntPolynomial{-2, 0, 1}));       // x^2 - 2
    CHECK_FALSE(irreducible_over_Q(IntPolynomial{-4, 0, 1})); // x^2 - 4
    CHECK(irreducible_over_Q(IntPolynomial{1, 0, 0, 0, 1}));  // x^4 + 1
}

TEST_CASE("irreducibility agrees with the naive Mignotte factor search up to degree 6") {
    Rng rng;
    int checked = 0;
    for (int iter = 0; iter < 200 && (iter < 40 || checked < 20); ++iter) {
        int deg = 2 + static_cast<int>(rng.next() % 4); // 2..5 at random, plus fixed degree-6 cases below
        std::vector<Integer> c;
        for (int i = 0; i < deg; ++i) c.emplace_back(rng.range(-2, 2));
        c.emplace_back(1); // monic
        IntPolynomial f{std::move(c)};
        if (f.valuation() > 0 || f.squarefree_part().degree() != f.degree()) continue;
        bool lib = irreducible_over_Q(f);
        bool naive = !oracles::naive_has_factor(f);
        CHECK_MESSAGE(lib == naive, "disagreement on ", f.str());
        ++checked;
    }
    // degree-6 spot checks
    IntPolynomial sixA{1, 1, 1, 1, 1, 1, 1};           // Phi_7, irreducible
    IntPolynomial sixB = IntPolynomial{-2, 0, 1} * IntPolynomial{1, 0, 0, 1} * IntPolynomial{1, 1};
    CHECK(irreducible_over_Q(sixA) == !oracles::naive_has_factor(sixA));
    IntPolynomial sixBn = sixB.normalized();
    CHECK(irreducible_over_Q(sixBn) == !oracles::naive_has_factor(sixBn));
}

TEST_CASE("factor_over_Z reassembles the input") {
    IntPolynomial f = IntPolynomial{-1, 1} * IntPolynomial{1, 1} * IntPolynomial{-2, 0, 1} *
                      IntPolynomial{-2, 0, 1};
    auto factors = factor_over_Z(f);
    IntPolynomial prod = IntPolynomial::constant(Integer(1));
    int total_deg = 0;
    for (const auto& [g, m] : factors) {
        CHECK(irreducible_over_Q(g));
        for (int i = 0; i < m; ++i) prod = prod * g;
        total_deg += g.degree() * m;
    }
    CHECK(total_deg == f.degree());
    CHECK(prod.normalized() == f.normalized());
}

TEST_CASE("isolate_roots: spec examples") {
    Prec p = 64;
    Real target = Real::pow2(-40, p);

    SUBCASE("x^2 + 1 -> +-i") {
        auto boxes = isolate_roots(IntPolynomial{1, 0, 1}, target);
        REQUIRE(boxes.size() == 2);
        CHECK(boxes[0].contains_point(Rational(0), Rational(-1), p));
        CHECK(boxes[1].contains_point(Rational(0), Rational(1), p));
    }
    SUBCASE("x^2 - x - 1 -> golden ratio pair (quadratic formula oracle)") {
        auto boxes = isolate_roots(IntPolynomial{-1, -1, 1}, target);
        REQUIRE(boxes.size() == 2);
        auto roots = oracles::quadratic_roots(1, -1, -1);
        // boxes sorted by center: -0.618..., 1.618...
        CHECK(std::abs(boxes[0].re().to_double() - std::min(roots[0].real(), roots[1].real())) < 1e-9);
        CHECK(std::abs(boxes[1].re().to_double() - std::max(roots[0].real(), roots[1].real())) < 1e-9);
    }
    SUBCASE("x^3 - 2: modulus 2^(1/3) at angles 0, +-2pi/3 (radical oracle)") {
        auto boxes = isolate_roots(IntPolynomial{-2, 0, 0, 1}, target);
        REQUIRE(boxes.size() == 3);
        double r = std::cbrt(2.0);
        for (const auto& b : boxes) {
            double mod = std::hypot(b.re().to_double(), b.im().to_double());
            CHECK(std::abs(mod - r) < 1e-9);
        }
        int real_roots = 0;
        for (const auto& b : boxes)
            if (b.im().is_zero()) ++real_roots;
        CHECK(real_roots == 1);
    }
}

TEST_CASE("isolate_roots invariants: Vieta and conjugate symmetry") {
    Prec p = 96;
    Real target = Real::pow2(-48, p);
    IntPolynomial f{6, -5, -2, 1}; // (x-1)(x-3)(x+2), roots 1, 3, -2
    auto boxes = isolate_roots(f, target);
    REQUIRE(boxes.size() == 3);
    double sum = 0, prod_re = 1;
    for (const auto& b : boxes) {
        sum += b.re().to_double();
        prod_re *= b.re().to_double();
    }
    CHECK(std::abs(sum - 2.0) < 1e-9);      // e1 = -a2/a3 = 2
    CHECK(std::abs(prod_re + 6.0) < 1e-9);  // e3 = -a0/a3 = -6
    // Conjugate symmetry on a complex quartet.
    IntPolynomial g{1, 0, 1, 0, 1}; // x^4 + x^2 + 1 has complex roots only
    auto gb = isolate_roots(g.squarefree_part(), target);
    for (const auto& b : gb) {
        bool mirrored = false;
        for (const auto& c : gb) {
            if ((Real::add(b.im(), c.im(), p, MPFR_RNDN)).is_zero() && b.re() == c.re()) mirrored = true;
        }
        CHECK(mirrored);
    }
}

TEST_CASE("alg_arith: spec examples") {
    SUBCASE("add(sqrt2, sqrt2) -> minpoly x^2 - 8 (resultant oracle)") {
        auto s = alg_add(sqrt2(), sqrt2());
        CHECK(s.minpoly() == IntPolynomial{-8, 0, 1});
    }
    SUBCASE("mul(alpha, 0) = 0") {
        CHECK(alg_mul(golden(), AlgebraicNumber(Rational(0))).is_zero());
    }
    SUBCASE("div(1, phi) -> minpoly x^2 + x - 1 (reversed-coefficient oracle)") {
        auto r = alg_div(AlgebraicNumber(Rational(1)), golden());
        CHECK(r.minpoly() == IntPolynomial{-1, 1, 1});
        // reversed-coefficient oracle applied independently:
        CHECK(golden().minpoly().reversed().normalized() == IntPolynomial{-1, 1, 1});
    }
    SUBCASE("division by zero") {
        CHECK_THROWS_AS(alg_div(sqrt2(), AlgebraicNumber(Rational(0))), DivisionByZero);
    }
    SUBCASE("degree guard") {
        AlgContext tight;
        tight.degree_cap = 3;
        CHECK_THROWS_AS(alg_mul(sqrt2(), golden(), tight), DegreeGuardExceeded);
    }
}

TEST_CASE("alg_arith respects the designated embedding") {
    Prec p = 96;
    // sqrt2 * sqrt2 = 2 exactly, and the box lands on the interval image.
    auto two = alg_mul(sqrt2(), sqrt2());
    CHECK(two.is_rational());
    CHECK(two.as_rational() == Rational(2));
    // golden + 1/golden = sqrt(5): box must straddle 2.2360
    auto v = alg_add(golden(), alg_inverse(golden()));
    CHECK(v.minpoly() == IntPolynomial{-5, 0, 1});
    CHECK(v.box(32).contains_point(Rational(2236, 1000), Rational(0), p) == false); // tight box
    CHECK(std::abs(v.box(32).re().to_double() - std::sqrt(5.0)) < 1e-6);
}

TEST_CASE("equality is an equivalence relation on sampled values") {
    std::vector<AlgebraicNumber> vals;
    vals.push_back(sqrt2());
    vals.push_back(alg_neg(sqrt2()));
    vals.push_back(golden());
    vals.push_back(alg_sub(golden(), AlgebraicNumber(Rational(0)))); // same as golden
    vals.push_back(AlgebraicNumber(Rational(2)));
    vals.push_back(alg_mul(sqrt2(), sqrt2())); // also 2
    size_t n = vals.size();
    for (size_t i = 0; i < n; ++i) CHECK(vals[i].equals(vals[i]));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) CHECK(vals[i].equals(vals[j]) == vals[j].equals(vals[i]));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                if (vals[i].equals(vals[j]) && vals[j].equals(vals[k])) CHECK(vals[i].equals(vals[k]));
    CHECK(vals[3].equals(vals[2]));
    CHECK(vals[5].equals(vals[4]));
    CHECK_FALSE(vals[0].equals(vals[1]));
}

TEST_CASE("eval_interval: spec examples") {
    Prec p = 96;
    AlgContext ctx;
    SUBCASE("p = xy at exact points") {
        BivariatePolynomial<Rational> f;
        f.set({1, 1}, Rational(1));
        ComplexBox x = ComplexBox::exact(Rational(2), Rational(0), p);
        ComplexBox y = ComplexBox::exact(Rational(3), Rational(0), p);
        ComplexBox v = f.eval_interval(x, y, p, ctx);
        CHECK(v.contains_point(Rational(6), Rational(0), p));
        CHECK(v.rad().to_double() < 1e-20);
    }
    SUBCASE("p = x - y on identical boxes contains 0") {
        BivariatePolynomial<Rational> f;
        f.set({1, 0}, Rational(1));
        f.set({0, 1}, Rational(-1));
        ComplexBox x = around(Rational(7, 5), Rational(0), Rational(1, 100), p);
        ComplexBox v = f.eval_interval(x, x, p, ctx);
        CHECK(v.contains_zero(p));
    }
    SUBCASE("p = x^2 - y near sqrt2: width <= 1e-3 containing 0") {
        BivariatePolynomial<Rational> f;
        f.set({2, 0}, Rational(1));
        f.set({0, 1}, Rational(-1));
        ComplexBox x = around(Rational(14142, 10000), Rational(0), Rational(1, 10000), p);
        ComplexBox y = ComplexBox::exact(Rational(2), Rational(0), p);
        ComplexBox v = f.eval_interval(x, y, p, ctx);
        CHECK(v.contains_zero(p));
        CHECK(v.rad().to_double() <= 1e-3);
    }
}

TEST_CASE("partials_nonzero: spec examples") {
    BivariatePolynomial<Rational> f1;
    f1.set({1, 0}, Rational(1));
    f1.set({0, 1}, Rational(-2));
    CHECK(f1.partials_nonzero() == std::pair<bool, bool>{true, true});

    BivariatePolynomial<Rational> f2;
    f2.set({0, 2}, Rational(1));
    f2.set({0, 0}, Rational(-3));
    CHECK(f2.partials_nonzero() == std::pair<bool, bool>{false, true});

    BivariatePolynomial<Rational> f3;
    f3.set({1, 1}, Rational(1));
    f3.set({1, 0}, Rational(1));
    f3.set({0, 0}, Rational(1));
    CHECK(f3.partials_nonzero() == std::pair<bool, bool>{true, true});
}

TEST_CASE("nth root and roots of unity") {
    auto i4 = root_of_unity(Integer(1), Integer(4));
    CHECK(i4.minpoly() == IntPolynomial{1, 0, 1});
    CHECK(i4.is_root_of_unity());
    CHECK_FALSE(sqrt2().is_root_of_unity());
    // 4th root of 2 designated near 1.189
    Prec p = 96;
    ComplexBox approx = around(Rational(1189, 1000), Rational(0), Rational(1, 50), p);
    auto r = alg_nth_root(AlgebraicNumber(Rational(2)), 4, approx);
    CHECK(r.minpoly() == IntPolynomial{-2, 0, 0, 0, 1});
}

TEST_CASE("refinement never changes the designated root") {
    // Two close roots: f = (x - 1)(x - 1 - 1/64) scaled to integers:
    // 64 x^2 - 129 x + 65... use x^2 - 2 under heavy refinement instead, plus
    // a clustered quadratic.
    Prec p = 96;
    IntPolynomial f{65, -129, 64}; // roots 1 and 65/64
    auto boxes = isolate_roots(f, Real::pow2(-20, p));
    REQUIRE(boxes.size() == 2);
    for (const auto& b : boxes) {
        ComplexBox fine = refine_root_box(f, b, Real::pow2(-80, p));
        CHECK(b.overlaps(fine, p));
        CHECK(fine.rad() <= Real::pow2(-80, p));
        // still inside the coarse box's reach: the designated root is stable
        ComplexBox finer = refine_root_box(f, fine, Real::pow2(-120, p), {256, 4096});
        CHECK(fine.overlaps(finer, p));
    }
    // the two refined boxes stay disjoint (distinct designations)
    ComplexBox r0 = refine_root_box(f, boxes[0], Real::pow2(-80, p));
    ComplexBox r1 = refine_root_box(f, boxes[1], Real::pow2(-80, p));
    CHECK(r0.disjoint(r1, p));
}
