#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"

#include "expeq/height.hpp"

using namespace expeq;

namespace {

ComplexBox around(const Rational& re, const Rational& rad, Prec p = 64) {
    return widen(ComplexBox::exact(re, Rational(0), p), Real::from_rational(rad, p, MPFR_RNDU), p);
}

AlgebraicNumber golden() {
    return {IntPolynomial{-1, -1, 1}, around(Rational(162, 100), Rational(1, 10))};
}

struct Rng {
    unsigned long long s = 0x123456789abcdefULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rational rational(long maxabs) {
        long num = range(-maxabs, maxabs);
        if (num == 0) num = 1;
        long den = range(1, maxabs);
        return {num, den};
    }
};

// Random real quadratic irrational a + b sqrt(d): minpoly (x-a)^2 - b^2 d.
AlgebraicNumber quad_irrational(Rng& rng) {
    long d_choices[] = {2, 3, 5, 7};
    long d = d_choices[rng.next() % 4];
    Rational a = rng.rational(5);
    Rational b = rng.rational(5);
    Rational c0 = a * a - b * b * Rational(d);
    Rational c1 = Rational(-2) * a;
    Integer lcm = Integer::lcm(c0.den(), c1.den());
    std::vector<Integer> coeffs{Integer::divexact(c0.num() * lcm, c0.den()),
                                Integer::divexact(c1.num() * lcm, c1.den()), lcm};
    IntPolynomial mp{std::move(coeffs)};
    if (!irreducible_over_Q(mp)) return AlgebraicNumber(a); // b sqrt(d) rational: fall back
    double approx = std::stod(a.num().str()) / std::stod(a.den().str()) +
                    std::stod(b.num().str()) / std::stod(b.den().str()) * std::sqrt(double(d));
    long scaled = static_cast<long>(approx * 4096.0);
    return {mp, around(Rational(scaled, 4096), Rational(1, 1024), 96), PrecisionContext{96, 4096}};
}

bool overlaps(const RealInterval& a, const RealInterval& b) {
    return !(a.hi() < b.lo() || b.hi() < a.lo());
}

} // namespace

TEST_CASE("weil height: spec examples") {
    PrecisionContext pc;
    SUBCASE("h(2) = log 2 (integer unit fact)") {
        HeightValue h = weil_height(AlgebraicNumber(Rational(2)), pc);
        CHECK(h.lower().to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(h.upper().to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    }
    SUBCASE("h(1) = 0") {
        HeightValue h = weil_height(AlgebraicNumber(Rational(1)), pc);
        CHECK(h.lower().is_zero());
        CHECK(h.upper().is_zero());
    }
    SUBCASE("h(1/3) = log 3 (rational formula oracle)") {
        HeightValue h = weil_height(AlgebraicNumber(Rational(1, 3)), pc);
        CHECK(h.upper().to_double() == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    }
    SUBCASE("h(phi) = log(1.618...) / 2 (Mahler route oracle)") {
        HeightValue h = weil_height(golden(), pc);
        double phi = (1 + std::sqrt(5.0)) / 2;
        CHECK(h.upper().to_double() == doctest::Approx(std::log(phi) / 2).epsilon(1e-10));
    }
    SUBCASE("h(0) rejected") {
        CHECK_THROWS_AS(weil_height(AlgebraicNumber(Rational(0)), pc), InvalidInput);
    }
}

TEST_CASE("mahler measure: spec examples") {
    PrecisionContext pc;
    SUBCASE("M(x - 2) = 2") {
        HeightValue m = mahler_measure(IntPolynomial{-2, 1}, pc);
        CHECK(m.lower().to_double() == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("M(x^2 - x - 1) = golden ratio (numeric-root oracle)") {
        HeightValue m = mahler_measure(IntPolynomial{-1, -1, 1}, pc);
        auto roots = oracles::quadratic_roots(1, -1, -1);
        double expect = 1.0;
        for (auto r : roots) expect *= std::max(1.0, std::abs(r));
        CHECK(m.upper().to_double() == doctest::Approx(expect).epsilon(1e-9));
        CHECK(m.upper().to_double() == doctest::Approx(1.618034).epsilon(1e-6));
    }
    SUBCASE("M(Lehmer) = 1.176281... (numeric-root oracle)") {
        IntPolynomial lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
        HeightValue m = mahler_measure(lehmer, pc);
        CHECK(m.lower().to_double() == doctest::Approx(1.17628081825992).epsilon(1e-10));
        CHECK((m.upper().to_double() - m.lower().to_double()) < 1e-12);
    }
    SUBCASE("multiplicity: M(f^2) = M(f)^2") {
        IntPolynomial f{-2, 1};
        HeightValue m = mahler_measure(f * f, pc);
        CHECK(m.upper().to_double() == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("height inequality property suite (200 random values, interval-certified)") {
    PrecisionContext pc;
    Rng rng;
    double log2 = std::log(2.0);
    int done = 0;
    for (int iter = 0; done < 200 && iter < 400; ++iter) {
        AlgebraicNumber a, b;
        if (iter % 5 == 0) {
            a = quad_irrational(rng);
            b = AlgebraicNumber(rng.rational(20));
        } else {
            a = AlgebraicNumber(rng.rational(50));
            b = AlgebraicNumber(rng.rational(50));
        }
        if (a.is_zero() || b.is_zero()) continue;
        AlgContext ctx;
        HeightValue ha = weil_height(a, pc), hb = weil_height(b, pc);

        HeightValue hab = weil_height(alg_mul(a, b, ctx), pc);
        CHECK(hab.lower().to_double() <= ha.upper().to_double() + hb.upper().to_double() + 1e-12);

        AlgebraicNumber s = alg_add(a, b, ctx);
        if (!s.is_zero()) {
            HeightValue hs = weil_height(s, pc);
            CHECK(hs.lower().to_double() <=
                  ha.upper().to_double() + hb.upper().to_double() + log2 + 1e-12);
        }
        long k = 2 + (iter % 2);
        HeightValue hp = weil_height(alg_pow(a, k, ctx), pc);
        RealInterval scaled = RealInterval::mul_scalar(ha.value, Rational(k), pc.bits);
        CHECK(overlaps(hp.value, scaled));

        HeightValue hi = weil_height(alg_inverse(a), pc);
        CHECK(overlaps(hi.value, ha.value));
        ++done;
    }
    CHECK(done == 200);
}

TEST_CASE("h = 0 iff root of unity (desk-scale Kronecker)") {
    PrecisionContext pc;
    std::vector<AlgebraicNumber> torsion;
    torsion.emplace_back(Rational(1));
    torsion.emplace_back(Rational(-1));
    torsion.push_back(root_of_unity(Integer(1), Integer(4)));
    torsion.push_back(root_of_unity(Integer(3), Integer(4)));
    torsion.push_back(root_of_unity(Integer(1), Integer(3)));
    torsion.push_back(root_of_unity(Integer(2), Integer(3)));
    for (const auto& t : torsion) {
        HeightValue h = weil_height(t, pc);
        CHECK(h.upper().to_double() <= 1e-25);
        CHECK(t.is_root_of_unity());
    }
    std::vector<AlgebraicNumber> loose;
    loose.emplace_back(Rational(2));
    loose.emplace_back(Rational(-5, 3));
    loose.push_back(golden());
    for (const auto& v : loose) {
        HeightValue h = weil_height(v, pc);
        CHECK(h.lower().to_double() > 0.1);
        CHECK_FALSE(v.is_root_of_unity());
    }
}

TEST_CASE("rational fast path agrees with the Mahler route (500 samples)") {
    PrecisionContext pc;
    Rng rng;
    for (int i = 0; i < 500; ++i) {
        Rational q = rng.rational(200);
        HeightValue fast = weil_height(AlgebraicNumber(q), pc);
        IntPolynomial mp{std::vector<Integer>{-q.num(), q.den()}};
        HeightValue mm = mahler_measure(mp, pc);
        double viamahler = std::log(mm.upper().to_double());
        if (viamahler < 0) viamahler = 0;
        CHECK(std::abs(viamahler - fast.upper().to_double()) < 1e-10);
    }
}

TEST_CASE("a1: spec examples and exhaustive soundness") {
    PrecisionContext pc;
    SUBCASE("c = (1): (A, C) = (1, 0) up to rounding; |m| <= 100 exhaustive") {
        AffineBound b = a1_constant({AlgebraicNumber(Rational(1))}, pc);
        CHECK(b.slope.to_double() == doctest::Approx(1.0));
        CHECK(b.offset.to_double() <= 1e-20);
        for (long m = 1; m <= 100; ++m) {
            double h = std::log(double(m));
            CHECK(h <= b.slope.to_double() * std::log(double(m)) + b.offset.to_double() + 1e-12);
        }
    }
    SUBCASE("c = (1, 2): (A, C) = (2, 2 log 2); all m with |m|_1 <= 20") {
        std::vector<AlgebraicNumber> c{AlgebraicNumber(Rational(1)), AlgebraicNumber(Rational(2))};
        AffineBound b = a1_constant(c, pc);
        CHECK(b.slope.to_double() == doctest::Approx(2.0));
        CHECK(b.offset.to_double() == doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));
        for (long m1 = -20; m1 <= 20; ++m1)
            for (long m2 = -20; m2 <= 20; ++m2) {
                long norm = std::labs(m1) + std::labs(m2);
                if (norm == 0 || norm > 20) continue;
                Rational v = Rational(m1) + Rational(m2) * Rational(2);
                if (v.is_zero()) continue;
                double h = oracles::rational_height(v);
                CHECK(h <= b.slope.to_double() * std::log(double(norm)) + b.offset.to_double() + 1e-9);
            }
    }
    SUBCASE("unit vectors force C >= max h(c_i)") {
        std::vector<AlgebraicNumber> c{AlgebraicNumber(Rational(3)), AlgebraicNumber(Rational(5))};
        AffineBound b = a1_constant(c, pc);
        CHECK(b.offset.to_double() >= std::log(5.0) - 1e-12);
    }
}

TEST_CASE("a2: spec examples and exhaustive soundness") {
    PrecisionContext pc;
    SUBCASE("gamma = (2): a2 = log 2, met with equality") {
        AffineBound b = a2_constant({AlgebraicNumber(Rational(2))}, pc);
        CHECK(b.slope.to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        for (long m = 1; m <= 20; ++m) {
            double h = oracles::rational_height(Rational::pow(Rational(2), m));
            CHECK(h == doctest::Approx(b.slope.to_double() * m).epsilon(1e-9));
        }
    }
    SUBCASE("gamma = (1): a2 = 0") {
        AffineBound b = a2_constant({AlgebraicNumber(Rational(1))}, pc);
        CHECK(b.slope.is_zero());
    }
    SUBCASE("gamma = (2, 3): a2 = log 3; h(8/9) = 2 log 3 <= 5 log 3; |m|_1 <= 20") {
        std::vector<AlgebraicNumber> g{AlgebraicNumber(Rational(2)), AlgebraicNumber(Rational(3))};
        AffineBound b = a2_constant(g, pc);
        CHECK(b.slope.to_double() == doctest::Approx(std::log(3.0)).epsilon(1e-12));
        CHECK(oracles::rational_height(Rational(8, 9)) <= 5 * b.slope.to_double() + 1e-12);
        for (long m1 = -10; m1 <= 10; ++m1)
            for (long m2 = -10; m2 <= 10; ++m2) {
                long norm = std::labs(m1) + std::labs(m2);
                if (norm == 0) continue;
                Rational v = Rational::pow(Rational(2), m1) * Rational::pow(Rational(3), m2);
                CHECK(oracles::rational_height(v) <= b.slope.to_double() * norm + 1e-9);
            }
    }
}

TEST_CASE("a4: spec examples and sampled soundness") {
    PrecisionContext pc;
    SUBCASE("f = x - 2y, x_from_y: (A, C) = (1, log 2), equality at beta = 3") {
        BivariatePolynomial<AlgebraicNumber> f;
        f.set({1, 0}, AlgebraicNumber(Rational(1)));
        f.set({0, 1}, AlgebraicNumber(Rational(-2)));
        AffineBound b = a4_bound(f, A4Direction::x_from_y, pc);
        CHECK(b.slope.to_double() == doctest::Approx(1.0));
        CHECK(b.offset.to_double() == doctest::Approx(std::log(2.0)).epsilon(1e-10));
        double h6 = oracles::rational_height(Rational(6));
        double h3 = oracles::rational_height(Rational(3));
        CHECK(h6 == doctest::Approx(h3 + std::log(2.0)).epsilon(1e-12)); // equality at beta = 3
    }
    SUBCASE("f = x^2 - y, x_from_y: alpha = sqrt(beta) for beta in {2,3,5,7}") {
        BivariatePolynomial<AlgebraicNumber> f;
        f.set({2, 0}, AlgebraicNumber(Rational(1)));
        f.set({0, 1}, AlgebraicNumber(Rational(-1)));
        AffineBound b = a4_bound(f, A4Direction::x_from_y, pc);
        CHECK(b.slope.to_double() == doctest::Approx(1.0));
        for (long beta : {2L, 3L, 5L, 7L}) {
            double halpha = std::log(double(beta)) / 2; // h(sqrt(beta)) by the power identity
            CHECK(halpha <= b.slope.to_double() * std::log(double(beta)) + b.offset.to_double() + 1e-12);
        }
    }
    SUBCASE("f = x^2 - y, y_from_x: A >= 2 (h(beta) = 2 h(alpha))") {
        BivariatePolynomial<AlgebraicNumber> f;
        f.set({2, 0}, AlgebraicNumber(Rational(1)));
        f.set({0, 1}, AlgebraicNumber(Rational(-1)));
        AffineBound b = a4_bound(f, A4Direction::y_from_x, pc);
        CHECK(b.slope.to_double() >= 2.0 - 1e-12);
        for (long alpha : {2L, 3L, 7L}) {
            double hb = oracles::rational_height(Rational(alpha * alpha));
            CHECK(hb <= b.slope.to_double() * std::log(double(alpha)) + b.offset.to_double() + 1e-12);
        }
    }
    SUBCASE("degenerate direction rejected") {
        BivariatePolynomial<AlgebraicNumber> f;
        f.set({0, 2}, AlgebraicNumber(Rational(1)));
        f.set({0, 0}, AlgebraicNumber(Rational(-3)));
        CHECK_THROWS_AS(a4_bound(f, A4Direction::x_from_y, pc), DirectionDegenerate);
    }
    SUBCASE("soundness on integer curve points of f = x^2 - y") {
        BivariatePolynomial<AlgebraicNumber> f;
        f.set({2, 0}, AlgebraicNumber(Rational(1)));
        f.set({0, 1}, AlgebraicNumber(Rational(-1)));
        AffineBound b = a4_bound(f, A4Direction::x_from_y, pc);
        for (long a = 2; a <= 20; ++a) {
            double halpha = oracles::rational_height(Rational(a));
            double hbeta = oracles::rational_height(Rational(a * a));
            CHECK(halpha <= b.slope.to_double() * hbeta + b.offset.to_double() + 1e-12);
        }
    }
}
