#include "expeq/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "expeq/errors.hpp"

namespace expeq {

namespace {

/* ---- arithmetic in F_p[x], p an odd word-sized prime ---- */

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct Fp {
    u64 p;
    u64 add(u64 a, u64 b) const { return (a + b) % p; }
    u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((u128)a * b % p); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const { return pow(a % p, p - 2); }
};

using Poly = std::vector<u64>; // constant first, no trailing zeros

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly sub(const Fp& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}

Poly mul(const Fp& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    trim(r);
    return r;
}

Poly scalar(const Fp& F, const Poly& a, u64 k) {
    Poly r = a;
    for (auto& v : r) v = F.mul(v, k);
    trim(r);
    return r;
}

void divmod(const Fp& F, const Poly& a, const Poly& b, Poly& q, Poly& r) {
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    u64 binv = F.inv(b.back());
    while (deg(r) >= deg(b)) {
        int k = deg(r) - deg(b);
        u64 c = F.mul(r.back(), binv);
        q[static_cast<size_t>(k)] = F.add(q[static_cast<size_t>(k)], c);
        for (size_t i = 0; i < b.size(); ++i)
            r[static_cast<size_t>(k) + i] = F.sub(r[static_cast<size_t>(k) + i], F.mul(c, b[i]));
        trim(r);
        if (r.empty()) break;
    }
    trim(q);
}

Poly mod(const Fp& F, const Poly& a, const Poly& b) {
    Poly q, r;
    divmod(F, a, b, q, r);
    return r;
}

Poly gcd(const Fp& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) a = scalar(F, a, F.inv(a.back())); // monic
    return a;
}

Poly mulmod(const Fp& F, const Poly& a, const Poly& b, const Poly& m) {
    return mod(F, mul(F, a, b), m);
}

Poly powmod(const Fp& F, Poly base, u64 e, const Poly& m) {
    Poly r{1};
    base = mod(F, base, m);
    while (e) {
        if (e & 1) r = mulmod(F, r, base, m);
        base = mulmod(F, base, base, m);
        e >>= 1;
    }
    return r;
}

Poly derivative(const Fp& F, const Poly& f) {
    Poly r;
    for (size_t i = 1; i < f.size(); ++i) r.push_back(F.mul(f[i], i % F.p));
    trim(r);
    return r;
}

struct Rng { // deterministic: reproducible factorizations
    u64 s = 0x9e3779b97f4a7c15ULL;
    u64 next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

// Equal-degree splitting (Cantor-Zassenhaus); f monic squarefree, all
// irreducible factors of degree d.
void equal_degree(const Fp& F, const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
    if (deg(f) == d) {
        out.push_back(f);
        return;
    }
    for (;;) {
        Poly r(static_cast<size_t>(deg(f)), 0);
        for (auto& v : r) v = rng.next() % F.p;
        trim(r);
        if (deg(r) < 1) continue;
        Poly g = gcd(F, f, r);
        if (deg(g) == 0 || deg(g) == deg(f)) {
            // r^((p^d-1)/2) - 1: split via the norm chain
            // (p^d-1)/2 = (1 + p + ... + p^(d-1)) * (p-1)/2.
            Poly s = mod(F, r, f);
            Poly acc = s;
            for (int i = 1; i < d; ++i) {
                s = powmod(F, s, F.p, f);
                acc = mulmod(F, acc, s, f);
            }
            Poly t = powmod(F, acc, (F.p - 1) / 2, f);
            if (!t.empty())
                t[0] = F.sub(t[0], 1);
            else
                t = Poly{F.p - 1};
            trim(t);
            g = gcd(F, f, t);
            if (deg(g) == 0 || deg(g) == deg(f)) continue;
        }
        Poly q, rr;
        divmod(F, f, g, q, rr);
        equal_degree(F, g, d, rng, out);
        equal_degree(F, q, d, rng, out);
        return;
    }
}

// Distinct-degree then equal-degree factorization of monic squarefree f.
std::vector<Poly> factor_mod_p(const Fp& F, Poly f) {
    std::vector<Poly> out;
    Rng rng;
    Poly x{0, 1};
    Poly xq = mod(F, x, f); // x^(p^d) mod f, running power
    int d = 0;
    while (deg(f) > 0) {
        ++d;
        if (2 * d > deg(f)) {
            out.push_back(f);
            break;
        }
        xq = powmod(F, xq, F.p, f);
        Poly g = gcd(F, f, sub(F, xq, mod(F, x, f)));
        if (deg(g) > 0) {
            equal_degree(F, g, d, rng, out);
            Poly q, r;
            divmod(F, f, g, q, r);
            f = q;
            xq = mod(F, xq, f);
        }
    }
    return out;
}

/* ---- Hensel lifting over Z/p^(2^k) ---- */

Integer mod_sym(const Integer& a, const Integer& m) {
    Integer r = Integer::fdiv_r(a, m);
    Integer half = Integer::fdiv_q(m, Integer(2));
    if (r > half) r -= m;
    return r;
}

IntPolynomial poly_mod(const IntPolynomial& f, const Integer& m) {
    std::vector<Integer> c;
    c.reserve(static_cast<size_t>(f.degree() + 1));
    for (int i = 0; i <= f.degree(); ++i) c.push_back(mod_sym(f.coeff(i), m));
    return IntPolynomial(std::move(c));
}

IntPolynomial mul_mod(const IntPolynomial& a, const IntPolynomial& b, const Integer& m) {
    return poly_mod(a * b, m);
}

Integer invert_mod(const Integer& a, const Integer& m) {
    Integer out;
    mpz_t inv;
    mpz_init(inv);
    if (mpz_invert(inv, a.raw(), m.raw()) == 0) {
        mpz_clear(inv);
        throw InvalidInput("non-invertible element in Hensel lift");
    }
    mpz_set(out.raw(), inv);
    mpz_clear(inv);
    return out;
}

// Division by b with invertible lc mod m: a = q*b + r, deg r < deg b.
void divmod_mod(const IntPolynomial& a, const IntPolynomial& b, const Integer& m,
                IntPolynomial& q, IntPolynomial& r) {
    Integer lcinv = invert_mod(Integer::fdiv_r(b.lead(), m), m);
    std::vector<Integer> rem;
    for (int i = 0; i <= a.degree(); ++i) rem.push_back(a.coeff(i));
    std::vector<Integer> quot;
    if (a.degree() >= b.degree()) quot.assign(static_cast<size_t>(a.degree() - b.degree()) + 1, Integer(0));
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        size_t top = static_cast<size_t>(k + b.degree());
        Integer c = Integer::fdiv_r(rem[top] * lcinv, m);
        if (c.is_zero()) continue;
        quot[static_cast<size_t>(k)] = c;
        for (int i = 0; i <= b.degree(); ++i) {
            size_t idx = static_cast<size_t>(k + i);
            rem[idx] = Integer::fdiv_r(rem[idx] - c * b.coeff(i), m);
        }
    }
    q = poly_mod(IntPolynomial(std::move(quot)), m);
    r = poly_mod(IntPolynomial(std::move(rem)), m);
}

// Quadratic Hensel: lift f = g*h (mod p), s*g + t*h = 1 (mod p), to mod `target`
// (a value of the form p^(2^k)).
void hensel_pair(const IntPolynomial& f, IntPolynomial& g, IntPolynomial& h,
                 IntPolynomial& s, IntPolynomial& t, const Integer& p, const Integer& target) {
    Integer m = p;
    while (m < target) {
        Integer m2 = m * m;
        IntPolynomial e = poly_mod(f - g * h, m2);
        IntPolynomial q, r;
        divmod_mod(mul_mod(s, e, m2), h, m2, q, r);
        IntPolynomial g1 = poly_mod(g + mul_mod(t, e, m2) + mul_mod(q, g, m2), m2);
        IntPolynomial h1 = poly_mod(h + r, m2);
        IntPolynomial b = poly_mod(s * g1 + t * h1 - IntPolynomial{1}, m2);
        IntPolynomial c, d;
        divmod_mod(mul_mod(s, b, m2), h1, m2, c, d);
        s = poly_mod(s - d, m2);
        t = poly_mod(t - mul_mod(t, b, m2) - mul_mod(c, g1, m2), m2);
        g = g1;
        h = h1;
        m = m2;
    }
}

IntPolynomial lift_int(const Poly& a, u64 p) {
    std::vector<Integer> c;
    c.reserve(a.size());
    Integer pz(static_cast<long>(p));
    for (u64 v : a) c.push_back(mod_sym(Integer(static_cast<long>(v)), pz));
    return IntPolynomial(std::move(c));
}

// Lifts all modular factors of f (monic mod p, f = lc * prod mods mod p)
// to factors mod `target`, monic mod target except the lc carried along.
void hensel_tree(const IntPolynomial& f, const std::vector<Poly>& mods, const Fp& F,
                 const Integer& p, const Integer& target, std::vector<IntPolynomial>& out) {
    if (mods.size() == 1) {
        out.push_back(poly_mod(f, target));
        return;
    }
    size_t half = mods.size() / 2;
    Poly gp{1};
    for (size_t i = 0; i < half; ++i) gp = mul(F, gp, mods[i]);
    Poly hp{1};
    for (size_t i = half; i < mods.size(); ++i) hp = mul(F, hp, mods[i]);
    u64 lcf = mpz_fdiv_ui(f.lead().raw(), F.p);
    hp = scalar(F, hp, lcf);

    // Bezout s*gp + t*hp = 1 mod p.
    Poly r0 = gp, r1 = hp, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        Poly q, r;
        divmod(F, r0, r1, q, r);
        Poly s2 = sub(F, s0, mul(F, q, s1));
        Poly t2 = sub(F, t0, mul(F, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    u64 unit_inv = F.inv(r0[0]);
    s0 = scalar(F, s0, unit_inv);
    t0 = scalar(F, t0, unit_inv);

    IntPolynomial g = lift_int(gp, F.p), h = lift_int(hp, F.p);
    IntPolynomial s = lift_int(s0, F.p), t = lift_int(t0, F.p);
    hensel_pair(f, g, h, s, t, p, target);

    std::vector<Poly> left(mods.begin(), mods.begin() + static_cast<long>(half));
    std::vector<Poly> right(mods.begin() + static_cast<long>(half), mods.end());
    hensel_tree(g, left, F, p, target, out);
    hensel_tree(h, right, F, p, target, out);
}

/* ---- Zassenhaus recombination ---- */

bool poly_less(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
        if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
}

std::vector<IntPolynomial> factor_squarefree(const IntPolynomial& input) {
    IntPolynomial f = input.normalized();
    if (f.degree() <= 1) return {f};

    static const u64 primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
                                 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
                                 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191};
    Fp F{3};
    Poly fp;
    bool found = false;
    for (u64 p : primes) {
        if (mpz_fdiv_ui(f.lead().raw(), p) == 0) continue;
        F.p = p;
        fp.clear();
        for (int i = 0; i <= f.degree(); ++i) fp.push_back(mpz_fdiv_ui(f.coeff(i).raw(), p));
        trim(fp);
        if (deg(gcd(F, fp, derivative(F, fp))) == 0) {
            found = true;
            break;
        }
    }
    if (!found) throw PrecisionExhausted("no small prime keeps the polynomial squarefree mod p");

    Poly monic = scalar(F, fp, F.inv(fp.back()));
    std::vector<Poly> mods = factor_mod_p(F, monic);
    std::sort(mods.begin(), mods.end());
    if (mods.size() == 1) return {f};

    Integer p(static_cast<long>(F.p));
    Integer bound = factor_coeff_bound(f, f.degree() - 1) * Integer(2) + Integer(1);
    Integer modulus = p;
    while (modulus < bound) modulus *= modulus;

    std::vector<IntPolynomial> lifted;
    hensel_tree(f, mods, F, p, modulus, lifted);
    // Monicize every lifted factor mod modulus so recombination can scale by
    // lc(rem) uniformly.
    for (auto& g : lifted) {
        Integer lcinv = invert_mod(Integer::fdiv_r(g.lead(), modulus), modulus);
        g = poly_mod(g.mul_scalar(lcinv), modulus);
    }

    std::vector<IntPolynomial> out;
    IntPolynomial rem = f;
    std::vector<size_t> live(lifted.size());
    std::iota(live.begin(), live.end(), 0);

    auto try_card = [&](size_t card) -> bool {
        std::vector<size_t> idx(card);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            IntPolynomial cand = IntPolynomial::constant(rem.lead());
            for (size_t j : idx) cand = poly_mod(cand * lifted[live[j]], modulus);
            cand = cand.primitive_part();
            IntPolynomial q;
            if (cand.degree() >= 1 && IntPolynomial::try_divide(rem, cand, q)) {
                out.push_back(cand.normalized());
                rem = q;
                std::vector<size_t> nl;
                for (size_t i = 0; i < live.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) nl.push_back(live[i]);
                live = std::move(nl);
                return true;
            }
            size_t i = card;
            bool advanced = false;
            while (i > 0) {
                --i;
                if (idx[i] != i + live.size() - card) {
                    ++idx[i];
                    for (size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) return false;
        }
    };

    size_t card = 1;
    while (!live.empty() && 2 * card <= live.size()) {
        if (!try_card(card)) ++card;
    }
    if (rem.degree() >= 1) out.push_back(rem.normalized());
    std::sort(out.begin(), out.end(), poly_less);
    return out;
}

} // namespace

std::vector<std::pair<IntPolynomial, int>> factor_over_Z(const IntPolynomial& f) {
    if (f.is_zero()) throw InvalidInput("factor of zero polynomial");
    std::vector<std::pair<IntPolynomial, int>> out;
    int v = f.valuation();
    IntPolynomial g = f.shift_down(v);
    if (v > 0) out.emplace_back(IntPolynomial::x_power(1), v);
    for (const auto& [sqf, mult] : g.squarefree_decomposition()) {
        for (const auto& irr : factor_squarefree(sqf)) {
            if (irr.degree() >= 1) out.emplace_back(irr, mult);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    return out;
}

bool irreducible_over_Q(const IntPolynomial& poly) {
    if (poly.is_zero()) throw InvalidInput("irreducibility of zero polynomial");
    if (poly.degree() < 1) return false;
    if (poly.degree() == 1) return true;
    IntPolynomial f = poly.normalized();
    if (f.valuation() > 0) return false;
    if (f.squarefree_part().degree() != f.degree()) return false;
    auto factors = factor_over_Z(f);
    return factors.size() == 1 && factors[0].second == 1 && factors[0].first.degree() == f.degree();
}

} // namespace expeq
