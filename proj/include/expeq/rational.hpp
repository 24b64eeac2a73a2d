#pragma once

/* Arbitrary-precision integers and rationals, thin RAII wrappers over GMP.
 * Rational keeps the canonical invariant gcd(|num|, den) = 1, den >= 1
 * (mpq_canonicalize after every mutating operation that could break it).
 */

#include <gmp.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "expeq/errors.hpp"

namespace expeq {

class Integer {
public:
    Integer() { mpz_init(z_); }
    Integer(long v) { mpz_init_set_si(z_, v); } // NOLINT(google-explicit-constructor)
    Integer(int v) : Integer(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    explicit Integer(const std::string& s) {
        if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw InvalidInput("not an integer literal: " + s);
        }
    }
    Integer(const Integer& o) { mpz_init_set(z_, o.z_); }
    Integer(Integer&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Integer& operator=(const Integer& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Integer& operator=(Integer&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Integer() { mpz_clear(z_); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }
    int sign() const { return mpz_sgn(z_); }
    bool fits_long() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const { return mpz_get_si(z_); }
    size_t bit_length() const { return mpz_sizeinbase(z_, 2); }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    friend Integer operator+(const Integer& a, const Integer& b) {
        Integer r;
        mpz_add(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator-(const Integer& a, const Integer& b) {
        Integer r;
        mpz_sub(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator*(const Integer& a, const Integer& b) {
        Integer r;
        mpz_mul(r.z_, a.z_, b.z_);
        return r;
    }
    friend Integer operator-(const Integer& a) {
        Integer r;
        mpz_neg(r.z_, a.z_);
        return r;
    }
    Integer& operator+=(const Integer& o) {
        mpz_add(z_, z_, o.z_);
        return *this;
    }
    Integer& operator-=(const Integer& o) {
        mpz_sub(z_, z_, o.z_);
        return *this;
    }
    Integer& operator*=(const Integer& o) {
        mpz_mul(z_, z_, o.z_);
        return *this;
    }

    friend bool operator==(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
    friend bool operator<(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Integer& a, const Integer& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    static Integer gcd(const Integer& a, const Integer& b) {
        Integer r;
        mpz_gcd(r.z_, a.z_, b.z_);
        return r;
    }
    static Integer lcm(const Integer& a, const Integer& b) {
        Integer r;
        mpz_lcm(r.z_, a.z_, b.z_);
        return r;
    }
    static Integer abs(const Integer& a) {
        Integer r;
        mpz_abs(r.z_, a.z_);
        return r;
    }
    static Integer pow(const Integer& a, unsigned long e) {
        Integer r;
        mpz_pow_ui(r.z_, a.z_, e);
        return r;
    }
    static Integer pow2(unsigned long e) {
        Integer r;
        mpz_ui_pow_ui(r.z_, 2, e);
        return r;
    }
    // Exact division; caller guarantees divisibility.
    static Integer divexact(const Integer& a, const Integer& b) {
        Integer r;
        mpz_divexact(r.z_, a.z_, b.z_);
        return r;
    }
    static bool divides(const Integer& d, const Integer& a) {
        return mpz_divisible_p(a.z_, d.z_) != 0;
    }
    // Floor division / remainder.
    static Integer fdiv_q(const Integer& a, const Integer& b) {
        Integer r;
        mpz_fdiv_q(r.z_, a.z_, b.z_);
        return r;
    }
    static Integer fdiv_r(const Integer& a, const Integer& b) {
        Integer r;
        mpz_fdiv_r(r.z_, a.z_, b.z_);
        return r;
    }
    static Integer sqrt_ceil(const Integer& a) {
        Integer r, rem;
        mpz_sqrtrem(r.z_, rem.z_, a.z_);
        if (!rem.is_zero()) mpz_add_ui(r.z_, r.z_, 1);
        return r;
    }
    static Integer binomial(unsigned long n, unsigned long k) {
        Integer r;
        mpz_bin_uiui(r.z_, n, k);
        return r;
    }

private:
    mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long v) { // NOLINT(google-explicit-constructor)
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rational(int v) : Rational(static_cast<long>(v)) {} // NOLINT(google-explicit-constructor)
    Rational(const Integer& num) { // NOLINT(google-explicit-constructor)
        mpq_init(q_);
        mpq_set_z(q_, num.raw());
    }
    Rational(const Integer& num, const Integer& den) {
        if (den.is_zero()) throw DivisionByZero("rational with zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    // Parses "p/q", an integer literal, or a decimal literal like "-1.25".
    static Rational parse(const std::string& s);

    mpq_srcptr raw() const { return q_; }

    Integer num() const {
        Integer r;
        mpz_set(r.raw(), mpq_numref(q_));
        return r;
    }
    Integer den() const {
        Integer r;
        mpz_set(r.raw(), mpq_denref(q_));
        return r;
    }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_ui(q_, 1, 1) == 0; }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    int sign() const { return mpq_sgn(q_); }

    std::string str() const {
        if (is_integer()) return num().str();
        return num().str() + "/" + den().str();
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        Rational r;
        mpq_add(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        Rational r;
        mpq_sub(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        Rational r;
        mpq_mul(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw DivisionByZero("rational division by zero");
        Rational r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rational operator-(const Rational& a) {
        Rational r;
        mpq_neg(r.q_, a.q_);
        return r;
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    static Rational abs(const Rational& a) {
        Rational r;
        mpq_abs(r.q_, a.q_);
        return r;
    }
    static Rational inverse(const Rational& a) {
        if (a.is_zero()) throw DivisionByZero("inverse of zero");
        Rational r;
        mpq_inv(r.q_, a.q_);
        return r;
    }
    static Rational pow(const Rational& a, long e);

private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

} // namespace expeq
