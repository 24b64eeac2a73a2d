#include "expeq/real.hpp"

#include <cstdlib>
#include <sstream>

namespace expeq {

Rational Real::to_rational() const {
    if (!is_finite()) throw InvalidInput("non-finite real has no rational value");
    if (is_zero()) return {0};
    mpz_t m;
    mpz_init(m);
    mpfr_exp_t e = mpfr_get_z_2exp(m, x_);
    Integer mant;
    mpz_set(mant.raw(), m);
    mpz_clear(m);
    Rational r(mant);
    if (e > 0) {
        r *= Rational(Integer::pow2(static_cast<unsigned long>(e)));
    } else if (e < 0) {
        r /= Rational(Integer::pow2(static_cast<unsigned long>(-e)));
    }
    return r;
}

std::string Real::str_exact() const {
    // Dyadic value => finite decimal expansion; emit it from the exact rational.
    Rational q = to_rational();
    Integer num = Integer::abs(q.num());
    Integer den = q.den();
    std::string sign = q.sign() < 0 ? "-" : "";
    // den = 2^k; multiply num by 5^k so denominator becomes 10^k.
    unsigned long k = 0;
    Integer d = den;
    Integer two(2);
    while (!d.is_one()) {
        d = Integer::divexact(d, two);
        ++k;
    }
    if (k == 0) return sign + num.str();
    Integer scaled = num * Integer::pow(Integer(5), k);
    std::string digits = scaled.str();
    if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
    digits.insert(digits.size() - k, ".");
    // Trim trailing zeros but keep at least one digit after the point.
    auto last = digits.find_last_not_of('0');
    if (digits[last] == '.') ++last;
    digits.erase(last + 1);
    return sign + digits;
}

std::string Real::str_approx(int digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    char* s = nullptr;
    if (mpfr_asprintf(&s, fmt, x_) < 0) return "?";
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

} // namespace expeq
