#pragma once

/* Independent test oracles. Everything here recomputes expected values by a
 * route disjoint from the library path it checks: double-precision closed
 * forms, exhaustive scans, and naive searches.
 */

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "expeq/equation.hpp"
#include "expeq/factor.hpp"

namespace oracles {

using namespace expeq;

// Quadratic formula roots of a x^2 + b x + c (real coefficients).
inline std::vector<std::complex<double>> quadratic_roots(double a, double b, double c) {
    std::complex<double> disc = std::complex<double>(b * b - 4 * a * c, 0);
    std::complex<double> s = std::sqrt(disc);
    return {(-b + s) / (2 * a), (-b - s) / (2 * a)};
}

// Naive factor search: does f have a monic-ish integer factor of degree
// 1 <= d <= deg(f)/2 within the Mignotte coefficient bound? Exponential;
// intended for deg <= 6 and small coefficients only.
bool naive_has_factor(const IntPolynomial& f);

// Double-precision Lambert W_0 and W_{-1} style zeros of e^z = z via Newton
// from a given start.
inline std::complex<double> newton_exp_eq_z(std::complex<double> z0) {
    std::complex<double> z = z0;
    for (int i = 0; i < 80; ++i) {
        std::complex<double> f = std::exp(z) - z;
        std::complex<double> d = std::exp(z) - 1.0;
        z -= f / d;
    }
    return z;
}

// Exact rational height h(p/q) = log max(|p|, q) in double (for comparisons
// with generous tolerance only).
inline double rational_height(const Rational& q) {
    Integer m = Integer::abs(q.num());
    if (q.den() > m) m = q.den();
    return std::log(std::stod(m.str()));
}

// Exhaustive subset-sum degeneracy oracle over exact rationals: terms t_i,
// returns a proper nonempty subset with zero sum if one exists.
inline std::optional<std::vector<int>> subset_zero(const std::vector<Rational>& terms) {
    size_t s = terms.size();
    for (size_t mask = 1; mask + 1 < (size_t{1} << s); ++mask) {
        Rational acc(0);
        for (size_t i = 0; i < s; ++i)
            if (mask & (size_t{1} << i)) acc += terms[i];
        if (acc.is_zero()) {
            std::vector<int> idx;
            for (size_t i = 0; i < s; ++i)
                if (mask & (size_t{1} << i)) idx.push_back(static_cast<int>(i));
            return idx;
        }
    }
    return std::nullopt;
}

// Interval scan of an equation's integer solutions on a window: returns the
// vectors whose value straddles zero at high precision AND verify exactly;
// certified non-solutions are excluded by the interval test.
std::vector<std::vector<Integer>> window_solutions(const ExpPolyEquation& eq, long radius_inf);

} // namespace oracles
