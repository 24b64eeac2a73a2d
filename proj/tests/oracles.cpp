#include "oracles.hpp"

#include "expeq/finite.hpp"

namespace oracles {

using namespace expeq;

namespace {

// Monic candidates only: positions 0..deg-1 range over [-bound, bound], the
// leading coefficient is fixed to 1.
bool search_monic_factors(const IntPolynomial& f, std::vector<Integer>& coeffs, size_t pos,
                          const Integer& bound) {
    if (pos + 1 == coeffs.size()) {
        IntPolynomial g{std::vector<Integer>(coeffs)};
        IntPolynomial q;
        return IntPolynomial::try_divide(f, g, q);
    }
    for (Integer c = -bound; c <= bound; c += Integer(1)) {
        coeffs[pos] = c;
        if (search_monic_factors(f, coeffs, pos + 1, bound)) return true;
    }
    return false;
}

} // namespace

bool naive_has_factor(const IntPolynomial& f) {
    // Complete for monic f: any factorization can be normalized to monic
    // factors, whose coefficients obey the Mignotte bound.
    if (!f.lead().is_one()) throw InvalidInput("naive factor oracle expects monic input");
    int n = f.degree();
    for (int d = 1; 2 * d <= n; ++d) {
        Integer bound = factor_coeff_bound(f, d);
        std::vector<Integer> coeffs(static_cast<size_t>(d) + 1, Integer(0));
        coeffs.back() = Integer(1);
        if (search_monic_factors(f, coeffs, 0, bound)) return true;
    }
    return false;
}

std::vector<std::vector<Integer>> window_solutions(const ExpPolyEquation& eq, long radius_inf) {
    std::vector<std::vector<Integer>> out;
    size_t dim = eq.basis.size();
    std::vector<long> n(dim, -radius_inf);
    AlgContext ctx;
    PrecisionContext policy;
    for (;;) {
        std::vector<Integer> nz;
        nz.reserve(dim);
        for (long v : n) nz.emplace_back(v);
        CandidateResult res = test_candidate(eq, nz, policy, ctx);
        if (res.status == CandidateStatus::exactly_verified) out.push_back(nz);
        size_t i = 0;
        while (i < dim && n[i] == radius_inf) {
            n[i] = -radius_inf;
            ++i;
        }
        if (i == dim) break;
        ++n[i];
    }
    return out;
}

} // namespace oracles
