#pragma once

#include "sasolve/polynomial.hpp"

#include <random>
#include <vector>

namespace sasolve::gen {

inline Rational random_rational(std::mt19937_64& rng, int span = 9, int max_den = 1)
{
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> den(1, max_den);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

/// Random polynomial over the first `nvars` symbols of `ord`.
inline Polynomial random_polynomial(std::mt19937_64& rng, const OrderPtr& ord, std::size_t nvars, unsigned max_deg,
                                    unsigned max_terms, int span = 9)
{
    std::uniform_int_distribution<unsigned> deg(0, max_deg);
    std::uniform_int_distribution<unsigned> count(1, max_terms);
    std::vector<Term> terms;
    unsigned n = count(rng);
    for (unsigned i = 0; i < n; ++i) {
        Monomial m(ord->size(), 0);
        for (std::size_t v = 0; v < nvars; ++v) m[v] = deg(rng);
        terms.push_back({m, random_rational(rng, span)});
    }
    return Polynomial::from_terms(ord, std::move(terms));
}

inline Polynomial random_univariate(std::mt19937_64& rng, const OrderPtr& ord, std::size_t var, unsigned degree,
                                    int span)
{
    std::uniform_int_distribution<int> coeff(-span, span);
    std::vector<Term> terms;
    for (unsigned d = 0; d <= degree; ++d) {
        Monomial m(ord->size(), 0);
        m[var] = d;
        int c = coeff(rng);
        if (d == degree && c == 0) c = 1;
        terms.push_back({m, Rational(c)});
    }
    return Polynomial::from_terms(ord, std::move(terms));
}

}  // namespace sasolve::gen
