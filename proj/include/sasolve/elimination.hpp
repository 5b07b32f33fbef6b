#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/upoly.hpp"

#include <vector>

namespace sasolve {

/// (l+m) x (l+m) Sylvester matrix of f (degree m) and g (degree l) in one symbol: l shifted
/// rows of f's coefficients followed by m shifted rows of g's, highest degree first.
struct SylvesterMatrix {
    std::vector<std::vector<Polynomial>> entries;
    unsigned m = 0;
    unsigned l = 0;

    static SylvesterMatrix build(const Polynomial& f, const Polynomial& g, std::size_t x)
    {
        auto ord = Polynomial::common_order(f, g);
        SylvesterMatrix s;
        s.m = f.degree(x);
        s.l = g.degree(x);
        const std::size_t n = s.m + s.l;
        auto fc = f.lifted(ord).coefficients(x);
        auto gc = g.lifted(ord).coefficients(x);
        s.entries.assign(n, std::vector<Polynomial>(n, Polynomial(ord)));
        for (std::size_t r = 0; r < s.l; ++r)
            for (std::size_t j = 0; j <= s.m; ++j) s.entries[r][r + j] = fc[s.m - j];
        for (std::size_t r = 0; r < s.m; ++r)
            for (std::size_t j = 0; j <= s.l; ++j) s.entries[s.l + r][r + j] = gc[s.l - j];
        return s;
    }

    /// Fraction-free (Bareiss) determinant.
    Polynomial determinant() const
    {
        auto a = entries;
        const std::size_t n = a.size();
        if (n == 0) return Polynomial(Rational(1));
        OrderPtr ord = a[0][0].order();
        for (const auto& row : a)
            for (const auto& e : row)
                if (!ord) ord = e.order();
        Polynomial prev(ord, Rational(1));
        bool negate = false;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            if (a[k][k].is_zero()) {
                std::size_t p = k + 1;
                while (p < n && a[p][k].is_zero()) ++p;
                if (p == n) return Polynomial(ord);
                std::swap(a[k], a[p]);
                negate = !negate;
            }
            for (std::size_t i = k + 1; i < n; ++i) {
                for (std::size_t j = k + 1; j < n; ++j) {
                    Polynomial v = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                    a[i][j] = prev.is_constant() ? v.scaled(1 / prev.constant_value()) : exact_divide(v, prev);
                }
                a[i][k] = Polynomial(ord);
            }
            prev = a[k][k];
        }
        Polynomial d = a[n - 1][n - 1].lifted(ord);
        return negate ? -d : d;
    }
};

namespace detail {

// res(A, B) over Q via the Euclidean recurrence.
inline Rational univariate_resultant(UPoly a, UPoly b)
{
    Rational acc = 1;
    for (;;) {
        if (a.is_zero() || b.is_zero()) return 0;
        const long m = a.degree(), n = b.degree();
        if (n == 0) {
            Rational p = 1;
            for (long i = 0; i < m; ++i) p *= b.lc();
            return acc * p;
        }
        if (m == 0) {
            Rational p = 1;
            for (long i = 0; i < n; ++i) p *= a.lc();
            return acc * p;
        }
        UPoly r = a % b;
        if (r.is_zero()) return 0;
        if ((m * n) % 2 == 1) acc = -acc;
        for (long i = 0; i < m - r.degree(); ++i) acc *= b.lc();
        a = std::move(b);
        b = std::move(r);
    }
}

}  // namespace detail

/// Sylvester resultant of f and g with respect to x (determinant of the displayed matrix).
inline Polynomial resultant(const Polynomial& f, const Polynomial& g, std::size_t x)
{
    auto ord = Polynomial::common_order(f, g);
    if (f.is_zero() || g.is_zero()) throw DomainError("resultant of a zero polynomial");
    const unsigned m = f.degree(x), l = g.degree(x);
    if (m == 0 && l == 0) throw DomainError("resultant: both polynomials are constant in the elimination symbol");
    if (l == 0) return g.lifted(ord).pow(m);
    if (m == 0) return f.lifted(ord).pow(l);
    if (detail::univariate_in(f, x) && detail::univariate_in(g, x))
        return Polynomial(ord, detail::univariate_resultant(UPoly::from_polynomial(f, x), UPoly::from_polynomial(g, x)));
    return SylvesterMatrix::build(f, g, x).determinant();
}

/// res(f, df/dx).
inline Polynomial discriminant(const Polynomial& f, std::size_t x)
{
    if (f.degree(x) == 0) throw DomainError("discriminant of a polynomial constant in the symbol");
    return resultant(f, f.derivative(x), x);
}

}  // namespace sasolve
