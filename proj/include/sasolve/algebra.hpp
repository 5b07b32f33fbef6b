#pragma once

// Division, gcd and squarefree machinery over Q[symbols], always in the univariate view of
// one chosen symbol with coefficients in the remaining ones.

#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/upoly.hpp"

#include <utility>
#include <vector>

namespace sasolve {

struct PseudoDivision {
    Polynomial quotient;
    Polynomial remainder;
    unsigned multiplier_power = 0;
};

namespace detail {

inline std::vector<Polynomial> dense_coeffs(const Polynomial& p, std::size_t var, const OrderPtr& ord)
{
    if (p.is_zero()) return {};
    return p.lifted(ord).coefficients(var);
}

inline void trim(std::vector<Polynomial>& c)
{
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

// Multiply a polynomial by a single term; order is preserved so no re-sort is required.
inline Polynomial mul_term(const Polynomial& p, const Term& t, const OrderPtr& ord)
{
    std::vector<Term> out;
    out.reserve(p.size());
    for (const auto& s : p.terms()) {
        Term n{s.exp, s.coeff * t.coeff};
        for (std::size_t i = 0; i < n.exp.size(); ++i) n.exp[i] += t.exp[i];
        out.push_back(std::move(n));
    }
    return Polynomial::from_terms(ord, std::move(out));
}

inline bool univariate_in(const Polynomial& p, std::size_t var)
{
    for (const auto& t : p.terms())
        for (std::size_t i = 0; i < t.exp.size(); ++i)
            if (i != var && t.exp[i]) return false;
    return true;
}

}  // namespace detail

/// Sparse pseudo-division: init(g)^k * f = q * g + r with deg_x r < deg_x g, where k counts
/// only the reduction steps actually performed.
inline PseudoDivision pseudo_divide(const Polynomial& f, const Polynomial& g, std::size_t x, bool want_quotient = true)
{
    auto ord = Polynomial::common_order(f, g);
    if (g.is_zero()) throw DomainError("pseudo-division by the zero polynomial");
    const auto m = g.degree(x);
    if (m == 0) throw DomainError("pseudo-division by a polynomial constant in the main symbol");
    auto gc = detail::dense_coeffs(g, x, ord);
    auto rc = detail::dense_coeffs(f, x, ord);
    const Polynomial& lcg = gc.back();
    const bool unit = lcg.is_constant();
    std::vector<Polynomial> qc;
    if (want_quotient && rc.size() >= gc.size()) qc.assign(rc.size() - gc.size() + 1, Polynomial(ord));
    unsigned k = 0;
    while (!rc.empty() && rc.size() > m) {
        const std::size_t shift = rc.size() - 1 - m;
        Polynomial t = rc.back();
        if (unit) {
            // Monic-up-to-constant divisor: divide instead of multiplying, keeping k = 0.
            Polynomial tq = t.scaled(1 / lcg.constant_value());
            if (want_quotient) qc[shift] += tq;
            for (std::size_t i = 0; i < gc.size(); ++i) rc[i + shift] -= tq * gc[i];
        } else {
            if (want_quotient) {
                for (auto& c : qc) c *= lcg;
                qc[shift] += t;
            }
            for (std::size_t i = 0; i + 1 < rc.size(); ++i) rc[i] *= lcg;
            for (std::size_t i = 0; i < gc.size(); ++i) {
                if (i + shift == rc.size() - 1) continue;
                rc[i + shift] -= t * gc[i];
            }
            ++k;
        }
        rc.back() = Polynomial(ord);
        detail::trim(rc);
    }
    PseudoDivision out;
    out.remainder = Polynomial::from_coefficients(ord, x, rc);
    out.quotient = want_quotient ? Polynomial::from_coefficients(ord, x, qc) : Polynomial(ord);
    out.multiplier_power = k;
    if (unit) {
        // With a constant initial the identity is exact division; report k = 0 and keep it exact.
        out.multiplier_power = 0;
    }
    return out;
}

inline Polynomial prem(const Polynomial& f, const Polynomial& g, std::size_t x)
{
    if (f.degree(x) < g.degree(x)) return f.lifted(Polynomial::common_order(f, g));
    return pseudo_divide(f, g, x, false).remainder;
}

/// Classical pseudo-remainder with multiplier init(g)^(deg f - deg g + 1) (subresultant PRS needs it).
inline Polynomial prem_classical(const Polynomial& f, const Polynomial& g, std::size_t x)
{
    auto df = f.degree(x), dg = g.degree(x);
    if (df < dg) return f;
    auto pd = pseudo_divide(f, g, x, false);
    Polynomial lcg = g.leading_coefficient(x);
    unsigned target = df - dg + 1;
    if (lcg.is_constant()) return pd.remainder * lcg.pow(target);
    return pd.remainder * lcg.pow(target - pd.multiplier_power);
}

inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

/// Remainder of f modulo g in x, made sign-safe: the multiplier is an even power of init(g),
/// so at any point where init(g) != 0 the remainder has the sign of f on Zero(g).
inline Polynomial prem_sign_safe(const Polynomial& f, const Polynomial& g, std::size_t x)
{
    if (f.degree(x) < g.degree(x)) return f;
    auto pd = pseudo_divide(f, g, x, false);
    if (pd.multiplier_power % 2 == 1) return pd.remainder * g.leading_coefficient(x);
    return pd.remainder;
}

/// Exact quotient a / b; throws DomainError when b does not divide a.
inline Polynomial exact_divide(const Polynomial& a, const Polynomial& b)
{
    auto ord = Polynomial::common_order(a, b);
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (b.is_constant()) return a.lifted(ord).scaled(1 / b.constant_value());
    Polynomial r = a.lifted(ord);
    const Term& lb = b.terms().front();
    std::vector<Term> q;
    while (!r.is_zero()) {
        const Term& lr = r.terms().front();
        Term t{Monomial(lr.exp.size()), lr.coeff / lb.coeff};
        for (std::size_t i = 0; i < t.exp.size(); ++i) {
            if (lr.exp[i] < lb.exp[i]) throw DomainError("inexact polynomial division");
            t.exp[i] = lr.exp[i] - lb.exp[i];
        }
        r -= detail::mul_term(b, t, ord);
        q.push_back(std::move(t));
    }
    return Polynomial::from_terms(ord, std::move(q));
}

inline bool divides(const Polynomial& b, const Polynomial& a)
{
    try {
        exact_divide(a, b);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p viewed in x (normalized, 1 when trivial).
inline Polynomial content(const Polynomial& p, std::size_t x)
{
    auto ord = p.order();
    auto cs = p.coefficients(x);
    Polynomial g(ord);
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        if (c.is_constant()) return Polynomial(ord, Rational(1));
        g = g.is_zero() ? c.primitive() : gcd(g, c);
        if (g.is_constant()) return Polynomial(ord, Rational(1));
    }
    return g;
}

inline Polynomial primitive_part(const Polynomial& p, std::size_t x)
{
    if (p.is_zero()) return p;
    return exact_divide(p, content(p, x)).primitive();
}

namespace detail {

// Subresultant PRS on primitive inputs in x, deg a >= deg b >= 1. Returns the last nonzero
// element (a multiple of the gcd) or a constant when the inputs are coprime.
inline Polynomial subresultant_last(Polynomial a, Polynomial b, std::size_t x)
{
    auto ord = Polynomial::common_order(a, b);
    Polynomial g(ord, Rational(1)), h(ord, Rational(1));
    for (;;) {
        const unsigned delta = a.degree(x) - b.degree(x);
        Polynomial r = prem_classical(a, b, x);
        if (r.is_zero()) return b;
        if (r.degree(x) == 0) return Polynomial(ord, Rational(1));
        a = b;
        b = exact_divide(r, g * h.pow(delta));
        g = a.leading_coefficient(x);
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_divide(g.pow(delta), h.pow(delta - 1));
        }
        // Keep rational content from accumulating; the PRS only needs b up to units of Q.
        b = b.primitive();
    }
}

}  // namespace detail

/// Normalized gcd over Q (integer primitive, positive leading coefficient; 1 if coprime).
inline Polynomial gcd(const Polynomial& a0, const Polynomial& b0)
{
    auto ord = Polynomial::common_order(a0, b0);
    Polynomial a = a0.lifted(ord), b = b0.lifted(ord);
    if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero polynomials");
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return Polynomial(ord, Rational(1));
    const std::size_t v = std::max(*a.leading_variable(), *b.leading_variable());
    if (detail::univariate_in(a, v) && detail::univariate_in(b, v)) {
        auto g = UPoly::gcd(UPoly::from_polynomial(a, v), UPoly::from_polynomial(b, v));
        return g.to_polynomial(ord, v).primitive();
    }
    if (a.degree(v) == 0) return gcd(a, content(b, v));
    if (b.degree(v) == 0) return gcd(content(a, v), b);
    Polynomial ca = content(a, v), cb = content(b, v);
    Polynomial pa = exact_divide(a, ca).primitive(), pb = exact_divide(b, cb).primitive();
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    Polynomial last = detail::subresultant_last(pa, pb, v);
    Polynomial g = last.is_constant() ? Polynomial(ord, Rational(1)) : primitive_part(last, v);
    Polynomial c = gcd(ca, cb);
    return (c * g).primitive();
}

inline Polynomial lcm(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero()) return Polynomial(Polynomial::common_order(a, b));
    return exact_divide(a * b, gcd(a, b)).primitive();
}

/// Squarefree part over Q (normalized). Repeated factors in every symbol are removed.
inline Polynomial squarefree_part(const Polynomial& p)
{
    if (p.is_zero()) throw DomainError("squarefree part of the zero polynomial");
    if (p.is_constant()) return Polynomial(p.order(), Rational(1));
    const std::size_t v = *p.leading_variable();
    Polynomial c = content(p, v);
    Polynomial pp = exact_divide(p, c);
    Polynomial g = gcd(pp, pp.derivative(v));
    Polynomial s = exact_divide(pp, g);
    if (!c.is_constant()) s = s * squarefree_part(c);
    return s.primitive();
}

/// Yun decomposition: p = const * prod f_i^i with f_i squarefree and pairwise coprime.
inline std::vector<std::pair<Polynomial, unsigned>> squarefree_factors(const Polynomial& p)
{
    std::vector<std::pair<Polynomial, unsigned>> out;
    if (p.is_zero()) throw DomainError("squarefree factors of the zero polynomial");
    if (p.is_constant()) return out;
    const std::size_t v = *p.leading_variable();
    Polynomial c = content(p, v);
    Polynomial a = exact_divide(p, c).primitive();
    Polynomial b = a.derivative(v);
    Polynomial g = gcd(a, b);
    Polynomial w = exact_divide(a, g);
    Polynomial y = exact_divide(b, g);
    Polynomial z = y - w.derivative(v);
    unsigned i = 1;
    while (!w.is_constant()) {
        Polynomial h = z.is_zero() ? w.primitive() : gcd(w, z);
        if (!h.is_constant()) out.emplace_back(h.primitive(), i);
        w = exact_divide(w, h);
        y = exact_divide(z, h);
        z = y - w.derivative(v);
        ++i;
    }
    if (!c.is_constant()) {
        auto sub = squarefree_factors(c);
        // Merge factors of equal multiplicity so the output stays one entry per multiplicity.
        for (auto& [f, m] : sub) {
            bool merged = false;
            for (auto& [f2, m2] : out)
                if (m2 == m) {
                    f2 = (f2 * f).primitive();
                    merged = true;
                    break;
                }
            if (!merged) out.emplace_back(f, m);
        }
    }
    return out;
}

/// Divide out of p every factor it shares with q (repeatedly), i.e. the largest divisor of p
/// coprime to q. Both are viewed over all symbols.
inline Polynomial remove_common_factors(Polynomial p, const Polynomial& q)
{
    if (q.is_zero()) return Polynomial(p.order(), Rational(1));
    for (;;) {
        if (p.is_constant()) return p;
        Polynomial g = gcd(p, q);
        if (g.is_constant()) return p;
        p = exact_divide(p, g);
    }
}

}  // namespace sasolve
