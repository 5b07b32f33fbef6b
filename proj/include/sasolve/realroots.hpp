#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/upoly.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace sasolve {

/// Either the exact root [r, r] or an open interval (lo, hi) holding exactly one root, with
/// the subject nonzero at both ends.
struct IsolatingInterval {
    Rational lo;
    Rational hi;
    bool point = false;

    bool contains(const Rational& x) const { return point ? x == lo : (lo < x && x < hi); }
};

namespace detail {

// Power of two at least twice every |a_i / a_n|^(1/(n-i)), which bounds all roots.
inline Rational root_bound(const UPoly& p)
{
    const long n = p.degree();
    long k = 0;
    for (long i = 0; i < n; ++i) {
        const Rational& a = p[static_cast<std::size_t>(i)];
        if (sgn(a) == 0) continue;
        Rational q = abs(a / p.lc());
        // q < 2^bits
        long bits = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2)) -
                    static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) + 1;
        long e = bits > 0 ? (bits + (n - i) - 1) / (n - i) : 0;
        k = std::max(k, e);
    }
    Integer b = 1;
    b <<= static_cast<mp_bitcnt_t>(k + 1);
    return Rational(b);
}

// Sign variations of (x+1)^n p((a + b x)/(x + 1)): a bound on the roots in (a, b).
inline int interval_variations(const UPoly& p, const Rational& a, const Rational& b)
{
    UPoly q = p.taylor_shift(a).scale_variable(b - a).reversed().taylor_shift(1);
    return q.sign_variations();
}

inline void isolate_open(const UPoly& p, const Rational& a, const Rational& b, std::vector<IsolatingInterval>& out)
{
    struct Job {
        Rational a, b;
    };
    std::vector<Job> stack{{a, b}};
    while (!stack.empty()) {
        Job j = stack.back();
        stack.pop_back();
        int v = interval_variations(p, j.a, j.b);
        if (v == 0) continue;
        if (v == 1) {
            out.push_back({j.a, j.b, false});
            continue;
        }
        Rational m = (j.a + j.b) / 2;
        if (p.eval(m) == 0) out.push_back({m, m, true});
        stack.push_back({m, j.b});
        stack.push_back({j.a, m});
    }
}

// Shrink one open interval (exactly one root of squarefree p inside) until p is nonzero at
// both endpoints, or until the root is hit exactly.
inline IsolatingInterval tidy(const UPoly& p, IsolatingInterval iv)
{
    while (!iv.point && (p.eval(iv.lo) == 0 || p.eval(iv.hi) == 0)) {
        Rational m = (iv.lo + iv.hi) / 2;
        if (p.eval(m) == 0) return {m, m, true};
        // One root inside, so the parity of the upper half's variation count locates it.
        if (interval_variations(p, m, iv.hi) % 2 == 1) {
            iv.lo = m;
        } else {
            iv.hi = m;
        }
    }
    return iv;
}

}  // namespace detail

/// Halve an open isolating interval of squarefree p, keeping the half with the root.
inline IsolatingInterval bisect(const UPoly& p, const IsolatingInterval& iv)
{
    if (iv.point) return iv;
    Rational m = (iv.lo + iv.hi) / 2;
    int sm = p.sign_at(m);
    if (sm == 0) return {m, m, true};
    if (sm == p.sign_at(iv.lo)) return {m, iv.hi, false};
    return {iv.lo, m, false};
}

/// Sorted isolating intervals for the distinct real roots of p.
inline std::vector<IsolatingInterval> isolate_real_roots(const UPoly& p)
{
    if (p.is_zero()) throw DomainError("cannot isolate the roots of the zero polynomial");
    std::vector<IsolatingInterval> out;
    if (p.degree() < 1) return out;
    UPoly s = p.squarefree();
    Rational b = detail::root_bound(s);
    if (s.eval(0) == 0) out.push_back({0, 0, true});
    detail::isolate_open(s, -b, 0, out);
    detail::isolate_open(s, 0, b, out);
    for (auto& iv : out) iv = detail::tidy(s, iv);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
    return out;
}

inline std::vector<IsolatingInterval> isolate_real_roots(const Polynomial& p)
{
    return isolate_real_roots(UPoly::from_univariate(p));
}

/// Canonical Sturm sequence p, p', -rem(...), ... with each element rescaled by a positive
/// constant (signs are all that matter).
inline std::vector<UPoly> sturm_sequence(const UPoly& p)
{
    std::vector<UPoly> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    UPoly d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    for (;;) {
        UPoly r = -(seq[seq.size() - 2] % seq.back());
        if (r.is_zero()) break;
        Rational scale = abs(r.lc());
        r = UPoly([&] {
            auto c = r.coeffs();
            for (auto& x : c) x /= scale;
            return c;
        }());
        seq.push_back(std::move(r));
    }
    return seq;
}

namespace detail {

inline int sturm_variations(const std::vector<UPoly>& seq, const std::optional<Rational>& at, bool pos_inf)
{
    int v = 0, last = 0;
    for (const auto& q : seq) {
        int s = at ? q.sign_at(*at) : q.sign_at_infinity(pos_inf);
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace detail

/// Number of distinct real roots of p in the open interval (lo, hi); nullopt means infinite.
inline int sturm_count(const UPoly& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi)
{
    if (p.is_zero()) throw DomainError("Sturm count of the zero polynomial");
    if (lo && p.eval(*lo) == 0) throw DomainError("Sturm count endpoint is a root");
    if (hi && p.eval(*hi) == 0) throw DomainError("Sturm count endpoint is a root");
    if (lo && hi && !(*lo < *hi)) return 0;
    auto seq = sturm_sequence(p);
    return detail::sturm_variations(seq, lo, false) - detail::sturm_variations(seq, hi, true);
}

inline int sturm_count(const Polynomial& p, const std::optional<Rational>& lo, const std::optional<Rational>& hi)
{
    return sturm_count(UPoly::from_univariate(p), lo, hi);
}

inline int sign_at(const Polynomial& f, const Rational& x)
{
    return UPoly::from_univariate(f).sign_at(x);
}

/// Sign changes of a coefficient sign list (highest degree first or last; zeros skipped).
inline int descartes_bound(const std::vector<int>& signs)
{
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

inline int descartes_bound(const Polynomial& f) { return UPoly::from_univariate(f).sign_variations(); }

/// One-variable system {equation = 0, constraints > 0, guard != 0} in symbol `var`.
struct UnivariateSAS {
    Polynomial equation;
    std::vector<Polynomial> constraints;
    Polynomial guard = Polynomial(Rational(1));
    std::size_t var = 0;
};

/// Distinct real roots of the equation at which every constraint is positive. The equation
/// must be coprime with each constraint and with the guard.
inline int count_univariate_sas(const UnivariateSAS& u)
{
    UPoly t = UPoly::from_univariate(u.equation);
    if (t.is_zero()) throw DomainError("univariate system with zero equation");
    if (t.degree() < 1) return 0;
    std::vector<UPoly> cs;
    for (const auto& c : u.constraints) {
        UPoly cu = UPoly::from_univariate(c);
        if (cu.degree() < 1) {
            if (cu.is_zero() || cu.lc() < 0) return 0;
            continue;
        }
        if (UPoly::gcd(t, cu).degree() > 0)
            throw DomainError("equation and constraint share a root: " + c.to_string());
        cs.push_back(std::move(cu));
    }
    if (u.guard.is_zero()) return 0;
    UPoly a = UPoly::from_univariate(u.guard);
    if (a.degree() > 0 && UPoly::gcd(t, a).degree() > 0) throw DomainError("equation and guard share a root");
    if (cs.empty()) return sturm_count(t, std::nullopt, std::nullopt);

    UPoly prod({Rational(1)});
    for (const auto& c : cs) prod = prod * c;
    auto ivs = isolate_real_roots(prod);
    UPoly sq = prod.squarefree();
    // Shrink the intervals until none of them (as closed sets) meets a root of t and
    // neighbours are separated by a gap.
    auto touches_t = [&](const IsolatingInterval& iv) {
        if (t.eval(iv.lo) == 0 || t.eval(iv.hi) == 0) return true;
        return !iv.point && sturm_count(t, iv.lo, iv.hi) > 0;
    };
    for (auto& iv : ivs)
        while (touches_t(iv)) iv = bisect(sq, iv);
    for (std::size_t i = 0; i + 1 < ivs.size(); ++i) {
        while (!(ivs[i].hi < ivs[i + 1].lo)) {
            ivs[i] = bisect(sq, ivs[i]);
            ivs[i + 1] = bisect(sq, ivs[i + 1]);
        }
    }
    int total = 0;
    const std::size_t k = ivs.size();
    for (std::size_t i = 0; i <= k; ++i) {
        std::optional<Rational> lo, hi;
        Rational sample;
        if (i > 0) lo = ivs[i - 1].hi;
        if (i < k) hi = ivs[i].lo;
        if (lo && hi) {
            sample = (*lo + *hi) / 2;
        } else if (hi) {
            sample = *hi - 1;
        } else if (lo) {
            sample = *lo + 1;
        } else {
            sample = 0;
        }
        bool ok = true;
        for (const auto& c : cs)
            if (c.sign_at(sample) <= 0) {
                ok = false;
                break;
            }
        if (ok) total += sturm_count(t, lo, hi);
    }
    return total;
}

}  // namespace sasolve
