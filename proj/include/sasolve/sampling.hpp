#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/elimination.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/realroots.hpp"
#include "sasolve/upoly.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

namespace sasolve {

/// Open bounds per parameter; nullopt means unbounded.
struct ParameterBox {
    std::vector<std::optional<Rational>> lo;
    std::vector<std::optional<Rational>> hi;

    static ParameterBox unbounded(std::size_t dims) { return {std::vector<std::optional<Rational>>(dims), std::vector<std::optional<Rational>>(dims)}; }

    bool contains(const std::vector<Rational>& pt) const
    {
        for (std::size_t i = 0; i < pt.size(); ++i) {
            if (lo[i] && !(*lo[i] < pt[i])) return false;
            if (hi[i] && !(pt[i] < *hi[i])) return false;
        }
        return true;
    }
};

namespace detail {

// Pairwise coprime squarefree factors with the same real zeros as the product of `ps`.
inline std::vector<UPoly> coprime_basis(const std::vector<UPoly>& ps)
{
    std::vector<UPoly> basis, work;
    for (const auto& p : ps)
        if (p.degree() > 0) work.push_back(p.squarefree());
    while (!work.empty()) {
        UPoly f = work.back().monic();
        work.pop_back();
        if (f.degree() < 1) continue;
        bool absorbed = false;
        for (std::size_t i = 0; i < basis.size() && !absorbed; ++i) {
            if (basis[i] == f) {
                absorbed = true;
                break;
            }
            UPoly g = UPoly::gcd(f, basis[i]);
            if (g.degree() < 1) continue;
            UPoly old = basis[i];
            basis.erase(basis.begin() + static_cast<long>(i));
            work.push_back(g);
            work.push_back(old / g);
            work.push_back(f / g);
            absorbed = true;
        }
        if (!absorbed) basis.push_back(f);
    }
    return basis;
}

struct Cut {
    IsolatingInterval iv;
    const UPoly* poly = nullptr;  // null for a box bound
};

inline bool before(const Cut& a, const Cut& b)
{
    if (a.iv.lo != b.iv.lo) return a.iv.lo < b.iv.lo;
    return a.iv.hi < b.iv.hi;
}

// Sorted, pairwise disjoint isolating intervals for the real roots of a coprime basis.
inline std::vector<Cut> isolate_basis(const std::vector<UPoly>& basis)
{
    std::vector<Cut> cuts;
    for (const auto& f : basis)
        for (const auto& iv : isolate_real_roots(f)) cuts.push_back({iv, &f});
    for (bool clean = false; !clean;) {
        std::sort(cuts.begin(), cuts.end(), before);
        clean = true;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            if (cuts[i + 1].iv.lo < cuts[i].iv.hi) {
                cuts[i].iv = bisect(*cuts[i].poly, cuts[i].iv);
                cuts[i + 1].iv = bisect(*cuts[i + 1].poly, cuts[i + 1].iv);
                clean = false;
            }
    }
    return cuts;
}

inline Rational width(const IsolatingInterval& iv) { return iv.hi - iv.lo; }

// A simple rational strictly between two neighbouring cuts.
inline Rational sample_between(Cut& a, Cut& b)
{
    auto refine = [](Cut& c) {
        if (c.poly && !c.iv.point) c.iv = bisect(*c.poly, c.iv);
    };
    while (!(a.iv.hi < b.iv.lo)) {
        refine(a);
        refine(b);
    }
    for (int pass = 0; pass < 8; ++pass) {
        const Rational gap = b.iv.lo - a.iv.hi;
        bool changed = false;
        if (a.poly && !a.iv.point && gap < width(a.iv)) {
            refine(a);
            changed = true;
        }
        if (b.poly && !b.iv.point && gap < width(b.iv)) {
            refine(b);
            changed = true;
        }
        if (!changed) break;
    }
    return simplest_between(a.iv.hi, b.iv.lo);
}

// One rational in each open interval cut out of (lo, hi) by the real roots of the factors.
inline std::vector<Rational> sample_line(const std::vector<UPoly>& factors, const std::optional<Rational>& lo,
                                         const std::optional<Rational>& hi)
{
    if (lo && hi && !(*lo < *hi)) return {};
    const auto basis = coprime_basis(factors);
    std::vector<Cut> cuts;
    if (lo) cuts.push_back({{*lo, *lo, true}, nullptr});
    auto straddles = [](const IsolatingInterval& iv, const std::optional<Rational>& b) {
        return b && !iv.point && iv.lo < *b && *b < iv.hi;
    };
    for (auto c : isolate_basis(basis)) {
        const UPoly& f = *c.poly;
        const bool lo_root = lo && f.eval(*lo) == 0;
        const bool hi_root = hi && f.eval(*hi) == 0;
        while ((straddles(c.iv, lo) && !lo_root) || (straddles(c.iv, hi) && !hi_root)) c.iv = bisect(f, c.iv);
        // Still straddling means the root is the bound itself.
        if (straddles(c.iv, lo) || straddles(c.iv, hi)) continue;
        if (lo && (c.iv.point ? !(*lo < c.iv.lo) : c.iv.lo < *lo)) continue;
        if (hi && (c.iv.point ? !(c.iv.hi < *hi) : *hi < c.iv.hi)) continue;
        cuts.push_back(c);
    }
    if (hi) cuts.push_back({{*hi, *hi, true}, nullptr});
    std::vector<Rational> out;
    if (cuts.empty()) {
        out.push_back(0);
        return out;
    }
    if (!lo) out.push_back(Rational(floor_of(cuts.front().iv.lo) - 1));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(sample_between(cuts[i], cuts[i + 1]));
    if (!hi) out.push_back(Rational(ceil_of(cuts.back().iv.hi) + 1));
    return out;
}

inline std::vector<UPoly> factors_in(const std::vector<Polynomial>& ps, std::size_t var,
                                     const std::map<std::size_t, Rational>& at)
{
    std::vector<UPoly> out;
    for (const auto& p : ps) {
        Polynomial q = at.empty() ? p : p.evaluate(at);
        if (q.is_zero()) continue;
        UPoly u = UPoly::from_polynomial(q, var);
        if (u.degree() > 0) out.push_back(u);
    }
    return out;
}

}  // namespace detail

/// At least one rational point in every connected component of the complement of the
/// union of the zero sets of `polys` inside the box. Works on the first `dims` (one or two)
/// parameters of the order; for two, the second parameter is projected away.
inline std::vector<std::vector<Rational>> sample_parameter_regions(const std::vector<Polynomial>& polys0,
                                                                   const OrderPtr& ord, std::size_t dims,
                                                                   const ParameterBox& box)
{
    std::vector<Polynomial> polys;
    for (const auto& p : polys0) {
        if (p.is_zero()) throw DomainError("cannot sample around the zero polynomial");
        if (!p.is_constant()) polys.push_back(p.lifted(ord));
    }
    std::vector<std::vector<Rational>> out;
    if (dims == 1) {
        for (const auto& a : detail::sample_line(detail::factors_in(polys, 0, {}), box.lo[0], box.hi[0]))
            out.push_back({a});
        return out;
    }
    if (dims != 2) throw DomainError("automatic sampling supports one or two parameters");
    const std::size_t u = 1;
    std::vector<Polynomial> proj, lifting;
    for (const auto& p : polys) {
        if (p.degree(u) == 0) {
            proj.push_back(p);
            continue;
        }
        lifting.push_back(p);
        proj.push_back(p.leading_coefficient(u));
        if (p.degree(u) > 1) proj.push_back(discriminant(p, u));
        for (const auto& bound : {box.lo[1], box.hi[1]})
            if (bound) proj.push_back(p.substitute(u, Polynomial(ord, *bound)));
    }
    for (std::size_t i = 0; i < lifting.size(); ++i)
        for (std::size_t j = i + 1; j < lifting.size(); ++j) proj.push_back(resultant(lifting[i], lifting[j], u));
    std::vector<Polynomial> proj_nonzero;
    for (const auto& p : proj)
        if (!p.is_zero()) proj_nonzero.push_back(p);
    for (const auto& a : detail::sample_line(detail::factors_in(proj_nonzero, 0, {}), box.lo[0], box.hi[0])) {
        std::map<std::size_t, Rational> at{{0, a}};
        for (const auto& b : detail::sample_line(detail::factors_in(lifting, u, at), box.lo[1], box.hi[1]))
            out.push_back({a, b});
    }
    return out;
}

}  // namespace sasolve
