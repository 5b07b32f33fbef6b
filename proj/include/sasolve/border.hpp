#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/count.hpp"
#include "sasolve/elimination.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/realroots.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace sasolve {

enum class FactorSource {
    leading_coefficient,
    discriminant,
    constraint_resultant,
    side_condition,
    guard_resultant,
    parameter_condition,
};

inline std::string to_string(FactorSource s)
{
    switch (s) {
    case FactorSource::leading_coefficient: return "leading-coefficient";
    case FactorSource::discriminant: return "discriminant";
    case FactorSource::constraint_resultant: return "constraint-resultant";
    case FactorSource::side_condition: return "side-condition";
    case FactorSource::guard_resultant: return "guard-resultant";
    case FactorSource::parameter_condition: return "parameter-condition";
    }
    return "unknown";
}

struct BorderFactor {
    Polynomial poly;
    std::set<FactorSource> sources;

    /// Part of the border proper (as opposed to a guard that only excludes degenerate cases).
    bool is_border() const
    {
        for (auto s : sources)
            if (s <= FactorSource::side_condition) return true;
        return false;
    }
};

/// Pairwise coprime, squarefree, primitive factors (in the parameters) with provenance.
struct BorderPolynomial {
    std::vector<BorderFactor> factors;

    std::vector<Polynomial> border_factors() const
    {
        std::vector<Polynomial> out;
        for (const auto& f : factors)
            if (f.is_border()) out.push_back(f.poly);
        return out;
    }

    std::vector<Polynomial> guard_factors() const
    {
        std::vector<Polynomial> out;
        for (const auto& f : factors)
            if (!f.is_border()) out.push_back(f.poly);
        return out;
    }

    std::vector<Polynomial> all_factors() const
    {
        std::vector<Polynomial> out;
        for (const auto& f : factors) out.push_back(f.poly);
        return out;
    }

    /// Product of the border factors (squarefree since they are pairwise coprime).
    Polynomial squarefree_product() const
    {
        Polynomial p(Rational(1));
        for (const auto& f : factors)
            if (f.is_border()) p = p.is_constant() ? f.poly.scaled(p.constant_value()) : p * f.poly;
        return p;
    }

    /// Product of every factor, guards included.
    Polynomial guard_product() const
    {
        Polynomial p(Rational(1));
        for (const auto& f : factors) p = p.is_constant() ? f.poly.scaled(p.constant_value()) : p * f.poly;
        return p;
    }

    void add(const Polynomial& p, FactorSource src)
    {
        if (p.is_zero()) throw DomainError("border factor is identically zero");
        if (p.is_constant()) return;
        for (const auto& [f, _] : squarefree_factors(p.primitive()))
            for (const auto& piece : split(f)) insert(piece, {src});
    }

    void merge(const BorderPolynomial& other)
    {
        for (const auto& f : other.factors) insert(f.poly, f.sources);
    }

private:
    // Content splitting in each symbol, then rational linear factors of univariate pieces.
    static std::vector<Polynomial> split(const Polynomial& f)
    {
        std::vector<Polynomial> work{f}, out;
        while (!work.empty()) {
            Polynomial p = work.back();
            work.pop_back();
            if (p.is_constant()) continue;
            bool done = false;
            for (auto v : p.variables()) {
                Polynomial c = content(p, v);
                if (c.is_constant()) continue;
                work.push_back(c);
                work.push_back(exact_divide(p, c));
                done = true;
                break;
            }
            if (done) continue;
            auto vars = p.variables();
            if (vars.size() == 1 && p.degree(vars[0]) > 1) {
                if (auto r = rational_root(p, vars[0])) {
                    Polynomial lin = (Polynomial::variable(p.order(), vars[0]) - Polynomial(p.order(), *r)).primitive();
                    work.push_back(lin);
                    work.push_back(exact_divide(p, lin));
                    continue;
                }
            }
            out.push_back(p.primitive());
        }
        return out;
    }

    // A rational root has denominator dividing the leading coefficient, so once an isolating
    // interval is shorter than 1/lc only a couple of candidates k/lc remain.
    static std::optional<Rational> rational_root(const Polynomial& p, std::size_t v)
    {
        UPoly u = UPoly::from_polynomial(p.primitive(), v);
        Integer lc = abs(u.lc().get_num());
        for (auto iv : isolate_real_roots(u)) {
            if (iv.point) return iv.lo;
            while (!iv.point && (iv.hi - iv.lo) * lc >= 1) iv = bisect(u, iv);
            if (iv.point) return iv.lo;
            for (Integer k = ceil_of(iv.lo * lc); Rational(k) <= iv.hi * lc; ++k) {
                Rational c(k, lc);
                c.canonicalize();
                if (u.eval(c) == 0) return c;
            }
        }
        return std::nullopt;
    }

    void insert(Polynomial f, std::set<FactorSource> src)
    {
        f = f.primitive();
        if (f.is_constant()) return;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (factors[i].poly == f) {
                factors[i].sources.insert(src.begin(), src.end());
                return;
            }
            Polynomial g = gcd(f, factors[i].poly);
            if (g.is_constant()) continue;
            BorderFactor old = factors[i];
            factors.erase(factors.begin() + static_cast<long>(i));
            std::set<FactorSource> both = old.sources;
            both.insert(src.begin(), src.end());
            insert(g, both);
            insert(exact_divide(old.poly, g), old.sources);
            insert(exact_divide(f, g), src);
            return;
        }
        factors.push_back({f, std::move(src)});
    }
};

/// Border polynomial of a parametric one-variable system: leading coefficient, discriminant
/// and constraint resultants of the equation, the parameter-only side conditions, and
/// resultants of the equation with each guard factor.
inline BorderPolynomial border_polynomial(const ReducedBranch& r, const std::vector<Polynomial>& side)
{
    const auto& u = r.sas;
    const std::size_t y = u.var;
    const Polynomial& t = u.equation;
    if (t.degree(y) == 0) throw DomainError("border polynomial of a constant equation");
    BorderPolynomial bp;
    bp.add(t.leading_coefficient(y), FactorSource::leading_coefficient);
    if (t.degree(y) > 1) bp.add(discriminant(t, y), FactorSource::discriminant);
    for (const auto& c : u.constraints) {
        if (c.is_zero()) continue;
        bp.add(c.degree(y) > 0 ? resultant(t, c, y) : c, FactorSource::constraint_resultant);
    }
    for (const auto& s : side)
        if (parameters_only(s)) bp.add(s, FactorSource::side_condition);
    for (const auto& a : r.guard_factors) {
        bp.add(a.degree(y) > 0 ? resultant(a, t, y) : a, FactorSource::guard_resultant);
    }
    return bp;
}

}  // namespace sasolve
