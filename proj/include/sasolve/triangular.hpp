#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace sasolve {

struct TriangularSet {
    std::vector<Polynomial> polys;

    std::size_t size() const { return polys.size(); }
    const Polynomial& operator[](std::size_t i) const { return polys[i]; }

    /// Every element after the first has degree one in its leading variable.
    bool is_quasi_linear() const
    {
        for (std::size_t i = 1; i < polys.size(); ++i)
            if (polys[i].degree(*polys[i].leading_variable()) != 1) return false;
        return true;
    }

    /// Element whose leading variable is `v`, if any.
    const Polynomial* with_leading_variable(std::size_t v) const
    {
        for (const auto& p : polys)
            if (p.leading_variable() == v) return &p;
        return nullptr;
    }
};

struct TriangularSystem {
    TriangularSet tset;
    std::vector<Polynomial> side;
    bool is_main_branch = false;
};

/// y1 <- y1 + c2*y2 + ... + cr*yr over the variables (parameters untouched). Empty
/// coefficients mean the identity.
struct TransformRecord {
    std::vector<Integer> coefficients;
    std::size_t target = 0;
    std::uint64_t seed = 0;
    unsigned attempt = 0;

    bool is_identity() const
    {
        return std::all_of(coefficients.begin(), coefficients.end(), [](const Integer& c) { return c == 0; });
    }

    Polynomial apply(const Polynomial& p) const { return substitute_first(p, false); }
    Polynomial invert(const Polynomial& p) const { return substitute_first(p, true); }

    std::string describe(const VariableOrder& ord) const
    {
        if (is_identity()) return "identity";
        std::string s = ord.name(target) + " <- " + ord.name(target);
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            if (coefficients[k] == 0) continue;
            s += " + " + coefficients[k].get_str() + "*" + ord.name(target + 1 + k);
        }
        return s;
    }

private:
    Polynomial substitute_first(const Polynomial& p, bool inverse) const
    {
        if (is_identity() || !p.order()) return p;
        const auto& ord = p.order();
        Polynomial e = Polynomial::variable(ord, target);
        for (std::size_t k = 0; k < coefficients.size(); ++k) {
            Rational c(coefficients[k]);
            if (inverse) c = -c;
            e += Polynomial::variable(ord, target + 1 + k).scaled(c);
        }
        return p.substitute(target, e);
    }
};

/// Nonconstant initials of the set, normalized and without repeats.
inline std::vector<Polynomial> initials(const TriangularSet& t)
{
    std::vector<Polynomial> out;
    for (const auto& p : t.polys) {
        Polynomial i = p.initial();
        if (i.is_constant()) continue;
        i = i.primitive();
        if (std::find(out.begin(), out.end(), i) == out.end()) out.push_back(i);
    }
    return out;
}

/// Successive pseudo-remainder of p by the set, highest leading variable first.
inline Polynomial chain_prem(Polynomial p, const std::vector<Polynomial>& chain)
{
    for (std::size_t i = chain.size(); i-- > 0;) {
        if (p.is_zero()) return p;
        const std::size_t v = *chain[i].leading_variable();
        if (p.degree(v) >= chain[i].degree(v)) p = prem(p, chain[i], v).primitive();
    }
    return p;
}

inline Polynomial chain_prem(const Polynomial& p, const TriangularSet& t) { return chain_prem(p, t.polys); }

/// True when each variable (non-parameter symbol) is the leading variable of exactly one
/// element and no element involves parameters only.
inline bool covers_all_variables(const TriangularSet& t, const VariableOrder& ord)
{
    std::size_t count = 0;
    for (const auto& p : t.polys) {
        auto lv = p.leading_variable();
        if (!lv || ord.is_parameter(*lv)) return false;
        ++count;
    }
    return count == ord.var_count();
}

struct DecomposeOptions {
    /// Drop branches that force a parameter-only polynomial to vanish; the polynomials are
    /// reported in Decomposition::pruned_parameter_polys.
    bool main_only = false;
    std::size_t max_steps = 200000;
};

struct Decomposition {
    std::vector<TriangularSystem> branches;
    std::vector<Polynomial> pruned_parameter_polys;
};

namespace detail {

inline int compare_rank(const Polynomial& a, const Polynomial& b)
{
    long ca = poly_class(a), cb = poly_class(b);
    if (ca != cb) return ca < cb ? -1 : 1;
    if (ca >= 0) {
        auto da = a.degree(static_cast<std::size_t>(ca)), db = b.degree(static_cast<std::size_t>(cb));
        if (da != db) return da < db ? -1 : 1;
    }
    if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree() ? -1 : 1;
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

inline bool reduced_wrt(const Polynomial& p, const Polynomial& q)
{
    const std::size_t v = *q.leading_variable();
    return p.degree(v) < q.degree(v);
}

inline std::vector<Polynomial> basic_set(std::vector<Polynomial> ps)
{
    std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) { return compare_rank(a, b) < 0; });
    std::vector<Polynomial> bs;
    for (const auto& p : ps) {
        if (bs.empty()) {
            bs.push_back(p);
            continue;
        }
        if (poly_class(p) <= poly_class(bs.back())) continue;
        bool ok = true;
        for (const auto& q : bs)
            if (!reduced_wrt(p, q)) {
                ok = false;
                break;
            }
        if (ok) bs.push_back(p);
    }
    return bs;
}

inline void insert_unique(std::vector<Polynomial>& v, const Polynomial& p)
{
    if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

struct WorkItem {
    std::vector<Polynomial> eqs;
    std::vector<Polynomial> ineqs;
    // Prefixes already in normal form with respect to each other.
    std::size_t eq_done = 0;
    std::size_t ineq_done = 0;
    // Leading equations that define the item; the rest are derived from them.
    std::size_t base = 0;
};

enum class NormalizeResult { ok, empty, split };

// Bring a work item into normal form: primitive squarefree equations with factors shared by
// the inequations removed, and contents split off into separate branches. Only the parts
// added since the last call are processed.
inline NormalizeResult normalize_item(WorkItem& w, std::vector<WorkItem>& stack)
{
    std::vector<Polynomial> qs(w.ineqs.begin(), w.ineqs.begin() + static_cast<long>(w.ineq_done));
    for (std::size_t i = w.ineq_done; i < w.ineqs.size(); ++i) {
        const Polynomial& q0 = w.ineqs[i];
        if (q0.is_zero()) return NormalizeResult::empty;
        if (q0.is_constant()) continue;
        insert_unique(qs, squarefree_part(q0));
    }
    const std::size_t old_q = w.ineq_done;
    std::vector<Polynomial> ps;
    std::size_t done = 0, base = 0;
    for (std::size_t i = 0; i < w.eqs.size(); ++i) {
        if (i == w.base) base = ps.size();
        const Polynomial& p0 = w.eqs[i];
        if (p0.is_zero()) continue;
        if (p0.is_constant()) return NormalizeResult::empty;
        const bool fresh = i >= w.eq_done;
        Polynomial p = fresh ? p0.primitive() : p0;
        for (std::size_t j = fresh ? 0 : old_q; j < qs.size(); ++j) {
            p = remove_common_factors(p, qs[j]);
            if (p.is_constant()) return NormalizeResult::empty;
        }
        if (fresh) p = squarefree_part(p);
        if (std::find(ps.begin(), ps.end(), p) != ps.end()) continue;
        ps.push_back(p);
        if (!fresh) done = ps.size();
    }
    if (w.base >= w.eqs.size()) base = ps.size();
    w.eqs = std::move(ps);
    w.base = base;
    w.ineqs = std::move(qs);
    w.ineq_done = w.ineqs.size();
    for (std::size_t i = done; i < w.eqs.size(); ++i) {
        const Polynomial& p = w.eqs[i];
        const std::size_t v = *p.leading_variable();
        Polynomial c = content(p, v);
        if (c.is_constant()) continue;
        Polynomial pp = exact_divide(p, c).primitive();
        WorkItem nonzero_content = w;
        nonzero_content.eqs[i] = pp;
        nonzero_content.ineqs.push_back(c);
        nonzero_content.eq_done = i;
        WorkItem zero_content = w;
        zero_content.eqs[i] = c;
        zero_content.eq_done = i;
        zero_content.base = zero_content.eqs.size();
        stack.push_back(std::move(zero_content));
        stack.push_back(std::move(nonzero_content));
        return NormalizeResult::split;
    }
    w.eq_done = w.eqs.size();
    return NormalizeResult::ok;
}

}  // namespace detail

/// Characteristic-set decomposition with initial splitting. The union of Zero(T/side) over
/// the branches equals Zero(eqs/ineqs), and branches are pairwise disjoint.
inline Decomposition decompose_ex(const std::vector<Polynomial>& eqs, const std::vector<Polynomial>& ineqs,
                                  const OrderPtr& order, const DecomposeOptions& opt = {})
{
    Decomposition out;
    std::vector<detail::WorkItem> stack;
    detail::WorkItem init;
    for (const auto& e : eqs) init.eqs.push_back(e.lifted(order));
    for (const auto& q : ineqs) init.ineqs.push_back(q.lifted(order));
    init.base = init.eqs.size();
    stack.push_back(std::move(init));
    std::size_t steps = 0;
    while (!stack.empty()) {
        if (++steps > opt.max_steps) throw RetryExhausted("triangular decomposition exceeded its step limit");
        detail::WorkItem w = std::move(stack.back());
        stack.pop_back();
        auto st = detail::normalize_item(w, stack);
        if (st == detail::NormalizeResult::empty || st == detail::NormalizeResult::split) continue;
        if (w.eqs.empty()) {
            // No equations left: the whole (constrained) space; report as an empty chain.
            out.branches.push_back({TriangularSet{}, w.ineqs, false});
            continue;
        }
        if (opt.main_only) {
            bool pruned = false;
            for (const auto& p : w.eqs)
                if (parameters_only(p)) {
                    detail::insert_unique(out.pruned_parameter_polys, p.primitive());
                    pruned = true;
                }
            if (pruned) continue;
        }
        auto bs = detail::basic_set(w.eqs);
        std::vector<Polynomial> rem;
        for (const auto& p : w.eqs) {
            if (std::find(bs.begin(), bs.end(), p) != bs.end()) continue;
            Polynomial r = chain_prem(p, bs);
            if (!r.is_zero()) detail::insert_unique(rem, r.primitive());
        }
        if (!rem.empty()) {
            // Every derived polynomial vanishes on the zeros of the defining ones, so only
            // those, the basic set and the new remainders are carried forward.
            std::vector<Polynomial> next(w.eqs.begin(), w.eqs.begin() + static_cast<long>(w.base));
            for (const auto& b : bs) detail::insert_unique(next, b);
            w.eq_done = next.size();
            for (auto& r : rem) detail::insert_unique(next, r);
            w.eqs = std::move(next);
            stack.push_back(std::move(w));
            continue;
        }
        TriangularSet cs{bs};
        auto inis = initials(cs);
        bool empty = false;
        for (const auto& q : w.ineqs)
            if (chain_prem(q, cs).is_zero()) {
                empty = true;
                break;
            }
        // Initial-splitting branches, pushed in reverse so they are processed in order.
        std::vector<detail::WorkItem> splits;
        for (std::size_t j = 0; j < inis.size(); ++j) {
            detail::WorkItem b;
            b.eqs = w.eqs;
            b.eqs.push_back(inis[j]);
            b.ineqs = w.ineqs;
            for (std::size_t k = 0; k < j; ++k) b.ineqs.push_back(inis[k]);
            b.eq_done = w.eq_done;
            b.ineq_done = w.ineq_done;
            b.base = b.eqs.size();
            splits.push_back(std::move(b));
        }
        for (auto it = splits.rbegin(); it != splits.rend(); ++it) stack.push_back(std::move(*it));
        if (!empty) {
            TriangularSystem sys;
            sys.tset = cs;
            sys.side = w.ineqs;
            for (const auto& i : inis) detail::insert_unique(sys.side, i);
            sys.is_main_branch = covers_all_variables(cs, *order) &&
                                 std::none_of(bs.begin(), bs.end(), [](const Polynomial& p) { return parameters_only(p); });
            out.branches.push_back(std::move(sys));
        }
    }
    return out;
}

inline std::vector<TriangularSystem> decompose(const std::vector<Polynomial>& eqs, const std::vector<Polynomial>& ineqs,
                                               const OrderPtr& order)
{
    return decompose_ex(eqs, ineqs, order).branches;
}

/// Solutions of a quasi-linear branch expressed in the first variable: coordinate k (over
/// the variables) equals num_k / den_k evaluated at a root of `first`.
struct Parametrization {
    Polynomial first;
    std::vector<std::pair<Polynomial, Polynomial>> coords;
    std::size_t var = 0;

    /// Reduce a polynomial in (parameters, first variable) modulo `first`. Parameter-free
    /// inputs use exact division by the monic first polynomial; otherwise the multiplier is an
    /// even power of the leading coefficient, so signs are kept. Returns the power used.
    std::pair<Polynomial, unsigned> reduce(const Polynomial& p) const
    {
        if (p.is_zero() || p.degree(var) < first.degree(var)) return {p, 0};
        auto pd = pseudo_divide(p, first, var, false);
        if (pd.multiplier_power % 2 == 1) {
            return {pd.remainder * first.leading_coefficient(var), pd.multiplier_power + 1};
        }
        return {pd.remainder, pd.multiplier_power};
    }

    /// Reduce a fraction, keeping its value at the roots of `first`.
    std::pair<Polynomial, Polynomial> reduce_fraction(const Polynomial& n, const Polynomial& d) const
    {
        auto [rn, kn] = reduce(n);
        auto [rd, kd] = reduce(d);
        Polynomial lc = first.leading_coefficient(var);
        if (kn > kd) rd *= lc.pow(kn - kd);
        if (kd > kn) rn *= lc.pow(kd - kn);
        if (rn.is_zero()) return {rn, Polynomial(first.order(), Rational(1))};
        Polynomial g = gcd(rn, rd);
        rn = exact_divide(rn, g);
        rd = exact_divide(rd, g);
        // Keep the denominator's leading term positive for stable output.
        if (rd.leading_term_coeff() < 0) {
            rn = -rn;
            rd = -rd;
        }
        if (rd.is_constant()) {
            rn = rn.scaled(1 / rd.constant_value());
            rd = Polynomial(first.order(), Rational(1));
        }
        return {rn, rd};
    }

    /// p with every variable replaced by its coordinate, as num/den in the first variable.
    std::pair<Polynomial, Polynomial> substitute(const Polynomial& p0) const
    {
        const auto& ord = first.order();
        Polynomial num = p0.lifted(ord);
        Polynomial den(ord, Rational(1));
        for (std::size_t k = coords.size(); k-- > 1;) {
            const std::size_t v = var + k;
            const unsigned e = num.degree(v);
            if (e == 0) continue;
            const auto& [n, d] = coords[k];
            auto cs = num.coefficients(v);
            std::vector<Polynomial> npow{Polynomial(ord, Rational(1))}, dpow{Polynomial(ord, Rational(1))};
            for (unsigned i = 1; i <= e; ++i) {
                npow.push_back(npow.back() * n);
                dpow.push_back(dpow.back() * d);
            }
            Polynomial acc(ord);
            for (unsigned i = 0; i <= e; ++i)
                if (!cs[i].is_zero()) acc += cs[i] * npow[i] * dpow[e - i];
            num = acc;
            den *= dpow[e];
        }
        return reduce_fraction(num, den);
    }
};

namespace detail {

enum class NormalForm { ok, empty, degenerate };

// Turn a branch that covers every variable into quasi-linear form with a squarefree first
// polynomial, replacing higher-degree elements of shape lc*(y - g)^d by their linear factor
// and discarding roots of the first polynomial at which an initial vanishes.
inline NormalForm normalize_branch(TriangularSystem& t, const OrderPtr& ord, Parametrization* out = nullptr)
{
    const std::size_t first_var = ord->param_count();
    const std::size_t nvar = ord->var_count();
    std::vector<Polynomial> chain(nvar);
    for (const auto& p : t.tset.polys) {
        auto lv = p.leading_variable();
        if (!lv || *lv < first_var) return NormalForm::degenerate;
        chain[*lv - first_var] = p;
    }
    for (const auto& p : chain)
        if (p.is_zero()) return NormalForm::degenerate;
    Parametrization par;
    par.var = first_var;
    par.first = squarefree_part(chain[0]);
    par.coords.push_back({Polynomial::variable(ord, first_var), Polynomial(ord, Rational(1))});
    auto drop_roots_of = [&](const Polynomial& f) {
        if (f.is_zero()) {
            par.first = Polynomial(ord, Rational(1));
            return;
        }
        if (f.degree(first_var) == 0) return;
        par.first = remove_common_factors(par.first, f);
    };
    for (std::size_t j = 1; j < nvar; ++j) {
        if (par.first.degree(first_var) == 0) return NormalForm::empty;
        const std::size_t v = first_var + j;
        Polynomial tj = chain[j];
        const unsigned d = tj.degree(v);
        auto cs = tj.coefficients(v);
        auto [lc_n, lc_d] = par.substitute(cs[d]);
        drop_roots_of(lc_n);
        if (par.first.degree(first_var) == 0) return NormalForm::empty;
        if (d > 1) {
            Polynomial lc = cs[d];
            Polynomial L = Polynomial::variable(ord, v).scaled(Rational(d)) * lc + cs[d - 1];
            Polynomial e = (lc.scaled(Rational(d))).pow(d) * tj - lc * L.pow(d);
            for (const auto& c : e.coefficients(v)) {
                auto [cn, cd] = par.substitute(c);
                if (cn.is_zero()) continue;
                // Must vanish at every remaining root of the first polynomial.
                Polynomial r = par.reduce(cn).first;
                if (!r.is_zero()) return NormalForm::degenerate;
            }
            tj = L.primitive();
            chain[j] = tj;
            cs = tj.coefficients(v);
            std::tie(lc_n, lc_d) = par.substitute(cs[1]);
            drop_roots_of(lc_n);
            if (par.first.degree(first_var) == 0) return NormalForm::empty;
        }
        auto [in, id] = par.substitute(cs[1]);
        auto [jn, jd] = par.substitute(cs[0]);
        // y_j = -J/I = -(jn/jd) / (in/id)
        auto frac = par.reduce_fraction(-jn * id, jd * in);
        par.coords.push_back(frac);
    }
    if (par.first.degree(first_var) == 0) return NormalForm::empty;
    chain[0] = par.first;
    t.tset.polys = chain;
    for (const auto& i : initials(t.tset)) insert_unique(t.side, i);
    if (out) *out = std::move(par);
    return NormalForm::ok;
}

}  // namespace detail

/// Quasi-linear branch together with the parametrization of its solutions.
struct QuasiLinearBranch {
    TriangularSystem system;
    Parametrization param;
};

struct QuasiLinearization {
    std::vector<QuasiLinearBranch> branches;
    TransformRecord transform;
    std::vector<Polynomial> parameter_conditions;
};

struct QuasiLinearOptions {
    std::vector<Integer> explicit_coefficients;
    std::uint64_t seed = 1;
    unsigned max_attempts = 12;
    bool allow_identity = true;
};

namespace detail {

// Coprimality of the first polynomials in the first variable (over Q(parameters)).
inline bool first_polys_separated(const std::vector<QuasiLinearBranch>& bs, std::size_t var)
{
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j)
            if (gcd(bs[i].param.first, bs[j].param.first).degree(var) > 0) return false;
    return true;
}

// Apply one transform to every branch, re-decompose, and normalize. Empty optional means a
// degenerate choice.
inline std::optional<QuasiLinearization> try_transform(const std::vector<TriangularSystem>& systems,
                                                       const OrderPtr& ord, const TransformRecord& tr)
{
    QuasiLinearization q;
    q.transform = tr;
    const bool has_params = ord->param_count() > 0;
    for (const auto& s : systems) {
        std::vector<TriangularSystem> pieces;
        if (tr.is_identity()) {
            pieces.push_back(s);
        } else {
            std::vector<Polynomial> eqs, ineqs;
            for (const auto& p : s.tset.polys) eqs.push_back(tr.apply(p));
            for (const auto& p : s.side) ineqs.push_back(tr.apply(p));
            DecomposeOptions opt;
            opt.main_only = has_params;
            auto d = decompose_ex(eqs, ineqs, ord, opt);
            for (const auto& p : d.pruned_parameter_polys) insert_unique(q.parameter_conditions, p);
            for (auto& b : d.branches)
                if (covers_all_variables(b.tset, *ord)) pieces.push_back(std::move(b));
        }
        for (auto& piece : pieces) {
            Parametrization par;
            auto st = normalize_branch(piece, ord, &par);
            if (st == NormalForm::degenerate) return std::nullopt;
            if (st == NormalForm::empty) continue;
            piece.is_main_branch = true;
            q.branches.push_back({std::move(piece), std::move(par)});
        }
    }
    if (!tr.is_identity() && !first_polys_separated(q.branches, ord->param_count())) return std::nullopt;
    return q;
}

}  // namespace detail

/// Quasi-linearize a list of branches that each cover every variable, using one shared
/// transform. The identity is tried first (when allowed), then explicit coefficients, then
/// seeded random coefficients in [1, 2^16].
inline QuasiLinearization quasi_linearize_all(const std::vector<TriangularSystem>& systems, const OrderPtr& ord,
                                              const QuasiLinearOptions& opt = {})
{
    const std::size_t first = ord->param_count();
    const std::size_t nvar = ord->var_count();
    if (opt.allow_identity) {
        TransformRecord id;
        id.target = first;
        id.seed = opt.seed;
        if (auto q = detail::try_transform(systems, ord, id)) return *q;
    }
    if (nvar < 2) throw RetryExhausted("cannot quasi-linearize: a single variable admits no transform");
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<std::int64_t> coeff(1, 65536);
    for (unsigned attempt = 0; attempt < opt.max_attempts; ++attempt) {
        TransformRecord tr;
        tr.target = first;
        tr.seed = opt.seed;
        tr.attempt = attempt;
        if (attempt == 0 && !opt.explicit_coefficients.empty()) {
            tr.coefficients = opt.explicit_coefficients;
            tr.coefficients.resize(nvar - 1, Integer(0));
        } else {
            for (std::size_t k = 1; k < nvar; ++k) tr.coefficients.push_back(Integer(static_cast<long>(coeff(rng))));
        }
        if (auto q = detail::try_transform(systems, ord, tr)) return *q;
    }
    throw RetryExhausted("quasi-linearization failed for " + std::to_string(opt.max_attempts) +
                         " coefficient choices");
}

/// Quasi-linearize one branch. An already quasi-linear input is returned with the identity
/// transform; otherwise a transform is always applied.
inline std::pair<std::vector<TriangularSystem>, TransformRecord>
quasi_linearize(const TriangularSystem& t, const OrderPtr& ord, const QuasiLinearOptions& opt = {})
{
    QuasiLinearOptions o = opt;
    o.allow_identity = t.tset.is_quasi_linear() && opt.explicit_coefficients.empty();
    auto q = quasi_linearize_all({t}, ord, o);
    std::vector<TriangularSystem> out;
    for (auto& b : q.branches) out.push_back(std::move(b.system));
    return {std::move(out), q.transform};
}

}  // namespace sasolve
