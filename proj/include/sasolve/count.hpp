#pragma once

#include "sasolve/algebra.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/realroots.hpp"
#include "sasolve/system.hpp"
#include "sasolve/triangular.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace sasolve {

/// One quasi-linear branch reduced to a system in its first variable.
struct ReducedBranch {
    UnivariateSAS sas;
    /// Numerators and denominators of the substituted inequations (all must stay nonzero).
    std::vector<Polynomial> guard_factors;
    /// Each positive/nonnegative constraint after substitution, as num * den.
    std::vector<Polynomial> constraint_images;
};

/// Substitute the branch parametrization into the constraints of `s` (given in the
/// original coordinates, transformed here by `tr`). Factors of the first polynomial shared
/// with a guard factor or a constraint image are removed; constraints are reduced modulo
/// the remaining first polynomial with a sign-preserving multiplier. Nonstrict constraints
/// are treated as strict.
inline ReducedBranch reduce_branch_to_univariate(const QuasiLinearBranch& b, const SemiAlgebraicSystem& s,
                                                 const TransformRecord& tr)
{
    const Parametrization& par = b.param;
    const std::size_t y = par.var;
    const auto& ord = par.first.order();
    ReducedBranch out;
    out.sas.var = y;
    Polynomial t = par.first;
    bool empty = false;

    auto add_guard = [&](const Polynomial& q) {
        auto [n, d] = par.substitute(q);
        if (n.is_zero()) {
            empty = true;
            return;
        }
        for (const Polynomial& f : {n, d}) {
            if (f.is_constant()) continue;
            detail::insert_unique(out.guard_factors, f.primitive());
        }
    };
    for (const auto& q : b.system.side) add_guard(q);
    for (const auto& q : s.nonzeros) add_guard(tr.apply(q.lifted(ord)));

    std::vector<Polynomial> originals = s.positives;
    originals.insert(originals.end(), s.nonnegatives.begin(), s.nonnegatives.end());
    for (const auto& q : originals) {
        auto [n, d] = par.substitute(tr.apply(q.lifted(ord)));
        out.constraint_images.push_back(n * d);
    }

    if (!empty) {
        for (const auto& g : out.guard_factors)
            if (g.degree(y) > 0) t = remove_common_factors(t, g);
        for (const auto& c : out.constraint_images) {
            if (t.degree(y) == 0) break;
            if (c.is_zero()) {
                t = Polynomial(ord, Rational(1));
                break;
            }
            if (c.degree(y) > 0) t = remove_common_factors(t, c);
        }
    }
    if (empty || t.degree(y) == 0) {
        out.sas.equation = Polynomial(ord, Rational(1));
        return out;
    }
    out.sas.equation = t.primitive();
    Parametrization red = par;
    red.first = out.sas.equation;
    for (const auto& c : out.constraint_images) out.sas.constraints.push_back(red.reduce(c).first);
    return out;
}

namespace detail {

// Roots of the first polynomial that keep every guard factor nonzero.
inline bool has_complex_points(const QuasiLinearBranch& b)
{
    Polynomial t = b.param.first;
    for (const auto& q : b.system.side) {
        auto [n, d] = b.param.substitute(q);
        if (n.is_zero()) return false;
        if (n.degree(b.param.var) > 0) t = remove_common_factors(t, n);
        if (t.degree(b.param.var) == 0) return false;
    }
    return t.degree(b.param.var) > 0;
}

// A branch that leaves some variable free is either empty or positive-dimensional; fixing
// the free variables at random integers and solving decides which (with probability one).
inline void reject_positive_dimensional(const TriangularSystem& t, const OrderPtr& ord, std::mt19937_64& rng,
                                        unsigned depth = 0)
{
    if (depth > ord->var_count() + 1) throw DomainError("dimension check did not terminate");
    std::uniform_int_distribution<int> pick(-97, 97);
    std::vector<Polynomial> eqs = t.tset.polys;
    for (std::size_t v = ord->param_count(); v < ord->size(); ++v)
        if (!t.tset.with_leading_variable(v))
            eqs.push_back(Polynomial::variable(ord, v) - Polynomial(ord, Rational(pick(rng))));
    for (const auto& b : decompose(eqs, t.side, ord)) {
        if (!covers_all_variables(b.tset, *ord)) {
            reject_positive_dimensional(b, ord, rng, depth + 1);
            continue;
        }
        for (const auto& qb : quasi_linearize_all({b}, ord).branches)
            if (has_complex_points(qb))
                throw NonZeroDimensional("the system has infinitely many complex solutions");
    }
}

}  // namespace detail

/// Points counted by more than one branch, so that subtracting gives distinct solutions.
inline int dedup(const std::vector<QuasiLinearBranch>& branches, const std::vector<ReducedBranch>& reduced)
{
    int adjustment = 0;
    for (std::size_t j = 1; j < branches.size(); ++j) {
        const std::size_t y = branches[j].param.var;
        const Polynomial& tj = reduced[j].sas.equation;
        if (tj.degree(y) == 0) continue;
        Polynomial shared(tj.order(), Rational(1));
        for (std::size_t i = 0; i < j; ++i) {
            const Polynomial& ti = reduced[i].sas.equation;
            if (ti.degree(y) == 0) continue;
            Polynomial g = gcd(ti, tj);
            const auto& ci = branches[i].param.coords;
            const auto& cj = branches[j].param.coords;
            for (std::size_t k = 1; k < ci.size() && g.degree(y) > 0; ++k) {
                Polynomial diff = ci[k].first * cj[k].second - cj[k].first * ci[k].second;
                if (!diff.is_zero()) g = gcd(g, diff);
            }
            if (g.degree(y) > 0) shared = lcm(shared, g);
        }
        if (shared.degree(y) == 0) continue;
        UnivariateSAS u = reduced[j].sas;
        u.equation = shared;
        adjustment += count_univariate_sas(u);
    }
    return adjustment;
}

struct CountOptions {
    std::vector<Integer> transform;
    std::uint64_t seed = 1;
    unsigned max_attempts = 12;
};

struct BranchCount {
    std::string id;
    std::string triangular_set;
    std::string first_polynomial;
    int count = 0;
};

struct CountReport {
    int total = 0;
    int dedup_adjustment = 0;
    std::vector<BranchCount> per_branch;
    std::vector<TransformRecord> transforms;
};

/// Number of distinct real solutions of a parameter-free system with as many equations
/// as variables.
inline CountReport count_real_solutions(const SemiAlgebraicSystem& input, const CountOptions& opt = {})
{
    if (input.depends_on_parameters())
        throw InputError("count needs numeric parameter values; specialize the system first");
    input.require_square();
    const OrderPtr& ord = input.order;
    CountReport report;
    std::mt19937_64 rng(opt.seed ^ 0x5a5a5a5aULL);
    auto subsystems = split_nonstrict(input);
    for (std::size_t k = 0; k < subsystems.size(); ++k) {
        const auto& sub = subsystems[k];
        std::vector<TriangularSystem> full;
        for (auto& b : decompose(sub.equations, sub.nonzeros, ord)) {
            if (covers_all_variables(b.tset, *ord)) {
                full.push_back(std::move(b));
            } else {
                detail::reject_positive_dimensional(b, ord, rng);
            }
        }
        if (full.empty()) continue;
        QuasiLinearOptions qo;
        qo.explicit_coefficients = opt.transform;
        qo.seed = opt.seed;
        qo.max_attempts = opt.max_attempts;
        qo.allow_identity = opt.transform.empty();
        auto ql = quasi_linearize_all(full, ord, qo);
        report.transforms.push_back(ql.transform);
        std::vector<ReducedBranch> reduced;
        for (std::size_t j = 0; j < ql.branches.size(); ++j) {
            reduced.push_back(reduce_branch_to_univariate(ql.branches[j], sub, ql.transform));
            BranchCount bc;
            bc.id = (subsystems.size() > 1 ? "s" + std::to_string(k + 1) + "." : std::string()) + "b" +
                    std::to_string(j + 1);
            for (std::size_t i = 0; i < ql.branches[j].system.tset.size(); ++i)
                bc.triangular_set += (i ? ", " : "") + ql.branches[j].system.tset[i].to_string();
            bc.first_polynomial = reduced.back().sas.equation.to_string();
            bc.count = count_univariate_sas(reduced.back().sas);
            report.total += bc.count;
            report.per_branch.push_back(std::move(bc));
        }
        int adj = dedup(ql.branches, reduced);
        report.dedup_adjustment += adj;
        report.total -= adj;
    }
    return report;
}

}  // namespace sasolve
