#pragma once

#include "sasolve/border.hpp"
#include "sasolve/count.hpp"
#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"
#include "sasolve/sampling.hpp"
#include "sasolve/system.hpp"
#include "sasolve/triangular.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace sasolve {

struct Region {
    std::vector<Rational> sample;
    /// Signs of the classification's factors followed by the auxiliary polynomials.
    std::vector<int> signs;
    int count = 0;
};

struct RegionClassification {
    OrderPtr order;
    BorderPolynomial border;
    std::vector<Polynomial> aux;
    std::vector<Region> regions;
    std::string guard_description;
    TransformRecord transform;
    /// Parameter-only polynomials whose zero sets carry the non-main branches.
    std::vector<Polynomial> boundary_cases;
    std::vector<std::pair<Polynomial, RegionClassification>> boundaries;
    bool unresolved = false;

    /// Polynomials whose signs make up each region's sign vector, in order.
    std::vector<Polynomial> sign_polynomials() const
    {
        auto out = border.all_factors();
        out.insert(out.end(), aux.begin(), aux.end());
        return out;
    }
};

struct ClassifyOptions {
    std::vector<std::vector<Rational>> samples;
    std::vector<Polynomial> aux;
    std::optional<ParameterBox> box;
    CountOptions count;
    unsigned threads = 0;
    unsigned boundary_depth = 0;
};

namespace detail {

// Open bounds implied by constraints of the form a*p + b > 0 (or >= 0) in one parameter.
inline ParameterBox box_from_constraints(const SemiAlgebraicSystem& s)
{
    const std::size_t d = s.order->param_count();
    ParameterBox box = ParameterBox::unbounded(d);
    std::vector<Polynomial> cs = s.positives;
    cs.insert(cs.end(), s.nonnegatives.begin(), s.nonnegatives.end());
    for (const auto& c : cs) {
        auto vars = c.variables();
        if (vars.size() != 1 || vars[0] >= d || c.degree(vars[0]) != 1) continue;
        const std::size_t v = vars[0];
        auto k = c.coefficients(v);
        Rational a = k[1].constant_value(), b = k[0].is_zero() ? Rational(0) : k[0].constant_value();
        Rational root = -b / a;
        if (a > 0) {
            if (!box.lo[v] || *box.lo[v] < root) box.lo[v] = root;
        } else {
            if (!box.hi[v] || root < *box.hi[v]) box.hi[v] = root;
        }
    }
    return box;
}

inline int sign_at_point(const Polynomial& p, const std::vector<Rational>& pt)
{
    std::map<std::size_t, Rational> at;
    for (std::size_t i = 0; i < pt.size(); ++i) at[i] = pt[i];
    Polynomial v = p.evaluate(at);
    if (!v.is_constant()) throw DomainError("sign vector polynomial involves variables: " + p.to_string());
    return sign(v.constant_value());
}

template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next++;
                if (i >= n) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(m);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Main-branch analysis of a parametric system: border and guard factors with provenance.
struct ParametricAnalysis {
    BorderPolynomial border;
    TransformRecord transform;
    std::vector<Polynomial> boundary_cases;
    std::vector<ReducedBranch> reduced;
    std::vector<QuasiLinearBranch> branches;
};

inline ParametricAnalysis analyze_parametric(const SemiAlgebraicSystem& s, const CountOptions& copt = {})
{
    const OrderPtr& ord = s.order;
    ParametricAnalysis out;
    DecomposeOptions dopt;
    dopt.main_only = true;
    auto dec = decompose_ex(s.equations, s.nonzeros, ord, dopt);
    out.boundary_cases = dec.pruned_parameter_polys;
    std::vector<TriangularSystem> mains;
    for (auto& b : dec.branches)
        if (covers_all_variables(b.tset, *ord)) mains.push_back(std::move(b));
    std::vector<Polynomial> side;
    for (const auto& m : mains)
        for (const auto& q : m.side)
            if (parameters_only(q)) detail::insert_unique(side, q);
    for (const auto& p : out.boundary_cases) out.border.add(p, FactorSource::parameter_condition);
    for (const auto& q : side) out.border.add(q, FactorSource::side_condition);
    for (const auto& c : s.positives)
        if (parameters_only(c)) out.border.add(c, FactorSource::constraint_resultant);
    for (const auto& c : s.nonnegatives)
        if (parameters_only(c)) out.border.add(c, FactorSource::constraint_resultant);
    if (mains.empty()) return out;
    QuasiLinearOptions qo;
    qo.explicit_coefficients = copt.transform;
    qo.seed = copt.seed;
    qo.max_attempts = copt.max_attempts;
    qo.allow_identity = copt.transform.empty();
    auto ql = quasi_linearize_all(mains, ord, qo);
    out.transform = ql.transform;
    for (const auto& p : ql.parameter_conditions) out.border.add(p, FactorSource::parameter_condition);
    for (auto& b : ql.branches) {
        auto r = reduce_branch_to_univariate(b, s, ql.transform);
        if (r.sas.equation.degree(r.sas.var) > 0) out.border.merge(border_polynomial(r, side));
        out.reduced.push_back(std::move(r));
        out.branches.push_back(std::move(b));
    }
    return out;
}

inline RegionClassification classify_boundary(const SemiAlgebraicSystem& s, const Polynomial& guard_factor,
                                              unsigned depth, const ClassifyOptions& opt = {});

/// Region-by-region classification of a system with one or more parameters. Samples are
/// taken automatically for one or two parameters unless supplied.
inline RegionClassification classify_parametric(const SemiAlgebraicSystem& s, const ClassifyOptions& opt = {})
{
    const OrderPtr& ord = s.order;
    const std::size_t d = ord->param_count();
    if (d == 0) throw InputError("the system has no parameters; use count instead");
    s.require_square();
    RegionClassification rc;
    rc.order = ord;
    for (const auto& a : opt.aux) rc.aux.push_back(a.lifted(ord));
    auto analysis = analyze_parametric(s, opt.count);
    rc.border = analysis.border;
    rc.transform = analysis.transform;
    rc.boundary_cases = analysis.boundary_cases;

    std::vector<std::string> parts;
    for (const auto& f : rc.border.all_factors()) parts.push_back(f.to_string() + " != 0");
    for (std::size_t i = 0; i < parts.size(); ++i) rc.guard_description += (i ? " and " : "") + parts[i];
    if (rc.guard_description.empty()) rc.guard_description = "true";

    std::vector<std::vector<Rational>> samples = opt.samples;
    if (samples.empty()) {
        if (d > 2) throw InputError("more than two parameters: supply sample points");
        ParameterBox box = opt.box ? *opt.box : detail::box_from_constraints(s);
        samples = sample_parameter_regions(rc.sign_polynomials(), ord, d, box);
    }
    for (const auto& pt : samples)
        if (pt.size() != d) throw InputError("sample point has the wrong number of coordinates");

    auto polys = rc.sign_polynomials();
    std::vector<Region> regions(samples.size());
    detail::parallel_for(samples.size(), opt.threads, [&](std::size_t i) {
        Region r;
        r.sample = samples[i];
        for (const auto& p : polys) r.signs.push_back(detail::sign_at_point(p, r.sample));
        r.count = count_real_solutions(specialize(s, r.sample), opt.count).total;
        regions[i] = std::move(r);
    });
    if (opt.samples.empty()) {
        // One record per distinct (sign vector, count).
        for (auto& r : regions) {
            bool seen = std::any_of(rc.regions.begin(), rc.regions.end(),
                                    [&](const Region& q) { return q.signs == r.signs && q.count == r.count; });
            if (!seen) rc.regions.push_back(std::move(r));
        }
    } else {
        rc.regions = std::move(regions);
    }

    if (opt.boundary_depth > 0)
        for (const auto& g : rc.boundary_cases) rc.boundaries.push_back({g, classify_boundary(s, g, opt.boundary_depth, opt)});
    return rc;
}

/// Classification on the zero set of a parameter polynomial: the equation is adjoined and
/// the highest-indexed parameter occurring in it becomes the lowest variable.
inline RegionClassification classify_boundary(const SemiAlgebraicSystem& s, const Polynomial& guard_factor,
                                              unsigned depth, const ClassifyOptions& opt)
{
    const OrderPtr& ord = s.order;
    RegionClassification rc;
    rc.order = ord;
    if (depth == 0) {
        rc.unresolved = true;
        rc.guard_description = guard_factor.to_string() + " = 0";
        return rc;
    }
    const Polynomial g = guard_factor.lifted(ord);
    auto vars = g.variables();
    if (vars.empty() || !ord->is_parameter(vars.back()))
        throw DomainError("boundary polynomial must be a nonconstant polynomial in the parameters");
    const std::size_t promoted = vars.back();
    const ParameterBox box = opt.box ? *opt.box : detail::box_from_constraints(s);
    if (vars.size() == 1) {
        auto line = UPoly::from_polynomial(g, promoted);
        bool any = false;
        for (auto iv : isolate_real_roots(line)) {
            const auto& lo = box.lo[promoted];
            const auto& hi = box.hi[promoted];
            while (!iv.point && ((lo && iv.lo < *lo && *lo < iv.hi) || (hi && iv.lo < *hi && *hi < iv.hi))) {
                if ((lo && line.eval(*lo) == 0) || (hi && line.eval(*hi) == 0)) break;
                iv = bisect(line, iv);
            }
            if ((!lo || *lo < iv.lo) && (!hi || iv.hi < *hi)) any = true;
        }
        if (!any) {
            rc.guard_description = guard_factor.to_string() + " = 0 has no real point in the box";
            return rc;
        }
    }

    std::vector<std::string> names;
    for (std::size_t i = 0; i < ord->param_count(); ++i)
        if (i != promoted) names.push_back(ord->name(i));
    names.push_back(ord->name(promoted));
    for (std::size_t i = ord->param_count(); i < ord->size(); ++i) names.push_back(ord->name(i));
    auto target = make_order(names, ord->param_count() - 1);
    SemiAlgebraicSystem t = reorder(s, target);
    t.equations.insert(t.equations.begin(), g.reordered(target));

    ClassifyOptions sub = opt;
    sub.boundary_depth = depth - 1;
    sub.samples.clear();
    sub.aux.clear();
    for (const auto& a : opt.aux)
        if (!a.depends_on(promoted)) sub.aux.push_back(a.reordered(target));
    if (opt.box) {
        ParameterBox b = ParameterBox::unbounded(target->param_count());
        std::size_t j = 0;
        for (std::size_t i = 0; i < ord->param_count(); ++i) {
            if (i == promoted) continue;
            b.lo[j] = opt.box->lo[i];
            b.hi[j] = opt.box->hi[i];
            ++j;
        }
        sub.box = b;
    }
    if (target->param_count() == 0) {
        rc.order = target;
        Region r;
        r.count = count_real_solutions(t, opt.count).total;
        rc.regions.push_back(r);
        rc.guard_description = guard_factor.to_string() + " = 0";
        return rc;
    }
    return classify_parametric(t, sub);
}

}  // namespace sasolve
