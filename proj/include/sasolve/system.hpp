#pragma once

#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"

#include <map>
#include <string>
#include <vector>

namespace sasolve {

/// {F = 0, N != 0, P > 0, Q >= 0} over one variable order.
struct SemiAlgebraicSystem {
    OrderPtr order;
    std::vector<Polynomial> equations;
    std::vector<Polynomial> nonzeros;
    std::vector<Polynomial> positives;
    std::vector<Polynomial> nonnegatives;

    std::vector<Polynomial> all_polynomials() const
    {
        std::vector<Polynomial> out = equations;
        out.insert(out.end(), nonzeros.begin(), nonzeros.end());
        out.insert(out.end(), positives.begin(), positives.end());
        out.insert(out.end(), nonnegatives.begin(), nonnegatives.end());
        return out;
    }

    bool depends_on_parameters() const
    {
        for (const auto& p : all_polynomials())
            for (std::size_t i = 0; i < order->param_count(); ++i)
                if (p.depends_on(i)) return true;
        return false;
    }

    /// Throws InputError unless there are as many equations as variables.
    void require_square() const
    {
        if (equations.empty()) throw InputError("system has no equations");
        if (equations.size() != order->var_count())
            throw InputError("expected " + std::to_string(order->var_count()) + " equations for " +
                             std::to_string(order->var_count()) + " variables, found " +
                             std::to_string(equations.size()));
    }
};

/// Every nonstrict constraint becomes either an equation or a strict inequality; the
/// solution sets of the 2^t results partition the input's.
inline std::vector<SemiAlgebraicSystem> split_nonstrict(const SemiAlgebraicSystem& s)
{
    std::vector<SemiAlgebraicSystem> out;
    SemiAlgebraicSystem base = s;
    base.nonnegatives.clear();
    out.push_back(base);
    for (const auto& q : s.nonnegatives) {
        std::vector<SemiAlgebraicSystem> next;
        for (const auto& sys : out) {
            SemiAlgebraicSystem eq = sys;
            eq.equations.push_back(q);
            SemiAlgebraicSystem gt = sys;
            gt.positives.push_back(q);
            next.push_back(std::move(eq));
            next.push_back(std::move(gt));
        }
        out = std::move(next);
    }
    return out;
}

/// Substitute parameter values; the result lives over the variables alone.
inline SemiAlgebraicSystem specialize(const SemiAlgebraicSystem& s, const std::vector<Rational>& point)
{
    const auto& ord = *s.order;
    if (point.size() != ord.param_count())
        throw InputError("expected " + std::to_string(ord.param_count()) + " parameter values, got " +
                         std::to_string(point.size()));
    std::map<std::size_t, Rational> at;
    for (std::size_t i = 0; i < point.size(); ++i) at[i] = point[i];
    std::vector<std::string> vars(ord.symbols().begin() + static_cast<long>(ord.param_count()), ord.symbols().end());
    auto vo = make_order(vars, 0);
    auto conv = [&](const std::vector<Polynomial>& ps) {
        std::vector<Polynomial> r;
        for (const auto& p : ps) r.push_back(p.evaluate(at).reordered(vo));
        return r;
    };
    SemiAlgebraicSystem out;
    out.order = vo;
    out.equations = conv(s.equations);
    out.nonzeros = conv(s.nonzeros);
    out.positives = conv(s.positives);
    out.nonnegatives = conv(s.nonnegatives);
    return out;
}

/// Re-express over another order containing every symbol used.
inline SemiAlgebraicSystem reorder(const SemiAlgebraicSystem& s, const OrderPtr& target)
{
    SemiAlgebraicSystem out;
    out.order = target;
    auto conv = [&](const std::vector<Polynomial>& ps) {
        std::vector<Polynomial> r;
        for (const auto& p : ps) r.push_back(p.reordered(target));
        return r;
    };
    out.equations = conv(s.equations);
    out.nonzeros = conv(s.nonzeros);
    out.positives = conv(s.positives);
    out.nonnegatives = conv(s.nonnegatives);
    return out;
}

}  // namespace sasolve
