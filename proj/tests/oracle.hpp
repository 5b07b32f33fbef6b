#pragma once

// Independent real-solution counter: exact rational interval arithmetic with Krawczyk
// existence/uniqueness tests over a subdivided box. Counts nonsingular solutions only and
// gives up (nullopt) when a box cannot be resolved.

#include "sasolve/polynomial.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <vector>

namespace sasolve::oracle {

struct Iv {
    Rational lo, hi;
};

inline Iv operator+(const Iv& a, const Iv& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Iv operator-(const Iv& a, const Iv& b) { return {a.lo - b.hi, a.hi - b.lo}; }

inline Iv operator*(const Iv& a, const Iv& b)
{
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    Iv r{p[0], p[0]};
    for (const auto& x : p) {
        if (x < r.lo) r.lo = x;
        if (r.hi < x) r.hi = x;
    }
    return r;
}

inline Iv scale(const Rational& c, const Iv& a) { return c < 0 ? Iv{c * a.hi, c * a.lo} : Iv{c * a.lo, c * a.hi}; }

inline Iv power(const Iv& a, unsigned n)
{
    if (n == 0) return {1, 1};
    Iv r = a;
    for (unsigned i = 1; i < n; ++i) r = r * a;
    if (n % 2 == 0 && a.lo < 0 && 0 < a.hi) r.lo = 0;
    return r;
}

inline bool has_zero(const Iv& a) { return a.lo <= 0 && 0 <= a.hi; }

using Box = std::vector<Iv>;

inline Iv eval(const Polynomial& p, const Box& x)
{
    Iv sum{0, 0};
    for (const auto& t : p.terms()) {
        Iv m{1, 1};
        for (std::size_t v = 0; v < t.exp.size(); ++v)
            if (t.exp[v]) m = m * power(x[v], t.exp[v]);
        sum = sum + scale(t.coeff, m);
    }
    return sum;
}

inline Rational eval_point(const Polynomial& p, const std::vector<Rational>& x)
{
    std::map<std::size_t, Rational> at;
    for (std::size_t i = 0; i < x.size(); ++i) at[i] = x[i];
    return p.evaluate(at).constant_value();
}

// Approximate inverse in floating point, returned exactly as rationals.
inline std::optional<std::vector<std::vector<Rational>>> approximate_inverse(const std::vector<std::vector<Rational>>& a)
{
    const std::size_t n = a.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(2 * n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j].get_d();
        m[i][n + i] = 1.0;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (!(std::fabs(m[piv][c]) > 1e-200) || !std::isfinite(m[piv][c])) return std::nullopt;
        std::swap(m[c], m[piv]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = m[r][c] / m[c][c];
            for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double v = m[i][n + j] / m[i][i];
            if (!std::isfinite(v)) return std::nullopt;
            inv[i][j] = Rational(v);
        }
    return inv;
}

struct System {
    std::vector<Polynomial> equations;
    std::vector<Polynomial> positives;
    std::vector<std::vector<Polynomial>> jacobian;

    System(std::vector<Polynomial> eqs, std::vector<Polynomial> pos) : equations(std::move(eqs)), positives(std::move(pos))
    {
        const std::size_t n = equations.size();
        for (const auto& f : equations) {
            std::vector<Polynomial> row;
            for (std::size_t v = 0; v < n; ++v) row.push_back(f.derivative(v));
            jacobian.push_back(std::move(row));
        }
    }

    // Krawczyk image of box x, or nullopt if the midpoint Jacobian is numerically singular.
    std::optional<Box> krawczyk(const Box& x) const
    {
        const std::size_t n = x.size();
        std::vector<Rational> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = (x[i].lo + x[i].hi) / 2;
        std::vector<Rational> fm(n);
        for (std::size_t i = 0; i < n; ++i) fm[i] = eval_point(equations[i], m);
        std::vector<std::vector<Rational>> jm(n, std::vector<Rational>(n));
        std::vector<std::vector<Iv>> jx(n, std::vector<Iv>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                jm[i][j] = eval_point(jacobian[i][j], m);
                jx[i][j] = eval(jacobian[i][j], x);
            }
        auto y = approximate_inverse(jm);
        if (!y) return std::nullopt;
        Box k(n);
        for (std::size_t i = 0; i < n; ++i) {
            Rational c = m[i];
            for (std::size_t j = 0; j < n; ++j) c -= (*y)[i][j] * fm[j];
            Iv acc{c, c};
            for (std::size_t l = 0; l < n; ++l) {
                Iv e{i == l ? Rational(1) : Rational(0), i == l ? Rational(1) : Rational(0)};
                for (std::size_t j = 0; j < n; ++j) e = e - scale((*y)[i][j], jx[j][l]);
                acc = acc + e * Iv{x[l].lo - m[l], x[l].hi - m[l]};
            }
            k[i] = acc;
        }
        return k;
    }
};

inline bool strictly_inside(const Box& k, const Box& x)
{
    for (std::size_t i = 0; i < k.size(); ++i)
        if (!(x[i].lo < k[i].lo && k[i].hi < x[i].hi)) return false;
    return true;
}

inline bool disjoint(const Box& k, const Box& x)
{
    for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i].hi < x[i].lo || x[i].hi < k[i].lo) return true;
    return false;
}

// Distinct real solutions in the open box (-bound, bound)^n at which every positive
// constraint holds.
inline std::optional<int> count_in_box(const std::vector<Polynomial>& eqs, const std::vector<Polynomial>& positives,
                                       const Rational& bound, unsigned max_depth = 60, std::size_t max_boxes = 200000)
{
    System sys(eqs, positives);
    const std::size_t n = eqs.size();
    struct Job {
        Box x;
        unsigned depth;
    };
    std::vector<Job> stack{{Box(n, Iv{-bound, bound}), 0}};
    int count = 0;
    std::size_t processed = 0;
    while (!stack.empty()) {
        Job job = std::move(stack.back());
        stack.pop_back();
        if (job.depth > max_depth || ++processed > max_boxes) return std::nullopt;
        bool excluded = false;
        for (const auto& f : sys.equations)
            if (!has_zero(eval(f, job.x))) {
                excluded = true;
                break;
            }
        if (excluded) continue;
        auto k = sys.krawczyk(job.x);
        if (k && disjoint(*k, job.x)) continue;
        if (k && strictly_inside(*k, job.x)) {
            // Unique solution in *k; contract until every constraint has a definite sign.
            Box r = *k;
            bool decided = false, ok = true;
            for (int it = 0; it < 40 && !decided; ++it) {
                decided = true;
                ok = true;
                for (const auto& g : sys.positives) {
                    Iv v = eval(g, r);
                    if (has_zero(v)) {
                        decided = false;
                        break;
                    }
                    if (v.hi < 0) ok = false;
                }
                if (decided) break;
                auto next = sys.krawczyk(r);
                if (!next) return std::nullopt;
                for (std::size_t i = 0; i < n; ++i) {
                    if (r[i].lo < (*next)[i].lo) r[i].lo = (*next)[i].lo;
                    if ((*next)[i].hi < r[i].hi) r[i].hi = (*next)[i].hi;
                }
            }
            if (!decided) return std::nullopt;
            if (ok) ++count;
            continue;
        }
        std::size_t w = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (job.x[w].hi - job.x[w].lo < job.x[i].hi - job.x[i].lo) w = i;
        // Off-centre split so that small rational solutions do not land on a face.
        Rational mid = job.x[w].lo + (job.x[w].hi - job.x[w].lo) * Rational(509, 1000);
        Box a = job.x, b = job.x;
        a[w].hi = mid;
        b[w].lo = mid;
        stack.push_back({std::move(a), job.depth + 1});
        stack.push_back({std::move(b), job.depth + 1});
    }
    return count;
}

}  // namespace sasolve::oracle
