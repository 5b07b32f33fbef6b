#pragma once

#include "sasolve/errors.hpp"
#include "sasolve/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace sasolve {

/// Ordered symbol table. The first `param_count` symbols are parameters, the rest are
/// variables; index order is the elimination order (index 0 is the smallest symbol).
class VariableOrder {
public:
    VariableOrder(std::vector<std::string> symbols, std::size_t param_count)
        : symbols_(std::move(symbols)), param_count_(param_count)
    {
        if (param_count_ > symbols_.size())
            throw InputError("parameter count exceeds number of symbols");
        std::set<std::string> seen;
        for (const auto& s : symbols_) {
            if (s.empty()) throw InputError("empty symbol name");
            if (!seen.insert(s).second) throw InputError("duplicate symbol '" + s + "'");
        }
    }

    std::size_t size() const { return symbols_.size(); }
    std::size_t param_count() const { return param_count_; }
    std::size_t var_count() const { return symbols_.size() - param_count_; }
    bool is_parameter(std::size_t i) const { return i < param_count_; }
    const std::string& name(std::size_t i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    std::optional<std::size_t> index_of(std::string_view s) const
    {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] == s) return i;
        return std::nullopt;
    }

    std::size_t require(std::string_view s) const
    {
        auto i = index_of(s);
        if (!i) throw InputError("unknown symbol '" + std::string(s) + "'");
        return *i;
    }

    friend bool operator==(const VariableOrder& a, const VariableOrder& b)
    {
        return a.param_count_ == b.param_count_ && a.symbols_ == b.symbols_;
    }

private:
    std::vector<std::string> symbols_;
    std::size_t param_count_;
};

using OrderPtr = std::shared_ptr<const VariableOrder>;

inline OrderPtr make_order(std::vector<std::string> symbols, std::size_t param_count = 0)
{
    return std::make_shared<const VariableOrder>(std::move(symbols), param_count);
}

using Monomial = std::vector<std::uint32_t>;

/// Pure lexicographic comparison; the highest-index symbol is most significant.
inline int lex_compare(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

struct Term {
    Monomial exp;
    Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly decreasing in lex order
/// with no zero coefficients; the zero polynomial has no terms. A polynomial without an
/// order is a bare rational constant and adopts the order of whatever it is combined with.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(OrderPtr order) : order_(std::move(order)) {}
    Polynomial(OrderPtr order, const Rational& c) : order_(std::move(order))
    {
        if (c != 0) terms_.push_back({Monomial(nvars(), 0), c});
    }
    // NOLINTNEXTLINE(google-explicit-constructor)
    Polynomial(const Rational& c) : Polynomial(nullptr, c) {}
    // NOLINTNEXTLINE(google-explicit-constructor)
    Polynomial(long c) : Polynomial(nullptr, Rational(c)) {}

    static Polynomial variable(OrderPtr order, std::size_t index, std::uint32_t power = 1)
    {
        Polynomial p(order);
        if (index >= order->size()) throw InputError("variable index out of range");
        Monomial m(order->size(), 0);
        m[index] = power;
        p.terms_.push_back({std::move(m), Rational(1)});
        return p;
    }

    static Polynomial variable(OrderPtr order, std::string_view name, std::uint32_t power = 1)
    {
        auto i = order->require(name);
        return variable(std::move(order), i, power);
    }

    /// Builds from arbitrary (unsorted, possibly repeated) terms.
    static Polynomial from_terms(OrderPtr order, std::vector<Term> terms)
    {
        Polynomial p(std::move(order));
        p.terms_ = std::move(terms);
        p.canonicalize();
        return p;
    }

    const OrderPtr& order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const
    {
        if (terms_.empty()) return true;
        if (terms_.size() > 1) return false;
        for (auto e : terms_[0].exp)
            if (e) return false;
        return true;
    }

    Rational constant_value() const
    {
        if (!is_constant()) throw DomainError("polynomial is not constant");
        return terms_.empty() ? Rational(0) : terms_[0].coeff;
    }

    const Rational& leading_term_coeff() const { return terms_.front().coeff; }

    /// Highest-index symbol with a positive exponent; read off the lex-leading term.
    std::optional<std::size_t> leading_variable() const
    {
        if (terms_.empty()) return std::nullopt;
        const auto& e = terms_[0].exp;
        for (std::size_t i = e.size(); i-- > 0;)
            if (e[i]) return i;
        return std::nullopt;
    }

    std::uint32_t degree(std::size_t var) const
    {
        std::uint32_t d = 0;
        for (const auto& t : terms_)
            if (var < t.exp.size()) d = std::max(d, t.exp[var]);
        return d;
    }

    std::uint32_t total_degree() const
    {
        std::uint32_t d = 0;
        for (const auto& t : terms_) {
            std::uint32_t s = 0;
            for (auto e : t.exp) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    bool depends_on(std::size_t var) const { return degree(var) > 0; }

    std::vector<std::size_t> variables() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < nvars(); ++i)
            if (depends_on(i)) out.push_back(i);
        return out;
    }

    /// Coefficients of the univariate view in `var`, indexed by degree.
    std::vector<Polynomial> coefficients(std::size_t var) const
    {
        std::vector<Polynomial> out(degree(var) + 1, Polynomial(order_));
        for (const auto& t : terms_) {
            Term c = t;
            auto d = c.exp[var];
            c.exp[var] = 0;
            out[d].terms_.push_back(std::move(c));
        }
        // Terms sharing a degree in `var` stay sorted once that exponent is cleared.
        return out;
    }

    static Polynomial from_coefficients(OrderPtr order, std::size_t var,
                                        const std::vector<Polynomial>& coeffs)
    {
        std::vector<Term> terms;
        for (std::size_t d = 0; d < coeffs.size(); ++d) {
            auto c = coeffs[d].lifted(order);
            for (auto t : c.terms_) {
                t.exp[var] += static_cast<std::uint32_t>(d);
                terms.push_back(std::move(t));
            }
        }
        return from_terms(std::move(order), std::move(terms));
    }

    Polynomial leading_coefficient(std::size_t var) const
    {
        if (is_zero()) return *this;
        return coefficients(var).back();
    }

    /// Leading coefficient in the leading variable; a constant is its own initial.
    Polynomial initial() const
    {
        auto lv = leading_variable();
        if (!lv) return *this;
        return leading_coefficient(*lv);
    }

    Polynomial derivative(std::size_t var) const
    {
        Polynomial p(order_);
        for (const auto& t : terms_) {
            if (t.exp[var] == 0) continue;
            Term d = t;
            d.coeff *= t.exp[var];
            d.exp[var] -= 1;
            p.terms_.push_back(std::move(d));
        }
        p.canonicalize();
        return p;
    }

    /// Partial evaluation. Keys must be symbol indices of this polynomial's order.
    Polynomial evaluate(const std::map<std::size_t, Rational>& at) const
    {
        Polynomial p(order_);
        std::map<std::pair<std::size_t, std::uint32_t>, Rational> cache;
        auto power = [&](std::size_t v, std::uint32_t e) -> const Rational& {
            auto key = std::make_pair(v, e);
            auto it = cache.find(key);
            if (it != cache.end()) return it->second;
            Rational r = 1;
            const Rational& base = at.at(v);
            for (std::uint32_t i = 0; i < e; ++i) r *= base;
            return cache.emplace(key, r).first->second;
        };
        for (const auto& t : terms_) {
            Term n = t;
            for (const auto& [v, _] : at) {
                if (v >= n.exp.size()) throw InputError("evaluation point outside the order");
                if (n.exp[v]) {
                    n.coeff *= power(v, n.exp[v]);
                    n.exp[v] = 0;
                }
            }
            if (n.coeff != 0) p.terms_.push_back(std::move(n));
        }
        p.canonicalize();
        return p;
    }

    Rational evaluate_full(const std::map<std::size_t, Rational>& at) const
    {
        auto r = evaluate(at);
        if (!r.is_constant()) throw DomainError("evaluation point does not fix every symbol");
        return r.constant_value();
    }

    Polynomial operator-() const
    {
        Polynomial p = *this;
        for (auto& t : p.terms_) t.coeff = -t.coeff;
        return p;
    }

    Polynomial scaled(const Rational& c) const
    {
        if (c == 0) return Polynomial(order_);
        Polynomial p = *this;
        for (auto& t : p.terms_) t.coeff *= c;
        return p;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        auto ord = common_order(a, b);
        if (a.is_zero() || b.is_zero()) return Polynomial(ord);
        if (a.is_constant()) return b.lifted(ord).scaled(a.constant_value());
        if (b.is_constant()) return a.lifted(ord).scaled(b.constant_value());
        const Polynomial& small = a.size() <= b.size() ? a : b;
        const Polynomial& large = a.size() <= b.size() ? b : a;
        std::vector<Term> out;
        out.reserve(small.size() * large.size());
        const std::size_t n = ord->size();
        for (const auto& s : small.terms_) {
            for (const auto& l : large.terms_) {
                Term t{Monomial(n), s.coeff * l.coeff};
                for (std::size_t i = 0; i < n; ++i) t.exp[i] = s.exp[i] + l.exp[i];
                out.push_back(std::move(t));
            }
        }
        return from_terms(ord, std::move(out));
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial pow(std::uint32_t e) const
    {
        Polynomial result(order_, Rational(1));
        Polynomial base = *this;
        while (e) {
            if (e & 1U) result *= base;
            e >>= 1U;
            if (e) base *= base;
        }
        return result;
    }

    /// Replace every occurrence of `var` by `e`, expanding to canonical form.
    Polynomial substitute(std::size_t var, const Polynomial& e) const
    {
        auto ord = common_order(*this, e);
        auto coeffs = lifted(ord).coefficients(var);
        // Horner in the substituted expression.
        Polynomial acc(ord);
        for (std::size_t d = coeffs.size(); d-- > 0;) acc = acc * e + coeffs[d];
        return acc;
    }

    /// Multiply through by the positive rational that makes every coefficient an integer with
    /// gcd 1 and the lex-leading coefficient positive. Zero sets are unchanged.
    Polynomial primitive() const
    {
        if (is_zero()) return *this;
        Integer l = 1, g = 0;
        for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
        for (const auto& t : terms_) {
            Integer v = t.coeff.get_num() * (l / t.coeff.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        }
        Rational factor(l, g);
        factor.canonicalize();
        if (terms_.front().coeff < 0) factor = -factor;
        return scaled(factor);
    }

    /// Divides by the lex-leading coefficient.
    Polynomial monic() const
    {
        if (is_zero()) return *this;
        return scaled(1 / terms_.front().coeff);
    }

    /// Re-express over another order containing every symbol this polynomial uses.
    Polynomial reordered(OrderPtr target) const
    {
        if (!order_) return lifted(target);
        std::vector<std::size_t> map(order_->size());
        for (std::size_t i = 0; i < order_->size(); ++i) {
            auto j = target->index_of(order_->name(i));
            if (!j) {
                if (depends_on(i))
                    throw InputError("symbol '" + order_->name(i) + "' missing from target order");
                map[i] = static_cast<std::size_t>(-1);
            } else {
                map[i] = *j;
            }
        }
        std::vector<Term> out;
        for (const auto& t : terms_) {
            Term n{Monomial(target->size(), 0), t.coeff};
            for (std::size_t i = 0; i < t.exp.size(); ++i)
                if (t.exp[i]) n.exp[map[i]] = t.exp[i];
            out.push_back(std::move(n));
        }
        return from_terms(std::move(target), std::move(out));
    }

    /// Attach an order to an order-less constant (no-op otherwise).
    Polynomial lifted(const OrderPtr& target) const
    {
        if (order_ || !target) return *this;
        Polynomial p(target);
        for (const auto& t : terms_) p.terms_.push_back({Monomial(target->size(), 0), t.coeff});
        return p;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        if (a.terms_.size() != b.terms_.size()) return false;
        if (a.is_constant() && b.is_constant()) return a.constant_value() == b.constant_value();
        if (a.order_ && b.order_ && a.order_ != b.order_ && !(*a.order_ == *b.order_)) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
            if (a.terms_[i].exp != b.terms_[i].exp) return false;
        }
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Strict weak order for use as a set key (not a mathematical ordering).
    friend bool operator<(const Polynomial& a, const Polynomial& b)
    {
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = lex_compare(a.terms_[i].exp, b.terms_[i].exp);
            if (c) return c < 0;
            int s = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
            if (s) return s < 0;
        }
        return a.terms_.size() < b.terms_.size();
    }

    /// Canonical text: descending lex order, explicit `*` and `^`.
    std::string to_string() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rational c = t.coeff;
            bool neg = c < 0;
            if (neg) c = -c;
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            std::string mono;
            for (std::size_t i = t.exp.size(); i-- > 0;) {
                if (!t.exp[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += order_->name(i);
                if (t.exp[i] > 1) mono += "^" + std::to_string(t.exp[i]);
            }
            if (mono.empty()) {
                os << to_display_string(c);
            } else if (c == 1) {
                os << mono;
            } else {
                os << to_display_string(c) << "*" << mono;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

    static OrderPtr common_order(const Polynomial& a, const Polynomial& b)
    {
        if (!a.order_) return b.order_;
        if (!b.order_) return a.order_;
        if (a.order_ != b.order_ && !(*a.order_ == *b.order_))
            throw OrderMismatch("polynomials live over different variable orders");
        return a.order_;
    }

private:
    std::size_t nvars() const { return order_ ? order_->size() : 0; }

    void canonicalize()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return lex_compare(x.exp, y.exp) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().exp == t.exp) {
                out.back().coeff += t.coeff;
            } else {
                if (!out.empty() && out.back().coeff == 0) out.pop_back();
                out.push_back(std::move(t));
            }
        }
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        terms_ = std::move(out);
    }

    static Polynomial merge(const Polynomial& a0, const Polynomial& b0, bool subtract)
    {
        auto ord = common_order(a0, b0);
        Polynomial a = a0.lifted(ord), b = b0.lifted(ord);
        Polynomial p(ord);
        p.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            int c = i == a.size() ? -1 : j == b.size() ? 1 : lex_compare(a.terms_[i].exp, b.terms_[j].exp);
            if (c > 0) {
                p.terms_.push_back(a.terms_[i++]);
            } else if (c < 0) {
                Term t = b.terms_[j++];
                if (subtract) t.coeff = -t.coeff;
                p.terms_.push_back(std::move(t));
            } else {
                Rational s = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                      : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (s != 0) p.terms_.push_back({a.terms_[i].exp, s});
                ++i;
                ++j;
            }
        }
        return p;
    }

    OrderPtr order_;
    std::vector<Term> terms_;
};

inline Polynomial constant(const OrderPtr& order, const Rational& c) { return Polynomial(order, c); }

/// Index of the leading variable, or -1 for constants ("class" in characteristic-set terms).
inline long poly_class(const Polynomial& p)
{
    auto lv = p.leading_variable();
    return lv ? static_cast<long>(*lv) : -1L;
}

/// True when only parameters occur (constants included).
inline bool parameters_only(const Polynomial& p)
{
    if (!p.order()) return true;
    return poly_class(p) < static_cast<long>(p.order()->param_count());
}

}  // namespace sasolve
