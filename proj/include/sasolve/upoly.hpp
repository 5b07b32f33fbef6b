#pragma once

#include "sasolve/errors.hpp"
#include "sasolve/polynomial.hpp"

#include <vector>

namespace sasolve {

/// Dense univariate polynomial over Q, coefficients stored low degree first. Used by the
/// root-isolation and counting code where the sparse representation only gets in the way.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static UPoly from_polynomial(const Polynomial& p, std::size_t var)
    {
        UPoly u;
        u.c_.assign(p.degree(var) + 1, Rational(0));
        for (const auto& t : p.terms()) {
            for (std::size_t i = 0; i < t.exp.size(); ++i)
                if (i != var && t.exp[i]) throw DomainError("polynomial is not univariate in the requested symbol");
            u.c_[t.exp[var]] = t.coeff;
        }
        u.trim();
        return u;
    }

    /// Accepts constants and polynomials in at most one symbol.
    static UPoly from_univariate(const Polynomial& p)
    {
        auto vars = p.variables();
        if (vars.size() > 1) throw DomainError("polynomial is not univariate: " + p.to_string());
        if (vars.empty()) return UPoly({p.constant_value()});
        return from_polynomial(p, vars[0]);
    }

    Polynomial to_polynomial(const OrderPtr& order, std::size_t var) const
    {
        std::vector<Term> terms;
        for (std::size_t d = 0; d < c_.size(); ++d) {
            if (c_[d] == 0) continue;
            Monomial m(order->size(), 0);
            m[var] = static_cast<std::uint32_t>(d);
            terms.push_back({std::move(m), c_[d]});
        }
        return Polynomial::from_terms(order, std::move(terms));
    }

    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    const Rational& lc() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    Rational eval(const Rational& x) const
    {
        Rational acc = 0;
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    int sign_at(const Rational& x) const { return sgn(eval(x)); }

    /// Sign as x -> +infinity (positive) or -infinity (negative).
    int sign_at_infinity(bool positive) const
    {
        if (is_zero()) return 0;
        int s = sgn(lc());
        if (!positive && (degree() % 2 == 1)) s = -s;
        return s;
    }

    UPoly derivative() const
    {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
        return UPoly(std::move(d));
    }

    UPoly monic() const
    {
        if (is_zero()) return *this;
        UPoly u = *this;
        Rational l = lc();
        for (auto& x : u.c_) x /= l;
        return u;
    }

    UPoly operator-() const
    {
        UPoly u = *this;
        for (auto& x : u.c_) x = -x;
        return u;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b)
    {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return UPoly(std::move(r));
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

    friend UPoly operator*(const UPoly& a, const UPoly& b)
    {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }

    /// Euclidean division over Q.
    static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r)
    {
        if (b.is_zero()) throw DomainError("division by the zero polynomial");
        r = a;
        if (a.degree() < b.degree()) {
            q = UPoly();
            return;
        }
        std::vector<Rational> qc(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
        Rational inv = 1 / b.lc();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            auto shift = static_cast<std::size_t>(r.degree() - b.degree());
            Rational f = r.lc() * inv;
            qc[shift] = f;
            for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i + shift] -= f * b.c_[i];
            r.trim();
        }
        q = UPoly(std::move(qc));
    }

    friend UPoly operator%(const UPoly& a, const UPoly& b)
    {
        UPoly q, r;
        divmod(a, b, q, r);
        return r;
    }

    friend UPoly operator/(const UPoly& a, const UPoly& b)
    {
        UPoly q, r;
        divmod(a, b, q, r);
        return q;
    }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Integer coefficients with no common factor and the same sign as the input.
    UPoly primitive_integer() const
    {
        if (is_zero()) return *this;
        Integer den = 1, num = 0;
        for (const auto& x : c_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        for (const auto& x : c_) mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
        std::vector<Rational> r;
        r.reserve(c_.size());
        for (const auto& x : c_) {
            Rational y = x * den / num;
            y.canonicalize();
            r.push_back(y);
        }
        return UPoly(std::move(r));
    }

    /// Monic gcd (zero only if both inputs are zero), by the primitive remainder sequence.
    static UPoly gcd(UPoly a, UPoly b)
    {
        a = a.primitive_integer();
        b = b.primitive_integer();
        if (a.degree() < b.degree()) std::swap(a, b);
        while (!b.is_zero()) {
            UPoly r = a.pseudo_remainder(b).primitive_integer();
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// lc(b)^k * a mod b over the integers, for integral a and b.
    UPoly pseudo_remainder(const UPoly& b) const
    {
        std::vector<Rational> r = c_;
        const std::size_t db = b.c_.size() - 1;
        const Rational& lb = b.c_.back();
        while (r.size() > db && !r.empty()) {
            const Rational lr = r.back();
            const std::size_t shift = r.size() - 1 - db;
            for (auto& x : r) x *= lb;
            for (std::size_t i = 0; i <= db; ++i) r[shift + i] -= lr * b.c_[i];
            while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
        }
        return UPoly(std::move(r));
    }

    UPoly squarefree() const
    {
        if (degree() < 1) return monic();
        return (*this / gcd(*this, derivative())).monic();
    }

    /// p(x + a)
    UPoly taylor_shift(const Rational& a) const
    {
        std::vector<Rational> r = c_;
        const std::size_t n = r.size();
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;) r[j] += a * r[j + 1];
        return UPoly(std::move(r));
    }

    /// p(s * x)
    UPoly scale_variable(const Rational& s) const
    {
        UPoly u = *this;
        Rational f = 1;
        for (auto& x : u.c_) {
            x *= f;
            f *= s;
        }
        u.trim();
        return u;
    }

    /// x^deg * p(1/x)
    UPoly reversed() const
    {
        std::vector<Rational> r(c_.rbegin(), c_.rend());
        return UPoly(std::move(r));
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    int sign_variations() const
    {
        int v = 0, last = 0;
        for (const auto& x : c_) {
            int s = sgn(x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

}  // namespace sasolve
