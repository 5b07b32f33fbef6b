#pragma once

#include <gmpxx.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sasolve {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

/// Canonical "num/den" text used by every serializer; the denominator is always present.
inline std::string to_fraction_string(const Rational& q)
{
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Human-facing form: integers print without a denominator.
inline std::string to_display_string(const Rational& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "7", "-3/4", "+2". Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto first = s.find_first_not_of(" \t");
    auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
    s = s.substr(first, last - first + 1);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-')
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    Integer d(den);
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(Integer(num), d);
    q.canonicalize();
    return q;
}

inline Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline Integer ceil_of(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

namespace detail {

// Open interval (lo, hi) with 0 <= lo < hi; a null hi means +infinity.
inline Rational simplest_nonnegative(const Rational& lo, const Rational* hi)
{
    Integer fl = floor_of(lo);
    if (hi == nullptr || Rational(fl + 1) < *hi) return Rational(fl + 1);
    Rational top = 1 / (*hi - fl);
    Rational r;
    if (Rational(fl) == lo) {
        r = Rational(fl) + 1 / simplest_nonnegative(top, nullptr);
    } else {
        Rational upper = 1 / (lo - fl);
        r = Rational(fl) + 1 / simplest_nonnegative(top, &upper);
    }
    r.canonicalize();
    return r;
}

}  // namespace detail

/// Simplest rational (smallest denominator) strictly inside (lo, hi).
inline Rational simplest_between(const Rational& lo, const Rational& hi)
{
    if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
    if (lo < 0 && hi > 0) return Rational(0);
    if (hi <= 0) {
        Rational nlo = -hi, nhi = -lo;
        return -detail::simplest_nonnegative(nlo, &nhi);
    }
    return detail::simplest_nonnegative(lo, &hi);
}

}  // namespace sasolve
