#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "bkappa/errors.hpp"

namespace bkappa {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer &num, const Integer &den)
{
    if (den == 0)
        throw Error(Errc::InvalidArgument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1)
{
    return make_rational(Integer(num), Integer(den));
}

inline bool is_integer(const Rational &q) { return q.get_den() == 1; }

/// Canonical text form: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational &q) { return q.get_str(); }

inline std::string to_string(const Integer &z) { return z.get_str(); }

/// Accepts "p/q", "p", with an optional sign on p.
inline Rational parse_rational(std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
            s.remove_prefix(1);
        while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
            s.remove_suffix(1);
        return s;
    };
    auto parse_int = [](std::string_view s) {
        std::string_view digits = s;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
            digits.remove_prefix(1);
        if (digits.empty())
            throw Error(Errc::ParseError, "empty integer in rational literal");
        for (char c : digits)
            if (c < '0' || c > '9')
                throw Error(Errc::ParseError, "bad character in rational literal '" + std::string(s) + "'");
        std::string str(s.front() == '+' ? s.substr(1) : s);
        return Integer(str, 10);
    };
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text));
    Integer den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0)
        throw Error(Errc::ParseError, "zero denominator in '" + std::string(text) + "'");
    return make_rational(parse_int(trim(text.substr(0, slash))), den);
}

inline Integer ipow(const Integer &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rpow(const Rational &base, long e)
{
    if (e >= 0)
        return make_rational(ipow(base.get_num(), static_cast<unsigned long>(e)),
                             ipow(base.get_den(), static_cast<unsigned long>(e)));
    if (base == 0)
        throw Error(Errc::InvalidArgument, "zero to a negative power");
    return make_rational(ipow(base.get_den(), static_cast<unsigned long>(-e)),
                         ipow(base.get_num(), static_cast<unsigned long>(-e)));
}

/// Floor of a rational.
inline Integer floor(const Rational &q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Nonnegative residue of an integer modulo m > 0.
inline long mod_floor(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

inline long to_long(const Integer &z)
{
    if (!z.fits_slong_p())
        throw Error(Errc::InvalidArgument, "integer " + z.get_str() + " out of machine range");
    return z.get_si();
}

} // namespace bkappa
