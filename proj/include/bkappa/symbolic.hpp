#pragma once

/**
 * @file symbolic.hpp
 * @brief Exact rational linear combinations of a fixed set of transcendental
 * atoms (1, log p, log pi, Euler's gamma, zeta'/zeta and L'/L at negative
 * integers).
 *
 * Every kappa value is such a combination, so identities between them can be
 * checked with zero tolerance before any numerics happen.
 */

#include <compare>
#include <map>
#include <sstream>
#include <string>

#include "bkappa/arith.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/rational.hpp"

namespace bkappa {

struct Atom {
    enum class Kind {
        One,
        LogPrime,     ///< log(arg), arg prime
        LogPi,
        EulerGamma,
        ZetaLogDeriv, ///< zeta'(arg)/zeta(arg)
        LLogDeriv,    ///< L'(-1, chi_arg)/L(-1, chi_arg), arg != 1
    };

    Kind kind = Kind::One;
    long arg = 0;

    auto operator<=>(const Atom &) const = default;
};

inline std::string to_string(const Atom &a)
{
    switch (a.kind) {
    case Atom::Kind::One: return "1";
    case Atom::Kind::LogPrime: return "log(" + std::to_string(a.arg) + ")";
    case Atom::Kind::LogPi: return "log(pi)";
    case Atom::Kind::EulerGamma: return "gamma";
    case Atom::Kind::ZetaLogDeriv:
        return "zeta'(" + std::to_string(a.arg) + ")/zeta(" + std::to_string(a.arg) + ")";
    case Atom::Kind::LLogDeriv:
        return "L'(-1,chi_" + std::to_string(a.arg) + ")/L(-1,chi_" + std::to_string(a.arg) + ")";
    }
    return "?";
}

class LinearForm {
public:
    LinearForm() = default;

    static LinearForm atom(Atom a, const Rational &c = 1)
    {
        LinearForm f;
        if (c != 0)
            f.coeffs_.emplace(a, c);
        return f;
    }

    static LinearForm constant(const Rational &c) { return atom({Atom::Kind::One, 0}, c); }
    static LinearForm log_pi() { return atom({Atom::Kind::LogPi, 0}); }
    static LinearForm euler_gamma() { return atom({Atom::Kind::EulerGamma, 0}); }
    static LinearForm zeta_logderiv(long s) { return atom({Atom::Kind::ZetaLogDeriv, s}); }

    /// L'(-1,chi_d)/L(-1,chi_d); for d = 1 this is zeta'(-1)/zeta(-1).
    static LinearForm l_logderiv(long d)
    {
        return d == 1 ? zeta_logderiv(-1) : atom({Atom::Kind::LLogDeriv, d});
    }

    /// log of a positive rational, split over primes.
    static LinearForm log_of(const Rational &q)
    {
        if (q <= 0)
            throw Error(Errc::InvalidArgument, "log of a nonpositive rational");
        LinearForm f;
        auto add = [&](const Integer &z, int sign) {
            if (z == 1)
                return;
            for (const auto &[p, e] : factorize(to_long(z)))
                f += atom({Atom::Kind::LogPrime, p}, Rational(sign * e));
        };
        add(q.get_num(), 1);
        add(q.get_den(), -1);
        return f;
    }

    /// C = (log 4pi + gamma)/2.
    static LinearForm constant_C()
    {
        return log_of(2) + log_pi().scaled(make_rational(1, 2)) + euler_gamma().scaled(make_rational(1, 2));
    }

    /// C0 = log 2pi - gamma.
    static LinearForm constant_C0() { return log_of(2) + log_pi() - euler_gamma(); }

    const std::map<Atom, Rational> &coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    Rational coeff(const Atom &a) const
    {
        auto it = coeffs_.find(a);
        return it == coeffs_.end() ? Rational(0) : it->second;
    }

    LinearForm scaled(const Rational &c) const
    {
        if (c == 0)
            return {};
        LinearForm f = *this;
        for (auto &[a, v] : f.coeffs_)
            v *= c;
        return f;
    }

    LinearForm &operator+=(const LinearForm &o)
    {
        for (const auto &[a, v] : o.coeffs_) {
            auto &slot = coeffs_[a];
            slot += v;
            if (slot == 0)
                coeffs_.erase(a);
        }
        return *this;
    }

    LinearForm &operator-=(const LinearForm &o) { return *this += o.scaled(-1); }

    friend LinearForm operator+(LinearForm a, const LinearForm &b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm &b) { return a -= b; }
    friend LinearForm operator*(const Rational &c, const LinearForm &f) { return f.scaled(c); }
    friend bool operator==(const LinearForm &a, const LinearForm &b) { return a.coeffs_ == b.coeffs_; }

private:
    std::map<Atom, Rational> coeffs_;
};

inline std::string to_string(const LinearForm &f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[a, c] : f.coefficients()) {
        Rational mag = abs(c);
        os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
        if (a.kind == Atom::Kind::One)
            os << to_string(mag);
        else if (mag == 1)
            os << to_string(a);
        else
            os << to_string(mag) << "*" << to_string(a);
        first = false;
    }
    return os.str();
}

} // namespace bkappa
