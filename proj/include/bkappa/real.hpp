#pragma once

#include <algorithm>
#include <cmath>
#include <ios>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include "bkappa/errors.hpp"
#include "bkappa/rational.hpp"

namespace bkappa {

/// Variable-precision binary float backed by MPFR. New values take the
/// current default precision; results of arithmetic keep the widest operand.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Decimal digits carried beyond the requested precision.
inline constexpr int kGuardDigits = 10;

struct PrecisionConfig {
    int digits = 50;
    /// Euler-Maclaurin controls; 0 selects a default derived from `digits`.
    int em_direct = 0;
    int em_corrections = 0;

    int working_digits() const { return digits + kGuardDigits; }
    int direct_terms() const { return em_direct > 0 ? em_direct : digits + 10; }
    int correction_terms() const { return em_corrections > 0 ? em_corrections : digits / 2 + 15; }
    /// Significant digits printed for reported values.
    int report_digits() const { return std::max(digits - 20, 10); }

    void validate() const
    {
        if (digits < 15)
            throw Error(Errc::InvalidArgument, "precision must be at least 15 digits");
        if (em_direct < 0 || em_corrections < 0)
            throw Error(Errc::InvalidArgument, "Euler-Maclaurin term counts must be nonnegative");
    }
};

/// Sets the MPFR default precision for the lifetime of the scope.
/// The default is process-global: scopes must not overlap across threads.
class PrecisionScope {
public:
    explicit PrecisionScope(const PrecisionConfig &cfg) : saved_(Real::default_precision())
    {
        cfg.validate();
        Real::default_precision(static_cast<unsigned>(cfg.working_digits()));
    }
    explicit PrecisionScope(unsigned digits) : saved_(Real::default_precision())
    {
        Real::default_precision(digits);
    }
    ~PrecisionScope() { Real::default_precision(saved_); }

    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    unsigned saved_;
};

inline Real to_real(const Rational &q)
{
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const Integer &z)
{
    Real r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

inline Real real_pi()
{
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real euler_gamma()
{
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

/// Riemann zeta at a positive integer, straight from MPFR.
inline Real zeta_ui(unsigned long n)
{
    Real r;
    mpfr_zeta_ui(r.backend().data(), n, MPFR_RNDN);
    return r;
}

inline Real digamma(const Real &x)
{
    Real r;
    mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

/// x rounded to the current default precision. Copies of a Real keep the
/// source precision, so arguments built outside a scope are rebased first.
inline Real rebase(const Real &x)
{
    Real r;
    mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

/// 10^-k at the current default precision.
inline Real pow10_neg(int k)
{
    return boost::multiprecision::pow(Real(10), -k);
}

/// Decimal text with `sig` significant digits.
inline std::string to_decimal(const Real &x, int sig)
{
    return x.str(static_cast<std::streamsize>(std::max(sig, 1)), std::ios_base::fmtflags(0));
}

/// A complex number over `Real`; only the handful of operations the
/// Whittaker values need.
struct Complex {
    Real re;
    Real im;

    static Complex polar(const Real &r, const Real &theta)
    {
        return {r * boost::multiprecision::cos(theta), r * boost::multiprecision::sin(theta)};
    }

    Real abs() const { return boost::multiprecision::sqrt(re * re + im * im); }
    Real arg() const { return boost::multiprecision::atan2(im, re); }

    friend Complex operator*(const Complex &a, const Complex &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex &a, const Real &s) { return {a.re * s, a.im * s}; }
    friend Complex operator/(const Complex &a, const Complex &b)
    {
        Real n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
};

} // namespace bkappa
