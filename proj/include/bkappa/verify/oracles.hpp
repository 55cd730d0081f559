#pragma once

/**
 * @file oracles.hpp
 * @brief Second, independent evaluation paths used only to check the main
 * numerics.
 *
 *  - Dirichlet L and L' of even characters from the theta integral of the
 *    completed L-function, evaluated at 1 - s and mapped back through the
 *    functional equation.
 *  - J(3/2, t) by Gauss-Legendre on geometric panels.
 *  - b_p'/b_p by a central difference of log b_p(n, s) in real s.
 *  - The m < 0 tail integral in closed form via erfc.
 */

#include <map>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/legendre.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>

#include "bkappa/arith.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/real.hpp"

namespace bkappa::verify {

struct FeResult {
    Real value;
    Real deriv;
    Real logderiv;
};

namespace detail {

/// psi(t) = sum_{n >= 1} chi_d(n) exp(-pi n^2 t / f), with chi tabulated
/// over one period.
inline Real theta_tail(const Real &t, const std::vector<int> &chi, long f, const Real &eps)
{
    using boost::multiprecision::exp;
    const Real q = exp(-real_pi() * t / Real(f));
    const Real q2 = q * q;
    Real qn2 = q;       // q^(n^2)
    Real step = q * q2; // q^(2n+1)
    Real sum = 0;
    for (long n = 1;; ++n) {
        const int c = chi[static_cast<std::size_t>(n % f)];
        if (c != 0)
            sum += c * qn2;
        if (qn2 < eps)
            break;
        qn2 *= step;
        step *= q2;
    }
    return sum;
}

/// Completed Lambda(s) and Lambda'(s) from
/// Lambda(s) = int_1^inf psi(t) (t^(s/2) + t^((1-s)/2)) dt/t  [- 1/s - 1/(1-s) for d = 1].
inline std::pair<Real, Real> completed(const Real &s, long d, const PrecisionConfig &cfg)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    const long f = d < 0 ? -d : d;
    std::vector<int> chi(static_cast<std::size_t>(f));
    for (long a = 0; a < f; ++a)
        chi[static_cast<std::size_t>(a)] = kronecker_chi(d, a == 0 ? f : a);
    const Real eps = pow10_neg(cfg.working_digits() + 5);
    const Real tol = pow10_neg(cfg.working_digits());
    // both integrals visit the same nodes
    std::map<Real, Real> psi_cache;
    auto psi = [&](const Real &t) -> Real {
        auto it = psi_cache.find(t);
        if (it == psi_cache.end())
            it = psi_cache.emplace(t, theta_tail(t, chi, f, eps)).first;
        return it->second;
    };
    boost::math::quadrature::exp_sinh<Real> rule;
    const Real inf = std::numeric_limits<Real>::infinity();
    auto lam = [&](const Real &t) -> Real {
        const Real lt = log(t);
        return psi(t) * (exp(s / 2 * lt) + exp((1 - s) / 2 * lt)) / t;
    };
    auto dlam = [&](const Real &t) -> Real {
        const Real lt = log(t);
        return psi(t) * lt / 2 * (exp(s / 2 * lt) - exp((1 - s) / 2 * lt)) / t;
    };
    Real L = rule.integrate(lam, Real(1), inf, tol);
    Real dL = rule.integrate(dlam, Real(1), inf, tol);
    if (d == 1) {
        L += -1 / s - 1 / (1 - s);
        dL += 1 / (s * s) - 1 / ((1 - s) * (1 - s));
    }
    return {L, dL};
}

} // namespace detail

/// L(s, chi_d), L'(s, chi_d) for d = 1 or a positive fundamental
/// discriminant, via Lambda(s) = Lambda(1 - s).
inline FeResult l_functional_equation(const Real &s_in, long d, const PrecisionConfig &cfg)
{
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    if (d < 1 || !is_fundamental_discriminant(d))
        throw Error(Errc::InvalidArgument, "theta oracle covers d = 1 and even characters only");
    PrecisionScope scope(cfg);
    const Real s = rebase(s_in);
    const Real pi = real_pi();
    const auto [lam, dlam_mirror] = detail::completed(1 - s, d, cfg);
    const Real dlam = -dlam_mirror;
    const Real fp = Real(d) / pi;
    const Real gamma_factor = pow(fp, s / 2) * boost::math::tgamma(s / 2);
    FeResult r;
    r.value = lam / gamma_factor;
    r.logderiv = dlam / lam - log(fp) / 2 - digamma(s / 2) / 2;
    r.deriv = r.logderiv * r.value;
    return r;
}

/// Completed zeta at s straight from the integral (no reflection); used to
/// validate the oracle itself against Lambda(2) = pi/6.
inline Real completed_zeta(const Real &s, const PrecisionConfig &cfg)
{
    PrecisionScope scope(cfg);
    return detail::completed(rebase(s), 1, cfg).first;
}

/// Gauss-Legendre nodes and weights on [-1, 1] at the current precision.
inline std::vector<std::pair<Real, Real>> gauss_legendre_rule(unsigned n)
{
    std::vector<std::pair<Real, Real>> rule;
    for (const Real &x : boost::math::legendre_p_zeros<Real>(static_cast<int>(n))) {
        const Real dp = boost::math::legendre_p_prime<Real>(static_cast<int>(n), x);
        const Real w = 2 / ((1 - x * x) * dp * dp);
        rule.emplace_back(x, w);
        if (x != 0)
            rule.emplace_back(-x, w);
    }
    return rule;
}

/// J(3/2, t) on panels [0,1/4], [1/4,1/2], [1/2,1], [1,2], ..., stopped when
/// the remaining tail is below the working precision.
inline Real j_integral_panels(const Real &t_in, const PrecisionConfig &cfg, unsigned points = 40)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::sqrt;
    PrecisionScope scope(cfg);
    const Real t = rebase(t_in);
    const auto rule = gauss_legendre_rule(points);
    const Real eps = pow10_neg(cfg.working_digits() + 2);
    auto g = [&](const Real &r) -> Real {
        const Real w = sqrt(1 + r);
        return exp(-t * r) * (w + 1 / (1 + w));
    };
    Real sum = 0;
    Real a = 0, b = Real(1) / 4;
    for (;;) {
        const Real mid = (a + b) / 2, half = (b - a) / 2;
        for (const auto &[x, w] : rule)
            sum += w * half * g(mid + half * x);
        // tail bound: int_b^inf e^(-tr)(sqrt(1+r) + 1) dr <= e^(-tb)(2 sqrt(1+b) + 1)/t for tb >= 1
        const Real tail = exp(-t * b) * (2 * sqrt(1 + b) + 1) / t;
        if (t * b >= 1 && tail < eps * abs(sum))
            break;
        a = b;
        b *= 2;
    }
    return sum;
}

/// b_p'(n,-1)/b_p(n,-1) / log p by central differences with step h.
inline Real local_b_logderiv_fd(long p, long n, long d, const Real &h)
{
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const int k = ord_p(p, n);
    const int chi = kronecker_chi(d, p);
    const Real P(p);
    auto b = [&](const Real &s) -> Real {
        const Real X = pow(P, -s);
        const Real num = 1 - chi * X + chi * pow(P, Real(k)) * pow(X, Real(2 * k + 1)) -
                         pow(P, Real(k + 1)) * pow(X, Real(2 * k + 2));
        return num / (1 - P * X * X);
    };
    const Real s0 = -1;
    return (log(b(s0 + h)) - log(b(s0 - h))) / (2 * h) / log(P);
}

/// int_1^inf e^(-c r) r^(-3/2) dr = 2 e^(-c) - 2 sqrt(pi c) erfc(sqrt c).
inline Real exp_tail_three_halves(const Real &c)
{
    using boost::multiprecision::erfc;
    using boost::multiprecision::exp;
    using boost::multiprecision::sqrt;
    return 2 * exp(-c) - 2 * sqrt(real_pi() * c) * erfc(sqrt(c));
}

} // namespace bkappa::verify
