#pragma once

/**
 * @file lfun.hpp
 * @brief Hurwitz zeta with its s-derivative by Euler-Maclaurin, Dirichlet
 * L-functions of quadratic characters built from it, and the real constants
 * that appear in kappa values.
 *
 * Euler-Maclaurin for zeta(s, x) with N direct terms and M corrections,
 * a = N + x:
 *
 *   sum_{k<N} (k+x)^-s + a^(1-s)/(s-1) + a^-s/2
 *     + sum_{j=1..M} B_2j/(2j)! (s)_(2j-1) a^(-s-2j+1)
 *
 * Each piece is differentiated in s alongside its value. The error is
 * estimated by the first omitted correction; this is a heuristic, not a
 * rigorous bound.
 */

#include <cmath>
#include <map>
#include <optional>

#include "bkappa/arith.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/real.hpp"
#include "bkappa/symbolic.hpp"

namespace bkappa {

struct HurwitzResult {
    Real value;
    Real deriv;
    Real err_estimate;
};

struct LDerivResult {
    Real value;
    Real deriv;
    /// deriv / value; empty when the value is zero to working precision
    /// (odd characters at negative odd s).
    std::optional<Real> logderiv;
    Real err_estimate;
};

namespace detail {

/// Value and s-derivative carried together.
struct Dual {
    Real v;
    Real d;
};

inline Dual operator*(const Dual &a, const Dual &b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }

/// Euler-Maclaurin pieces for zeta(s, x) except the a^(1-s)/(s-1) tail,
/// plus the error estimate. `log_a` receives log(N + x).
inline HurwitzResult hurwitz_without_tail(const Real &s, const Real &x, const PrecisionConfig &cfg, Real &log_a)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::log;

    const int N = cfg.direct_terms();
    const int M = cfg.correction_terms();
    HurwitzResult r{0, 0, 0};
    for (int k = 0; k < N; ++k) {
        const Real lk = log(Real(k) + x);
        const Real t = exp(-s * lk);
        r.value += t;
        r.deriv -= lk * t;
    }
    const Real a = Real(N) + x;
    log_a = log(a);
    const Real a_s = exp(-s * log_a);
    r.value += a_s / 2;
    r.deriv -= log_a * a_s / 2;

    const Real inv_a2 = 1 / (a * a);
    Dual rising{s, 1};     // (s)_(2j-1)
    Real pw = a_s / a;     // a^(-s-2j+1)
    Real fact = 2;         // (2j)!
    for (int j = 1; j <= M + 1; ++j) {
        const Real c = to_real(bernoulli_number(static_cast<unsigned>(2 * j))) / fact;
        const Real tv = c * rising.v * pw;
        const Real td = c * (rising.d * pw - rising.v * log_a * pw);
        if (j <= M) {
            r.value += tv;
            r.deriv += td;
        } else {
            r.err_estimate = std::max(abs(tv), abs(td));
        }
        rising = rising * Dual{s + (2 * j - 1), 1} * Dual{s + 2 * j, 1};
        pw *= inv_a2;
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return r;
}

} // namespace detail

/// zeta(s, x) and its s-derivative for real s != 1 and x in (0, 1].
inline HurwitzResult hurwitz_zeta_deriv(const Real &s_in, const Real &x_in, const PrecisionConfig &cfg)
{
    using boost::multiprecision::exp;

    if (s_in == 1)
        throw Error(Errc::PoleAtOne, "Hurwitz zeta has a pole at s = 1");
    if (x_in <= 0 || x_in > 1)
        throw Error(Errc::InvalidArgument, "Hurwitz parameter must lie in (0, 1]");
    PrecisionScope scope(cfg);
    const Real s = rebase(s_in), x = rebase(x_in);
    Real log_a;
    HurwitzResult r = detail::hurwitz_without_tail(s, x, cfg, log_a);
    const Real sm1 = s - 1;
    const Real tail = exp(-sm1 * log_a) / sm1;
    r.value += tail;
    r.deriv += -log_a * tail - tail / sm1;
    return r;
}

/// L(s, chi_d) and L'(s, chi_d) for d fundamental or 1.
inline LDerivResult dirichlet_L_deriv(const Real &s_in, long d, const PrecisionConfig &cfg)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::log;

    if (!is_fundamental_discriminant(d))
        throw Error(Errc::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
    PrecisionScope scope(cfg);
    const Real s = rebase(s_in);
    LDerivResult out;
    if (d == 1) {
        HurwitzResult h = hurwitz_zeta_deriv(s, Real(1), cfg);
        out.value = h.value;
        out.deriv = h.deriv;
        out.err_estimate = h.err_estimate;
    } else {
        const long f = d < 0 ? -d : d;
        const Real log_f = log(Real(f));
        Real sum = 0, dsum = 0, err = 0;
        // The a^(1-s)/(s-1) tails cancel to first order because sum chi = 0;
        // s = 1 needs their limit instead of a division by zero.
        const bool at_one = (s == 1);
        Real lim0 = 0, lim1 = 0;
        for (long a = 1; a <= f; ++a) {
            const int chi = kronecker_chi(d, a);
            if (chi == 0)
                continue;
            const Real x = Real(a) / Real(f);
            Real log_a;
            HurwitzResult h;
            if (at_one) {
                h = detail::hurwitz_without_tail(s, x, cfg, log_a);
                lim0 -= chi * log_a;
                lim1 += chi * log_a * log_a / 2;
            } else {
                h = hurwitz_zeta_deriv(s, x, cfg);
            }
            sum += chi * h.value;
            dsum += chi * h.deriv;
            err += h.err_estimate;
        }
        sum += lim0;
        dsum += lim1;
        const Real scale = exp(-s * log_f);
        out.value = scale * sum;
        out.deriv = scale * (dsum - log_f * sum);
        out.err_estimate = scale * err * (1 + log_f);
    }
    // rounding in the character sum costs a few guard digits, so zero means below 10^-digits
    if (abs(out.value) > 100 * out.err_estimate + pow10_neg(cfg.digits))
        out.logderiv = out.deriv / out.value;
    return out;
}

/// zeta'(s)/zeta(s) at s = -1 or -3.
inline Real zeta_logderiv(int point, const PrecisionConfig &cfg)
{
    if (point != -1 && point != -3)
        throw Error(Errc::InvalidArgument, "zeta_logderiv is provided at -1 and -3 only");
    PrecisionScope scope(cfg);
    HurwitzResult h = hurwitz_zeta_deriv(Real(point), Real(1), cfg);
    return h.deriv / h.value;
}

struct Constants {
    Real gamma;
    Real C;  ///< (log 4pi + gamma)/2
    Real C0; ///< log 2pi - gamma
    Real zeta3;
    Real zeta4;
    Real pi;
};

inline Constants constants(const PrecisionConfig &cfg)
{
    using boost::multiprecision::log;
    PrecisionScope scope(cfg);
    Constants c;
    c.pi = real_pi();
    c.gamma = euler_gamma();
    c.C = (log(4 * c.pi) + c.gamma) / 2;
    c.C0 = log(2 * c.pi) - c.gamma;
    c.zeta3 = zeta_ui(3);
    c.zeta4 = zeta_ui(4);
    return c;
}

/// Numeric values of symbolic atoms, cached per precision setting.
class AtomEvaluator {
public:
    explicit AtomEvaluator(PrecisionConfig cfg) : cfg_(cfg) {}

    const PrecisionConfig &config() const { return cfg_; }

    Real value(const Atom &a)
    {
        using boost::multiprecision::log;
        PrecisionScope scope(cfg_);
        if (auto it = cache_.find(a); it != cache_.end())
            return it->second;
        Real v;
        switch (a.kind) {
        case Atom::Kind::One: v = 1; break;
        case Atom::Kind::LogPrime: v = log(Real(a.arg)); break;
        case Atom::Kind::LogPi: v = log(real_pi()); break;
        case Atom::Kind::EulerGamma: v = euler_gamma(); break;
        case Atom::Kind::ZetaLogDeriv: v = zeta_logderiv(static_cast<int>(a.arg), cfg_); break;
        case Atom::Kind::LLogDeriv: {
            LDerivResult r = dirichlet_L_deriv(Real(-1), a.arg, cfg_);
            if (!r.logderiv)
                throw Error(Errc::InvalidArgument, "L(-1, chi_" + std::to_string(a.arg) + ") vanishes");
            v = *r.logderiv;
            break;
        }
        }
        cache_.emplace(a, v);
        return v;
    }

    Real evaluate(const LinearForm &f)
    {
        PrecisionScope scope(cfg_);
        Real sum = 0;
        for (const auto &[a, c] : f.coefficients())
            sum += to_real(c) * value(a);
        return sum;
    }

private:
    PrecisionConfig cfg_;
    std::map<Atom, Real> cache_;
};

} // namespace bkappa
