#pragma once

/**
 * @file eisen.hpp
 * @brief Fourier coefficients of the weight n/2 + 1 Eisenstein series and
 * their derivative terms: values a_mu(m), cycle degrees, the limiting
 * coefficients kappa_mu(m), the finite-v terms b_mu(m, v), and the
 * archimedean Whittaker values for general n.
 *
 * Only n = 3 has exact coefficient data (Cohen numbers H(2, 4m)); the other
 * signatures are accepted by `whittaker_arch` alone.
 */

#include <limits>
#include <optional>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bkappa/arith.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/lfun.hpp"
#include "bkappa/rational.hpp"
#include "bkappa/real.hpp"
#include "bkappa/symbolic.hpp"

namespace bkappa {

/// Signature (n, 2) data.
struct SignatureContext {
    int n = 3;
    Rational ell;      ///< n/2 - 1
    Rational s0;       ///< n/2
    Rational weight_e; ///< n/2 + 1
    /// zeta(-1) zeta(-3) for n = 3; unknown elsewhere.
    std::optional<Rational> vol_X;

    static SignatureContext make(int n)
    {
        if (n < 1)
            throw Error(Errc::InvalidArgument, "signature needs n >= 1");
        SignatureContext c;
        c.n = n;
        c.s0 = make_rational(n, 2);
        c.ell = c.s0 - 1;
        c.weight_e = c.s0 + 1;
        if (n == 3)
            c.vol_X = l_value_neg(2, 1) * l_value_neg(4, 1);
        return c;
    }

    static SignatureContext n3() { return make(3); }
};

namespace detail {

inline void require_n3(const SignatureContext &ctx)
{
    if (ctx.n != 3)
        throw Error(Errc::UnsupportedSignature, "only signature (3,2) has exact coefficient data, got n = " +
                                                    std::to_string(ctx.n));
}

inline void require_mu(int mu)
{
    if (mu != 0 && mu != 1)
        throw Error(Errc::InvalidArgument, "coset index must be 0 or 1");
}

/// 4m as an integer; throws NonIntegral otherwise.
inline long four_m(const Rational &m)
{
    const Rational f = 4 * m;
    if (!is_integer(f))
        throw Error(Errc::NonIntegral, "4m = " + to_string(f) + " is not an integer");
    return to_long(f.get_num());
}

/// 4m = mu mod 4, with the nonnegative residue (also for m < 0).
inline bool on_coset(int mu, const Rational &m) { return mod_floor(four_m(m), 4) == mu; }

/// int_1^inf e^(-c r) r^(-p) dr for c > 0.
inline Real exp_power_tail(const Real &c_in, const Real &p_in, const PrecisionConfig &cfg)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    PrecisionScope scope(cfg);
    const Real c = rebase(c_in), p = rebase(p_in);
    boost::math::quadrature::exp_sinh<Real> rule;
    auto g = [&](const Real &r) -> Real { return exp(-c * r) * pow(r, -p); };
    return rule.integrate(g, Real(1), std::numeric_limits<Real>::infinity(), pow10_neg(cfg.working_digits()));
}

/// Principal-branch z^a.
inline Complex cpow(const Complex &z, const Real &a)
{
    return Complex::polar(boost::multiprecision::pow(z.abs(), a), a * z.arg());
}

} // namespace detail

/// a_mu(m): 1 at m = 0 for mu = 0, else 120 H(2, 4m) on the coset.
inline Rational eis_value_coeff(const SignatureContext &ctx, int mu, const Rational &m)
{
    detail::require_n3(ctx);
    detail::require_mu(mu);
    if (m < 0)
        throw Error(Errc::InvalidArgument, "a_mu(m) needs m >= 0");
    const long N = detail::four_m(m);
    if (N == 0)
        return mu == 0 ? 1 : 0;
    if (!detail::on_coset(mu, m))
        return 0;
    return cohen_H(2, N) / l_value_neg(4, 1);
}

/// deg Z(m, phi_mu) = -H(2, 4m)/12 on the coset.
inline Rational degree_Z(int mu, const Rational &m)
{
    detail::require_mu(mu);
    if (m <= 0)
        throw Error(Errc::InvalidArgument, "degree_Z needs m > 0");
    if (!detail::on_coset(mu, m))
        return 0;
    return l_value_neg(2, 1) * cohen_H(2, detail::four_m(m));
}

/// The named pieces of kappa_mu(m). For m > 0 the value is
/// prefactor * (constant_block + disc_log + l_term + sum of prime terms);
/// for m = 0 it is prefactor * constant_block. This grouping is one fixed
/// convention; terms could be moved between blocks without changing kappa.
struct KappaBreakdown {
    struct PrimeTerm {
        long p = 2;
        int k = 0;                ///< ord_p(n)
        Rational log_abs_coeff;   ///< log|n|_p = log_abs_coeff * log p
        Rational local_coeff;     ///< -b_p'/b_p = local_coeff * log p

        LinearForm form() const { return LinearForm::log_of(p).scaled(log_abs_coeff + local_coeff); }
    };

    Rational prefactor = 0;
    long n = 1;
    long d = 1;
    LinearForm constant_block; ///< 4/3 + 2 zeta'(-3)/zeta(-3) - C, or C0 at m = 0
    LinearForm disc_log;       ///< -(1/2) log d
    LinearForm l_term;         ///< -L'(-1, chi_d)/L(-1, chi_d)
    std::vector<PrimeTerm> primes;

    LinearForm bracket() const
    {
        LinearForm b = constant_block + disc_log + l_term;
        for (const auto &t : primes)
            b += t.form();
        return b;
    }

    LinearForm recombine() const { return bracket().scaled(prefactor); }
};

struct KappaTerm {
    Rational m;
    int mu = 0;
    LinearForm symbolic;
    Real numeric;
    KappaBreakdown breakdown;
};

/// 4/3 + 2 zeta'(-3)/zeta(-3) - C.
inline LinearForm kappa_constant_block()
{
    return LinearForm::constant(make_rational(4, 3)) + LinearForm::zeta_logderiv(-3).scaled(2) -
           LinearForm::constant_C();
}

/// Symbolic kappa_mu(m) with its breakdown; no numerics.
inline KappaBreakdown kappa_mu_breakdown(int mu, const Rational &m)
{
    detail::require_mu(mu);
    if (m < 0)
        throw Error(Errc::InvalidArgument, "kappa_mu(m) needs m >= 0");
    KappaBreakdown b;
    const long N = detail::four_m(m);
    if (N == 0) {
        if (mu == 0) {
            b.prefactor = make_rational(1, 2);
            b.constant_block = LinearForm::constant_C0();
        }
        return b;
    }
    if (!detail::on_coset(mu, m))
        return b;
    const FundDiscDecomp dec = fund_disc_decompose(m);
    b.n = dec.n;
    b.d = dec.d;
    b.prefactor = cohen_H(2, N) / l_value_neg(4, 1);
    b.constant_block = kappa_constant_block();
    if (dec.d != 1)
        b.disc_log = LinearForm::log_of(dec.d).scaled(make_rational(-1, 2));
    b.l_term = LinearForm::l_logderiv(dec.d).scaled(-1);
    for (const auto &[p, k] : factorize(dec.n)) {
        KappaBreakdown::PrimeTerm t;
        t.p = p;
        t.k = k;
        t.log_abs_coeff = -k;
        t.local_coeff = -local_b_logderiv(p, dec.n, dec.d);
        b.primes.push_back(t);
    }
    return b;
}

inline KappaTerm kappa_mu(int mu, const Rational &m, AtomEvaluator &eval)
{
    KappaTerm t;
    t.m = m;
    t.mu = mu;
    t.breakdown = kappa_mu_breakdown(mu, m);
    t.symbolic = t.breakdown.recombine();
    t.numeric = eval.evaluate(t.symbolic);
    return t;
}

inline KappaTerm kappa_mu(int mu, const Rational &m, const PrecisionConfig &cfg)
{
    AtomEvaluator eval(cfg);
    return kappa_mu(mu, m, eval);
}

/// J(3/2, t) = int_0^inf e^(-tr) ((1+r)^(3/2) - 1)/r dr.
inline Real j_integral(const Real &t_in, const PrecisionConfig &cfg)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::sqrt;
    if (!(t_in > 0))
        throw Error(Errc::NonPositiveT, "J(3/2, t) needs t > 0");
    PrecisionScope scope(cfg);
    const Real t = rebase(t_in);
    // ((1+r)^(3/2) - 1)/r = sqrt(1+r) + 1/(1 + sqrt(1+r)) without cancellation at r = 0
    auto g = [&](const Real &r) -> Real {
        const Real w = sqrt(1 + r);
        return exp(-t * r) * (w + 1 / (1 + w));
    };
    boost::math::quadrature::exp_sinh<Real> rule;
    return rule.integrate(g, Real(0), std::numeric_limits<Real>::infinity(), pow10_neg(cfg.working_digits()));
}

/// b_mu(m, v). `l2` is L(2, chi_m), required only for m < 0.
inline Real b_mu(int mu, const Rational &m, const Real &v_in, const PrecisionConfig &cfg,
                 const std::optional<Real> &l2 = std::nullopt)
{
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    detail::require_mu(mu);
    if (!(v_in > 0))
        throw Error(Errc::InvalidArgument, "b_mu(m, v) needs v > 0");
    PrecisionScope scope(cfg);
    const Real v = rebase(v_in);
    const long N = detail::four_m(m);
    const Constants k = constants(cfg);
    if (N == 0) {
        if (mu != 0)
            return Real(0);
        return log(v) / 2 - k.pi / 6 * (k.zeta3 / k.zeta4) * pow(v, Real(-1.5));
    }
    if (!detail::on_coset(mu, m))
        return Real(0);
    if (N > 0) {
        KappaTerm t = kappa_mu(mu, m, cfg);
        return t.numeric + to_real(t.breakdown.prefactor) * j_integral(4 * k.pi * to_real(m) * v, cfg) / 2;
    }
    if (!l2)
        throw Error(Errc::MissingLFactor, "b_mu(m, v) for m < 0 needs L(2, chi_m)");
    const Real c = 4 * k.pi * to_real(-m) * v;
    const Real I = detail::exp_power_tail(c, Real(1.5), cfg);
    return -(k.pi * k.pi / 3) * (rebase(*l2) / k.zeta4) * pow(k.pi * v, Real(-1.5)) * I;
}

struct WhittakerResult {
    Complex value;
    /// s-derivative at s0; not provided for m > 0.
    std::optional<Complex> deriv;
};

/// W_{0,inf}(tau, s; l + 2) for general s (depends on v only).
inline Complex whittaker_constant(const SignatureContext &ctx, const Real &s_in, const Real &v_in,
                                  const PrecisionConfig &cfg)
{
    using boost::multiprecision::pow;
    PrecisionScope scope(cfg);
    const Real s = rebase(s_in), v = rebase(v_in);
    const Real h = to_real(ctx.s0);
    const Complex phase = detail::cpow(Complex{0, -1}, h + 1);
    const Real mag = 2 * real_pi() * pow(v, -(s + h) / 2) * pow(Real(2), -s) * boost::math::tgamma(s) *
                     ((s - h) / 2) / (boost::math::tgamma((s + h + 2) / 2) * boost::math::tgamma((s - h + 2) / 2));
    return phase * mag;
}

/// Archimedean Whittaker value at s0 = n/2, weight n/2 + 1, tau = u + iv.
inline WhittakerResult whittaker_arch(const SignatureContext &ctx, const Rational &m, const Real &u_in,
                                      const Real &v_in, const PrecisionConfig &cfg)
{
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    using boost::multiprecision::sin;
    if (!(v_in > 0))
        throw Error(Errc::InvalidArgument, "tau must lie in the upper half-plane");
    PrecisionScope scope(cfg);
    const Real u = rebase(u_in), v = rebase(v_in);
    const Real pi = real_pi();
    const Real h = to_real(ctx.s0);
    const Real mr = to_real(m);
    // q^m = e^(2 pi i m tau)
    const Complex qm = Complex::polar(exp(-2 * pi * mr * v), 2 * pi * mr * u);
    WhittakerResult out{{0, 0}, std::nullopt};
    if (m > 0) {
        const Complex pref = detail::cpow(Complex{0, -2}, h + 1);
        out.value = pref * qm * (pow(mr, h) / boost::math::tgamma(h + 1));
    } else if (m < 0) {
        const Real I = detail::exp_power_tail(4 * pi * (-mr) * v, h + 1, cfg);
        const Complex phase = detail::cpow(Complex{0, -1}, -(h + 1));
        out.deriv = phase * qm * (pi * pow(Real(2), -h) * pow(v, -h) * I);
    } else {
        const Complex phase = detail::cpow(Complex{0, -1}, h + 1);
        out.deriv = phase * (pi * pow(v, -h) * pow(Real(2), -h) * boost::math::tgamma(h) / boost::math::tgamma(h + 1));
    }
    return out;
}

} // namespace bkappa
