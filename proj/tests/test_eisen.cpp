#include <gtest/gtest.h>

#include "bkappa/eisen.hpp"
#include "bkappa/verify/oracles.hpp"

using namespace bkappa;

namespace {

PrecisionConfig digits(int n)
{
    PrecisionConfig cfg;
    cfg.digits = n;
    return cfg;
}

Errc error_code(const std::function<void()> &f)
{
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::InvalidArgument;
}

} // namespace

TEST(Eisen, SignatureContext)
{
    const SignatureContext c = SignatureContext::n3();
    EXPECT_EQ(c.s0, make_rational(3, 2));
    EXPECT_EQ(c.ell, make_rational(1, 2));
    EXPECT_EQ(c.weight_e, make_rational(5, 2));
    ASSERT_TRUE(c.vol_X.has_value());
    EXPECT_EQ(*c.vol_X, make_rational(-1, 1440));
    EXPECT_FALSE(SignatureContext::make(4).vol_X.has_value());
}

TEST(Eisen, FourierCoefficients)
{
    const SignatureContext c = SignatureContext::n3();
    EXPECT_EQ(eis_value_coeff(c, 0, Rational(0)), 1);
    EXPECT_EQ(eis_value_coeff(c, 1, Rational(0)), 0);
    EXPECT_EQ(eis_value_coeff(c, 1, make_rational(1, 4)), -10);
    EXPECT_EQ(eis_value_coeff(c, 0, Rational(1)), -70);
    EXPECT_EQ(eis_value_coeff(c, 1, make_rational(5, 4)), -48);
    EXPECT_EQ(eis_value_coeff(c, 0, Rational(2)), -120);
    // off coset
    EXPECT_EQ(eis_value_coeff(c, 0, make_rational(1, 4)), 0);
    EXPECT_EQ(eis_value_coeff(c, 1, Rational(1)), 0);
    EXPECT_EQ(error_code([&] { eis_value_coeff(c, 0, make_rational(1, 3)); }), Errc::NonIntegral);
    EXPECT_EQ(error_code([&] { eis_value_coeff(c, 2, Rational(1)); }), Errc::InvalidArgument);
    EXPECT_EQ(error_code([&] { eis_value_coeff(SignatureContext::make(5), 0, Rational(1)); }),
              Errc::UnsupportedSignature);
}

TEST(Eisen, DegreeIsVolumeTimesCoefficient)
{
    const SignatureContext c = SignatureContext::n3();
    for (long N = 1; N <= 100; ++N) {
        const Rational m = make_rational(N, 4);
        const int mu = static_cast<int>(N % 4);
        if (mu > 1)
            continue;
        EXPECT_EQ(degree_Z(mu, m), *c.vol_X * eis_value_coeff(c, mu, m)) << "N = " << N;
    }
}

TEST(Eisen, KappaBreakdownShape)
{
    const KappaBreakdown b = kappa_mu_breakdown(0, Rational(1));
    EXPECT_EQ(b.n, 2);
    EXPECT_EQ(b.d, 1);
    EXPECT_EQ(b.prefactor, -70);
    ASSERT_EQ(b.primes.size(), 1u);
    EXPECT_EQ(b.primes[0].p, 2);
    EXPECT_EQ(b.primes[0].log_abs_coeff, -1);
    EXPECT_EQ(b.primes[0].local_coeff, 2);
    EXPECT_EQ(b.recombine(), b.bracket().scaled(b.prefactor));

    const KappaBreakdown z = kappa_mu_breakdown(0, Rational(0));
    EXPECT_EQ(z.prefactor, make_rational(1, 2));
    EXPECT_EQ(z.constant_block, LinearForm::constant_C0());

    const KappaBreakdown off = kappa_mu_breakdown(1, Rational(1));
    EXPECT_EQ(off.prefactor, 0);
    EXPECT_TRUE(off.recombine().is_zero());
}

TEST(Eisen, KappaQuarter)
{
    // m = 1/4 on coset 1: 4m = 1, H(2,1) / zeta(-3) = -10
    const PrecisionConfig cfg = digits(40);
    const KappaTerm t = kappa_mu(1, make_rational(1, 4), cfg);
    EXPECT_EQ(t.breakdown.prefactor, -10);
    EXPECT_EQ(t.symbolic, (kappa_constant_block() - LinearForm::zeta_logderiv(-1)).scaled(-10));
}

TEST(Eisen, JIntegralMatchesPanels)
{
    const PrecisionConfig cfg = digits(40);
    PrecisionScope scope(cfg);
    for (const char *t : {"0.5", "1", "3", "10", "40"}) {
        const Real a = j_integral(Real(t), cfg);
        const Real b = verify::j_integral_panels(Real(t), cfg);
        EXPECT_LT(abs(a - b) / abs(b), pow10_neg(25)) << "t = " << t;
    }
    EXPECT_LT(abs(j_integral(Real(1), cfg) - Real("1.80584404787636532934427166051148357447")), pow10_neg(35));
}

TEST(Eisen, JIntegralDecay)
{
    const PrecisionConfig cfg = digits(30);
    PrecisionScope scope(cfg);
    Real prev = j_integral(Real(1) / 4, cfg);
    for (int i = 1; i <= 10; ++i) {
        const Real t = Real(i);
        const Real cur = j_integral(t, cfg);
        EXPECT_LT(cur, prev);
        prev = cur;
    }
    // J(3/2, t) ~ 3/(2t): polynomial, not exponential, decay
    const Real big = Real(100000);
    EXPECT_LT(abs(big * j_integral(big, cfg) - Real(3) / 2), Real(1e-4));
    EXPECT_EQ(error_code([&] { j_integral(Real(0), cfg); }), Errc::NonPositiveT);
}

TEST(Eisen, ExponentialTailClosedForm)
{
    const PrecisionConfig cfg = digits(40);
    PrecisionScope scope(cfg);
    for (const char *c : {"0.3", "2", "12.5"}) {
        const Real a = detail::exp_power_tail(Real(c), Real(3) / 2, cfg);
        EXPECT_LT(abs(a - verify::exp_tail_three_halves(Real(c))), pow10_neg(35)) << "c = " << c;
    }
}

TEST(Eisen, BMuConstantTerm)
{
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    const PrecisionConfig cfg = digits(40);
    PrecisionScope scope(cfg);
    const Real v = 3;
    const Real expected = log(v) / 2 - real_pi() / 6 * zeta_ui(3) / zeta_ui(4) * pow(v, Real(-1.5));
    EXPECT_LT(abs(b_mu(0, Rational(0), v, cfg) - expected), pow10_neg(35));
    EXPECT_EQ(b_mu(1, Rational(0), v, cfg), 0);
    EXPECT_EQ(b_mu(0, make_rational(1, 4), v, cfg), 0);
}

TEST(Eisen, BMuPositiveApproachesKappa)
{
    const PrecisionConfig cfg = digits(30);
    PrecisionScope scope(cfg);
    const Rational m = make_rational(1, 4);
    const Real kappa = kappa_mu(1, m, cfg).numeric;
    // b - kappa = (P/2) J(3/2, 4 pi m v) with P = -10, and J ~ 3/(2t)
    for (const char *vt : {"10", "50", "1000"}) {
        const Real v(vt);
        const Real diff = b_mu(1, m, v, cfg) - kappa;
        const Real expected = Real(-5) * j_integral(4 * real_pi() * to_real(m) * v, cfg);
        EXPECT_LT(abs(diff - expected), pow10_neg(25)) << "v = " << vt;
    }
    const Real far = b_mu(1, m, Real(1e8), cfg) - kappa;
    EXPECT_LT(abs(far), Real(1e-7));
}

TEST(Eisen, BMuNegative)
{
    const PrecisionConfig cfg = digits(30);
    PrecisionScope scope(cfg);
    const Rational m = make_rational(-3, 4);
    EXPECT_EQ(error_code([&] { b_mu(1, m, Real(1), cfg); }), Errc::MissingLFactor);
    const Real b1 = b_mu(1, m, Real(1), cfg, Real(1));
    const Real b2 = b_mu(1, m, Real(2), cfg, Real(1));
    EXPECT_LT(b1, 0);
    EXPECT_LT(abs(b2 / b1), boost::multiprecision::exp(-4 * real_pi() * Real(0.75)));
}

TEST(Eisen, WhittakerPositive)
{
    using boost::multiprecision::exp;
    using boost::multiprecision::pow;
    const PrecisionConfig cfg = digits(30);
    PrecisionScope scope(cfg);
    const SignatureContext c = SignatureContext::n3();
    const Rational m(2);
    const Real v = Real(1) / 2;
    const WhittakerResult w = whittaker_arch(c, m, Real("0.3"), v, cfg);
    EXPECT_FALSE(w.deriv.has_value());
    const Real modulus = pow(Real(2), Real(2.5)) * exp(-4 * real_pi() * v) * pow(Real(2), Real(1.5)) /
                         boost::math::tgamma(Real(2.5));
    EXPECT_LT(abs(w.value.abs() - modulus), pow10_neg(25));
    // phase moves with u only through q^m
    const WhittakerResult w2 = whittaker_arch(c, m, Real("0.55"), v, cfg);
    EXPECT_LT(abs(w2.value.abs() - w.value.abs()), pow10_neg(25));
}

TEST(Eisen, WhittakerNegativeDecays)
{
    const PrecisionConfig cfg = digits(30);
    PrecisionScope scope(cfg);
    const SignatureContext c = SignatureContext::n3();
    const Rational m = make_rational(-1, 4);
    const WhittakerResult a = whittaker_arch(c, m, Real(0), Real(1), cfg);
    const WhittakerResult b = whittaker_arch(c, m, Real(0), Real(2), cfg);
    ASSERT_TRUE(a.deriv && b.deriv);
    EXPECT_EQ(a.value.abs(), 0);
    EXPECT_LT(b.deriv->abs(), a.deriv->abs());
}

TEST(Eisen, WhittakerConstantDerivative)
{
    // the m = 0 derivative at s0 agrees with a central difference of the general-s value
    const PrecisionConfig cfg = digits(40);
    PrecisionScope scope(cfg);
    const SignatureContext c = SignatureContext::n3();
    const Real v = Real("1.7");
    const WhittakerResult w = whittaker_arch(c, Rational(0), Real(0), v, cfg);
    ASSERT_TRUE(w.deriv.has_value());
    const Real h = pow10_neg(12);
    const Real s0 = to_real(c.s0);
    const Complex plus = whittaker_constant(c, s0 + h, v, cfg);
    const Complex minus = whittaker_constant(c, s0 - h, v, cfg);
    const Real fd_re = (plus.re - minus.re) / (2 * h);
    const Real fd_im = (plus.im - minus.im) / (2 * h);
    EXPECT_LT(abs(fd_re - w.deriv->re), Real(1e-15));
    EXPECT_LT(abs(fd_im - w.deriv->im), Real(1e-15));
    EXPECT_LT(whittaker_constant(c, s0, v, cfg).abs(), pow10_neg(35));
}

TEST(Eisen, RejectsBadArguments)
{
    const PrecisionConfig cfg = digits(30);
    EXPECT_EQ(error_code([&] { b_mu(0, Rational(1), Real(0), cfg); }), Errc::InvalidArgument);
    EXPECT_EQ(error_code([&] { whittaker_arch(SignatureContext::n3(), Rational(1), Real(0), Real(-1), cfg); }),
              Errc::InvalidArgument);
    EXPECT_EQ(error_code([&] { kappa_mu_breakdown(0, Rational(-1)); }), Errc::InvalidArgument);
}
