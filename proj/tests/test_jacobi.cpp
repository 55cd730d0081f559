#include <gtest/gtest.h>

#include "bkappa/borcherds.hpp"
#include "bkappa/jacobi.hpp"

using namespace bkappa;

namespace {

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

TEST(Jacobi, CuspFormTable)
{
    const ThetaComponents h = phi12_theta_components(Rational(6));
    for (const auto &[D, v] : kReferenceC12)
        EXPECT_EQ(h.coefficients.at(D), v) << "D = " << D;
}

TEST(Jacobi, ThetaComponents)
{
    const ThetaComponents h = phi12_theta_components(Rational(4));
    EXPECT_EQ(h.h0.coeff(Rational(1)), 10);
    EXPECT_EQ(h.h0.coeff(Rational(2)), -132);
    EXPECT_EQ(h.h0.coeff(Rational(3)), 736);
    EXPECT_EQ(h.h1.coeff(make_rational(3, 4)), 1);
    EXPECT_EQ(h.h1.coeff(make_rational(7, 4)), -88);
    EXPECT_EQ(h.h1.coeff(make_rational(11, 4)), 1275);
    EXPECT_EQ(h.h1.coeff(make_rational(15, 4)), -8040);
    EXPECT_TRUE(h.h0.is_integral() && h.h1.is_integral());
}

TEST(Jacobi, InputForm)
{
    const VectorValuedForm f = build_vv_form(Rational(4));
    EXPECT_EQ(f.f0.coeff(Rational(0)), 10);
    EXPECT_EQ(f.f0.coeff(Rational(1)), 108);
    EXPECT_EQ(f.f0.coeff(Rational(2)), 808);
    EXPECT_EQ(f.f0.coeff(Rational(3)), 4016);
    EXPECT_EQ(f.f1.coeff(make_rational(-1, 4)), 1);
    EXPECT_EQ(f.f1.coeff(make_rational(3, 4)), -64);
    EXPECT_EQ(f.f1.coeff(make_rational(7, 4)), -513);
    EXPECT_EQ(f.f1.coeff(make_rational(11, 4)), -2752);
    EXPECT_EQ(f.principal_bound, make_rational(1, 4));
    EXPECT_EQ(f.weight, make_rational(-1, 2));
}

TEST(Jacobi, JMultiples)
{
    const VectorValuedForm g1 = jt_family_member(1, Rational(1));
    EXPECT_EQ(g1.f0.coeff(Rational(-1)), 10);
    EXPECT_EQ(g1.f0.coeff(Rational(0)), 7548);
    EXPECT_EQ(g1.f1.coeff(make_rational(-5, 4)), 1);
    EXPECT_EQ(g1.f1.coeff(make_rational(-1, 4)), 680);
    EXPECT_EQ(g1.f1.coeff(make_rational(3, 4)), 148755);

    const VectorValuedForm g2 = jt_family_member(2, Rational(1));
    EXPECT_EQ(g2.f0.coeff(Rational(-2)), 10);
    EXPECT_EQ(g2.f0.coeff(Rational(-1)), 14988);
    EXPECT_EQ(g2.f0.coeff(Rational(0)), 9634552);
    EXPECT_EQ(g2.f1.coeff(make_rational(-9, 4)), 1);
    EXPECT_EQ(g2.f1.coeff(make_rational(-5, 4)), 1424);
    EXPECT_EQ(g2.f1.coeff(make_rational(-1, 4)), 851559);
}

TEST(Jacobi, JPowerNeedsPrecision)
{
    const VectorValuedForm f = build_vv_form(Rational(2));
    EXPECT_EQ(error_code([&] { scale_by_j_power(f, 1, Rational(2)); }), Errc::PrecisionExhausted);
    EXPECT_EQ(error_code([&] { scale_by_j_power(f, 2); }), Errc::PrecisionExhausted);
    EXPECT_NO_THROW(scale_by_j_power(f, 1));
}

TEST(Jacobi, DivisorStableUnderPrecision)
{
    for (unsigned t = 0; t <= 2; ++t) {
        const PrincipalPart a = extract_principal_part(jt_family_member(t, Rational(1)));
        const PrincipalPart b = extract_principal_part(jt_family_member(t, Rational(4)));
        EXPECT_EQ(a, b) << "t = " << t;
    }
}

TEST(Jacobi, FormValidation)
{
    const QSeries ok0 = QSeries::from_terms({{0, 10}}, Rational(1));
    const QSeries bad_coset = QSeries::from_terms({{make_rational(-1, 2), 1}}, Rational(1));
    const QSeries non_integral = QSeries::from_terms({{make_rational(-1, 4), make_rational(1, 2)}}, Rational(1));
    EXPECT_EQ(error_code([&] { make_vv_form(ok0, bad_coset, make_rational(-1, 2)); }), Errc::InvalidForm);
    EXPECT_EQ(error_code([&] { make_vv_form(ok0, non_integral, make_rational(-1, 2)); }),
              Errc::NonIntegralPrincipalPart);
    EXPECT_EQ(error_code([&] { phi12_theta_components(Rational(0)); }), Errc::InvalidArgument);
}
