#include <random>

#include <gtest/gtest.h>

#include "bkappa/qseries.hpp"

using namespace bkappa;

namespace {

QSeries random_series(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> den_pick(0, 2), count(0, 7), coeff(-30, 30), lo(-3, 2), span(1, 6);
    const long dens[] = {1, 2, 4};
    const long den = dens[den_pick(rng)];
    const long start = lo(rng) * den;
    const long prec = start + span(rng) * den;
    std::uniform_int_distribution<long> pos(start, prec - 1);
    std::vector<QSeries::Term> terms;
    for (int i = count(rng); i > 0; --i)
        terms.emplace_back(make_rational(pos(rng), den), make_rational(coeff(rng), 1 + static_cast<long>(rng() % 4)));
    return QSeries::from_terms(terms, make_rational(prec, den));
}

std::vector<long> coefficients(const QSeries &s, long from, long to)
{
    std::vector<long> out;
    for (long e = from; e < to; ++e)
        out.push_back(to_long(s.coeff(Rational(e)).get_num()));
    return out;
}

} // namespace

TEST(QSeries, RingAxiomsRandomized)
{
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        const QSeries a = random_series(rng), b = random_series(rng), c = random_series(rng);
        SCOPED_TRACE(to_string(a) + " | " + to_string(b) + " | " + to_string(c));
        EXPECT_TRUE(agree(a + b, b + a));
        EXPECT_TRUE(agree(a * b, b * a));
        EXPECT_TRUE(agree((a + b) + c, a + (b + c)));
        EXPECT_TRUE(agree((a * b) * c, a * (b * c)));
        EXPECT_TRUE(agree(a * (b + c), a * b + a * c));
        EXPECT_TRUE(agree(a - a, QSeries::zero(a.prec())));
        if (!a.empty())
            EXPECT_TRUE(agree(a * invert(a), QSeries::monomial(1, 0, a.prec() - a.lo())));
    }
}

TEST(QSeries, ProductPrecision)
{
    // (q^-1 + O(q^2)) * (1 + q + O(q^3)) is known below min(2 + 0, 3 - 1)
    const QSeries a = QSeries::from_terms({{-1, 1}}, Rational(2));
    const QSeries b = QSeries::from_terms({{0, 1}, {1, 1}}, Rational(3));
    const QSeries p = a * b;
    EXPECT_EQ(p.prec(), Rational(2));
    EXPECT_EQ(p.coeff(Rational(-1)), 1);
    EXPECT_EQ(p.coeff(Rational(0)), 1);
    EXPECT_EQ(p.coeff(Rational(1)), 0);
}

TEST(QSeries, MixedDenominators)
{
    const QSeries a = QSeries::from_terms({{make_rational(-1, 4), 1}}, Rational(2));
    const QSeries b = QSeries::from_terms({{make_rational(1, 2), 3}}, Rational(2));
    const QSeries s = a + b;
    EXPECT_EQ(s.den(), 4);
    EXPECT_EQ(s.coeff(make_rational(1, 2)), 3);
    EXPECT_EQ(s.lo(), make_rational(-1, 4));
}

TEST(QSeries, CoefficientBeyondPrecisionThrows)
{
    const QSeries a = QSeries::from_terms({{0, 1}}, Rational(2));
    EXPECT_EQ(a.coeff(Rational(1)), 0);
    try {
        (void)a.coeff(Rational(2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::PrecisionExhausted);
    }
}

TEST(QSeries, InvertZeroThrows)
{
    try {
        (void)invert(QSeries::zero(Rational(3)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::ZeroLeadingCoefficient);
    }
}

TEST(QSeries, InvertShiftsPrecision)
{
    // 1/(q^-1 - 1) = q + q^2 + ..., relative precision preserved
    const QSeries a = QSeries::from_terms({{-1, 1}, {0, -1}}, Rational(3));
    const QSeries inv = invert(a);
    EXPECT_EQ(inv.prec(), Rational(5));
    EXPECT_EQ(inv.lo(), Rational(1));
    for (long e = 1; e < 5; ++e)
        EXPECT_EQ(inv.coeff(Rational(e)), 1);
}

TEST(QSeries, PowZeroIsOne)
{
    const QSeries a = QSeries::from_terms({{1, 2}, {2, 1}}, Rational(4));
    const QSeries one = pow(a, 0);
    EXPECT_EQ(one.coeff(Rational(0)), 1);
    EXPECT_TRUE(agree(pow(a, 3), a * a * a));
}

TEST(QSeries, TextRendering)
{
    const QSeries a = QSeries::from_terms({{make_rational(-1, 4), 1}, {make_rational(3, 4), -64}}, make_rational(7, 4));
    EXPECT_EQ(to_string(a), "1 * q^(-1/4) + -64 * q^(3/4) + O(q^(7/4))");
}

TEST(Series, DeltaCoefficients)
{
    const QSeries d = series::delta(Rational(8));
    EXPECT_EQ(coefficients(d, 1, 8), (std::vector<long>{1, -24, 252, -1472, 4830, -6048, -16744}));
}

TEST(Series, DeltaMatchesEisensteinCombination)
{
    const Rational prec(15);
    const QSeries e4 = series::e4(prec), e6 = series::e6(prec);
    const QSeries rhs = (e4 * e4 * e4 - e6 * e6).scaled(make_rational(1, 1728));
    EXPECT_TRUE(agree(series::delta(prec), rhs));
}

TEST(Series, EisensteinLeadingTerms)
{
    EXPECT_EQ(coefficients(series::e4(Rational(4)), 0, 4), (std::vector<long>{1, 240, 2160, 6720}));
    EXPECT_EQ(coefficients(series::e6(Rational(4)), 0, 4), (std::vector<long>{1, -504, -16632, -122976}));
}

TEST(Series, JInvariant)
{
    const QSeries j = series::j_invariant(Rational(3));
    EXPECT_EQ(j.lo(), Rational(-1));
    EXPECT_EQ(j.coeff(Rational(-1)), 1);
    EXPECT_EQ(j.coeff(Rational(0)), 744);
    EXPECT_EQ(j.coeff(Rational(1)), 196884);
    EXPECT_EQ(j.coeff(Rational(2)), 21493760);
}

TEST(Series, InverseDelta)
{
    const QSeries inv = invert(series::delta(Rational(6)));
    EXPECT_EQ(coefficients(inv, -1, 3), (std::vector<long>{1, 24, 324, 3200}));
}
