#include <gtest/gtest.h>

#include "bkappa/arith.hpp"
#include "bkappa/verify/oracles.hpp"

using namespace bkappa;

namespace {

template <typename F>
Errc error_code(F &&f)
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

TEST(Arith, Factorize)
{
    const Factorization f = factorize(360);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_EQ(f[0], (std::pair<long, int>{2, 3}));
    EXPECT_EQ(f[1], (std::pair<long, int>{3, 2}));
    EXPECT_EQ(f[2], (std::pair<long, int>{5, 1}));
    EXPECT_TRUE(factorize(1).empty());
}

TEST(Arith, Kronecker)
{
    EXPECT_EQ(kronecker(5, 2), -1);
    EXPECT_EQ(kronecker(8, 3), -1);
    EXPECT_EQ(kronecker(-4, 3), -1);
    EXPECT_EQ(kronecker(-4, 5), 1);
    EXPECT_EQ(kronecker(12, 2), 0);
    EXPECT_EQ(kronecker(-3, 2), -1);
    EXPECT_EQ(kronecker(13, 3), 1);
}

TEST(Arith, FundamentalDiscriminants)
{
    std::vector<long> pos, neg;
    for (long d = -24; d <= 30; ++d) {
        if (d == 0 || !is_fundamental_discriminant(d))
            continue;
        (d > 0 ? pos : neg).push_back(d);
    }
    EXPECT_EQ(pos, (std::vector<long>{1, 5, 8, 12, 13, 17, 21, 24, 28, 29}));
    EXPECT_EQ(neg, (std::vector<long>{-24, -23, -20, -19, -15, -11, -8, -7, -4, -3}));
    EXPECT_EQ(error_code([] { kronecker_chi(3, 2); }), Errc::NotFundamental);
}

TEST(Arith, Decomposition)
{
    EXPECT_EQ(decompose_discriminant(4), (std::pair<long, long>{2, 1}));
    EXPECT_EQ(decompose_discriminant(1), (std::pair<long, long>{1, 1}));
    EXPECT_EQ(decompose_discriminant(8), (std::pair<long, long>{1, 8}));
    EXPECT_EQ(decompose_discriminant(20), (std::pair<long, long>{2, 5}));
    EXPECT_EQ(decompose_discriminant(32), (std::pair<long, long>{2, 8}));
    EXPECT_EQ(decompose_discriminant(-12), (std::pair<long, long>{2, -3}));
    EXPECT_EQ(error_code([] { decompose_discriminant(2); }), Errc::InadmissibleDiscriminant);
    const FundDiscDecomp m = fund_disc_decompose(make_rational(9, 4));
    EXPECT_EQ(m.n, 3);
    EXPECT_EQ(m.d, 1);
    EXPECT_EQ(error_code([] { fund_disc_decompose(make_rational(1, 3)); }), Errc::NonIntegral);
}

TEST(Arith, Bernoulli)
{
    EXPECT_EQ(bernoulli_number(1), make_rational(-1, 2));
    EXPECT_EQ(bernoulli_number(2), make_rational(1, 6));
    EXPECT_EQ(bernoulli_number(4), make_rational(-1, 30));
    EXPECT_EQ(bernoulli_number(12), make_rational(-691, 2730));
    EXPECT_EQ(bernoulli_number(7), 0);
}

TEST(Arith, LValuesAtNegativeIntegers)
{
    EXPECT_EQ(l_value_neg(2, 1), make_rational(-1, 12));
    EXPECT_EQ(l_value_neg(4, 1), make_rational(1, 120));
    EXPECT_EQ(l_value_neg(2, 5), make_rational(-2, 5));
    EXPECT_EQ(l_value_neg(2, 8), -1);
    EXPECT_EQ(l_value_neg(1, -4), make_rational(1, 2));
    EXPECT_EQ(l_value_neg(1, -3), make_rational(1, 3));
    // wrong parity vanishes
    EXPECT_EQ(l_value_neg(2, -4), 0);
}

TEST(Arith, CohenTable)
{
    const std::vector<std::pair<long, long>> expected{{0, -1},  {1, 10},   {4, 70},   {5, 48},
                                                       {8, 120}, {9, 250},  {12, 240}, {13, 240},
                                                       {16, 550}, {17, 480}, {20, 528}};
    for (const auto &[N, v] : expected)
        EXPECT_EQ(-120 * cohen_H(2, N), v) << "N = " << N;
    EXPECT_EQ(cohen_H(2, 2), 0);
    EXPECT_EQ(cohen_H(2, 3), 0);
}

TEST(Arith, CohenOddR)
{
    EXPECT_EQ(cohen_H(3, 3), make_rational(-2, 9));
    EXPECT_EQ(cohen_H(5, 3), make_rational(2, 3));
    EXPECT_EQ(cohen_H(1, 3), make_rational(1, 3));
    EXPECT_EQ(cohen_H(1, 4), make_rational(1, 2));
}

TEST(Arith, SumEqualsProductAcrossR)
{
    for (unsigned r = 1; r <= 5; ++r)
        for (long N = 1; N <= 150; ++N)
            EXPECT_EQ(cohen_H_sum(r, N), cohen_H_product(r, N)) << "r = " << r << ", N = " << N;
}

TEST(Arith, LocalFactorAtTwo)
{
    // n = 2, d = 1: b_2(2, -1) = 1 + ... evaluated from the rational function
    EXPECT_EQ(local_b(2, 2, 1, Rational(-1)), 7);
    EXPECT_EQ(local_b_logderiv(2, 2, 1), -2);
    EXPECT_EQ(local_b_logderiv_closed_form(2, 1, 1), -2);
    EXPECT_NE(local_b_logderiv(2, 2, 1), make_rational(-9, 11));
    EXPECT_EQ(local_b_logderiv(3, 2, 1), 0);
}

TEST(Arith, LocalLogDerivativeClosedFormAgrees)
{
    for (long D = 4; D <= 400; ++D) {
        if (!cohen_admissible(2, D))
            continue;
        const auto [n, d] = decompose_discriminant(D);
        for (const auto &[p, k] : factorize(n))
            EXPECT_EQ(local_b_logderiv(p, n, d), local_b_logderiv_closed_form(p, k, kronecker_chi(d, p)))
                << "p = " << p << ", n = " << n << ", d = " << d;
    }
}

TEST(Arith, LocalLogDerivativeFiniteDifference)
{
    PrecisionScope scope(40u);
    for (const auto &[p, n, d] : std::vector<std::tuple<long, long, long>>{{2, 2, 1}, {3, 3, 1}, {2, 4, 5}, {3, 9, 8}, {5, 5, 13}}) {
        const Real fd = verify::local_b_logderiv_fd(p, n, d, pow10_neg(12));
        EXPECT_LT(abs(fd - to_real(local_b_logderiv(p, n, d))), Real(1e-10)) << p << " " << n << " " << d;
    }
}

TEST(Arith, LocalFactorErrors)
{
    EXPECT_EQ(error_code([] { local_b(2, 2, 1, make_rational(1, 2)); }), Errc::NonRationalPoint);
    EXPECT_EQ(error_code([] { local_factor(4, 2, 1); }), Errc::InvalidArgument);
}
