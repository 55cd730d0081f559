#pragma once

/**
 * @file arith.hpp
 * @brief Exact arithmetic: quadratic characters, discriminant decomposition,
 * generalized Bernoulli numbers, L-values at negative integers, Cohen's
 * numbers H(r,N) and the local Euler factors b_p(n,s) of their product
 * formula, together with exact logarithmic derivatives of those factors.
 *
 * Everything here is exact (GMP rationals). Small integers (discriminants,
 * conductors, primes) are machine longs.
 */

#include <cstdlib>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "bkappa/errors.hpp"
#include "bkappa/rational.hpp"

namespace bkappa {

/// (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<long, int>>;

inline Factorization factorize(long n)
{
    if (n <= 0)
        throw Error(Errc::InvalidArgument, "factorize expects a positive integer");
    Factorization f;
    for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e > 0)
            f.emplace_back(p, e);
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

inline bool is_prime(long n)
{
    if (n < 2)
        return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

inline bool is_squarefree(long n)
{
    for (const auto &[p, e] : factorize(std::labs(n)))
        if (e > 1)
            return false;
    return true;
}

inline int ord_p(long p, long n)
{
    int k = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++k;
    }
    return k;
}

inline int moebius(long n)
{
    int mu = 1;
    for (const auto &[p, e] : factorize(n)) {
        if (e > 1)
            return 0;
        mu = -mu;
    }
    return mu;
}

inline Integer divisor_sigma(unsigned k, long n)
{
    Integer sum = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d != 0)
            continue;
        sum += ipow(Integer(d), k);
        if (d * d != n)
            sum += ipow(Integer(n / d), k);
    }
    return sum;
}

/// Kronecker symbol (a/n) for n >= 0.
inline int kronecker(long a, long n)
{
    if (n < 0)
        throw Error(Errc::InvalidArgument, "kronecker symbol expects n >= 0");
    if (n == 0)
        return std::labs(a) == 1 ? 1 : 0;
    int result = 1;
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0)
            return 0;
        long r8 = mod_floor(a, 8);
        if ((v % 2 == 1) && (r8 == 3 || r8 == 5))
            result = -result;
    }
    // Jacobi symbol for odd n
    long x = mod_floor(a, n);
    long m = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            long r = m % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(x, m);
        if (x % 4 == 3 && m % 4 == 3)
            result = -result;
        x %= m;
    }
    return m == 1 ? result : 0;
}

/// d = 1, or the discriminant of a quadratic field.
inline bool is_fundamental_discriminant(long d)
{
    if (d == 1)
        return true;
    if (d == 0)
        return false;
    switch (mod_floor(d, 4)) {
    case 1:
        return is_squarefree(d);
    case 0: {
        long k = d / 4;
        long r = mod_floor(k, 4);
        return (r == 2 || r == 3) && is_squarefree(k);
    }
    default:
        return false;
    }
}

/// The quadratic character chi_d(n); chi_1 is trivial.
inline int kronecker_chi(long d, long n)
{
    if (!is_fundamental_discriminant(d))
        throw Error(Errc::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
    if (n < 1)
        throw Error(Errc::InvalidArgument, "chi_d(n) needs n >= 1");
    if (d == 1)
        return 1;
    return kronecker(d, n);
}

/// 4m = n^2 d with d a fundamental discriminant or 1.
struct FundDiscDecomp {
    Rational m;
    long n = 1;
    long d = 1;
};

/// Writes a discriminant D != 0, D = 0,1 mod 4, uniquely as n^2 d with
/// n > 0 and d fundamental (d = 1 when D is a square).
inline std::pair<long, long> decompose_discriminant(long D)
{
    if (D == 0 || mod_floor(D, 4) > 1)
        throw Error(Errc::InadmissibleDiscriminant, std::to_string(D) + " is not 0 or 1 mod 4");
    long f = 1;
    long s = 1;
    for (const auto &[p, e] : factorize(std::labs(D))) {
        for (int i = 0; i < e / 2; ++i)
            f *= p;
        if (e % 2 == 1)
            s *= p;
    }
    if (D < 0)
        s = -s;
    if (mod_floor(s, 4) == 1)
        return {f, s};
    return {f / 2, 4 * s};
}

inline FundDiscDecomp fund_disc_decompose(const Rational &m)
{
    Rational four_m = 4 * m;
    if (!is_integer(four_m))
        throw Error(Errc::NonIntegral, "4m = " + to_string(four_m) + " is not an integer");
    if (four_m <= 0)
        throw Error(Errc::InvalidArgument, "m must be positive");
    auto [n, d] = decompose_discriminant(to_long(four_m.get_num()));
    return {m, n, d};
}

namespace detail {

inline const Rational &bernoulli_cached(unsigned k)
{
    static std::mutex mutex;
    static std::vector<Rational> table{Rational(1)};
    std::lock_guard lock(mutex);
    while (table.size() <= k) {
        const unsigned m = static_cast<unsigned>(table.size());
        Rational sum = 0;
        Integer binom = 1; // C(m+1, j)
        for (unsigned j = 0; j < m; ++j) {
            sum += binom * table[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        table.push_back(-sum / (m + 1));
    }
    return table[k];
}

} // namespace detail

/// Bernoulli numbers with B_1 = -1/2.
inline Rational bernoulli_number(unsigned k) { return detail::bernoulli_cached(k); }

inline Rational bernoulli_poly(unsigned r, const Rational &x)
{
    Rational sum = 0;
    Integer binom = 1; // C(r, k)
    for (unsigned k = 0; k <= r; ++k) {
        sum += binom * bernoulli_number(k) * rpow(x, static_cast<long>(r - k));
        binom = binom * (r - k) / (k + 1);
    }
    return sum;
}

/// B_{r,chi_d} = f^(r-1) sum_{a=1}^{f} chi_d(a) B_r(a/f), f = |d|.
inline Rational gen_bernoulli(unsigned r, long d)
{
    if (r < 1)
        throw Error(Errc::InvalidArgument, "generalized Bernoulli numbers need r >= 1");
    if (!is_fundamental_discriminant(d))
        throw Error(Errc::NotFundamental, std::to_string(d) + " is not a fundamental discriminant");
    const long f = std::labs(d);
    Rational sum = 0;
    for (long a = 1; a <= f; ++a) {
        int chi = kronecker_chi(d, a);
        if (chi != 0)
            sum += chi * bernoulli_poly(r, make_rational(a, f));
    }
    return sum * rpow(Rational(f), static_cast<long>(r) - 1);
}

/// L(1-r, chi_d) = -B_{r,chi_d}/r; zeta(1-r) for d = 1.
inline Rational l_value_neg(unsigned r, long d) { return -gen_bernoulli(r, d) / r; }

/// The Euler factor b_p(n,s) as a rational function of X = p^-s:
/// (1 - chi X + chi p^k X^(2k+1) - p^(k+1) X^(2k+2)) / (1 - p X^2).
struct LocalFactor {
    long p = 2;
    int k = 0;
    int chi = 0;
    std::vector<Integer> numerator;   // ascending powers of X
    std::vector<Integer> denominator; // ascending powers of X
};

inline LocalFactor local_factor(long p, long n, long d)
{
    if (!is_prime(p))
        throw Error(Errc::InvalidArgument, std::to_string(p) + " is not prime");
    if (n < 1)
        throw Error(Errc::InvalidArgument, "local factor needs n >= 1");
    LocalFactor lf;
    lf.p = p;
    lf.k = ord_p(p, n);
    lf.chi = kronecker_chi(d, p);
    const int k = lf.k;
    lf.numerator.assign(static_cast<std::size_t>(2 * k + 3), Integer(0));
    lf.numerator[0] += 1;
    lf.numerator[1] -= lf.chi;
    lf.numerator[static_cast<std::size_t>(2 * k + 1)] += lf.chi * ipow(Integer(p), static_cast<unsigned long>(k));
    lf.numerator[static_cast<std::size_t>(2 * k + 2)] -= ipow(Integer(p), static_cast<unsigned long>(k + 1));
    lf.denominator = {Integer(1), Integer(0), Integer(-p)};
    return lf;
}

namespace detail {

inline Rational poly_eval(const std::vector<Integer> &c, const Rational &x)
{
    Rational acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

/// X * P'(X)
inline Rational poly_eval_log_deriv_numerator(const std::vector<Integer> &c, const Rational &x)
{
    Rational acc = 0;
    for (std::size_t i = c.size(); i-- > 1;)
        acc = acc * x + Integer(static_cast<long>(i)) * c[i];
    return acc * x;
}

inline Rational x_at(long p, const Rational &s)
{
    if (!is_integer(s))
        throw Error(Errc::NonRationalPoint, "p^-s is irrational for s = " + to_string(s));
    return rpow(Rational(p), -to_long(s.get_num()));
}

} // namespace detail

inline Rational evaluate(const LocalFactor &lf, const Rational &x)
{
    Rational den = detail::poly_eval(lf.denominator, x);
    if (den == 0)
        throw Error(Errc::PoleAtS, "1 - pX^2 vanishes");
    return detail::poly_eval(lf.numerator, x) / den;
}

/// b_p(n,s) at an integer s.
inline Rational local_b(long p, long n, long d, const Rational &s)
{
    return evaluate(local_factor(p, n, d), detail::x_at(p, s));
}

/// The rational r with b_p'(n,s)/b_p(n,s) = r log p, by differentiating the
/// rational function in X and using dX/ds = -X log p.
inline Rational local_b_logderiv_at(long p, long n, long d, const Rational &s)
{
    LocalFactor lf = local_factor(p, n, d);
    if (lf.k == 0)
        return 0;
    const Rational x = detail::x_at(p, s);
    const Rational num = detail::poly_eval(lf.numerator, x);
    const Rational den = detail::poly_eval(lf.denominator, x);
    if (num == 0 || den == 0)
        throw Error(Errc::PoleAtS, "b_p(n,s) has a zero or pole at s = " + to_string(s));
    const Rational x_num_prime = detail::poly_eval_log_deriv_numerator(lf.numerator, x);
    const Rational x_den_prime = detail::poly_eval_log_deriv_numerator(lf.denominator, x);
    return -(x_num_prime / num - x_den_prime / den);
}

/// b_p'(n,-1)/b_p(n,-1) / log p.
inline Rational local_b_logderiv(long p, long n, long d)
{
    return local_b_logderiv_at(p, n, d, Rational(-1));
}

/// Closed form of b_p'(n,-1)/b_p(n,-1) / log p in terms of (p, k, chi):
/// -[2p^3/(1-p^3) + (-chi p + chi(2k+1)p^(3k+1) - (2k+2)p^(3k+3)) /
///                   (1 - chi p + chi p^(3k+1) - p^(3k+3))].
inline Rational local_b_logderiv_closed_form(long p, int k, int chi)
{
    const Integer P(p);
    const Integer p3 = ipow(P, 3);
    const Integer p3k1 = ipow(P, static_cast<unsigned long>(3 * k + 1));
    const Integer p3k3 = ipow(P, static_cast<unsigned long>(3 * k + 3));
    const Rational first = make_rational(2 * p3, 1 - p3);
    const Integer top = -chi * P + chi * (2 * k + 1) * p3k1 - (2 * k + 2) * p3k3;
    const Integer bottom = 1 - chi * P + chi * p3k1 - p3k3;
    return -(first + make_rational(top, bottom));
}

/// True when H(r,N) can be nonzero: (-1)^r N = 0, 1 mod 4.
inline bool cohen_admissible(unsigned r, long N)
{
    if (N < 0)
        return false;
    const long D = (r % 2 == 0) ? N : -N;
    return mod_floor(D, 4) <= 1;
}

/// H(r,N) from the finite divisor sum
/// L(1-r, chi_d) sum_{c | n} mu(c) chi_d(c) c^(r-1) sigma_{2r-1}(n/c).
inline Rational cohen_H_sum(unsigned r, long N)
{
    if (r < 1)
        throw Error(Errc::InvalidArgument, "H(r,N) needs r >= 1");
    if (N == 0)
        return l_value_neg(2 * r, 1);
    if (!cohen_admissible(r, N))
        return 0;
    const auto [n, d] = decompose_discriminant((r % 2 == 0) ? N : -N);
    Integer sum = 0;
    for (long c = 1; c <= n; ++c) {
        if (n % c != 0)
            continue;
        int mu = moebius(c);
        if (mu == 0)
            continue;
        sum += mu * kronecker_chi(d, c) * ipow(Integer(c), r - 1) * divisor_sigma(2 * r - 1, n / c);
    }
    return l_value_neg(r, d) * sum;
}

/// H(r,N) from the Euler product L(1-r, chi_d) prod_{p | n} b_p(n, 1-r).
inline Rational cohen_H_product(unsigned r, long N)
{
    if (r < 1)
        throw Error(Errc::InvalidArgument, "H(r,N) needs r >= 1");
    if (N == 0)
        return l_value_neg(2 * r, 1);
    if (!cohen_admissible(r, N))
        return 0;
    const auto [n, d] = decompose_discriminant((r % 2 == 0) ? N : -N);
    Rational prod = l_value_neg(r, d);
    const Rational s = 1 - Rational(r);
    for (const auto &[p, e] : factorize(n))
        prod *= local_b(p, n, d, s);
    return prod;
}

/// Cohen's H(r,N), memoized. Inadmissible N give 0.
inline Rational cohen_H(unsigned r, long N)
{
    static std::mutex mutex;
    static std::map<std::pair<unsigned, long>, Rational> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find({r, N});
        if (it != cache.end())
            return it->second;
    }
    Rational value = cohen_H_sum(r, N);
    std::lock_guard lock(mutex);
    cache.emplace(std::pair{r, N}, value);
    return value;
}

} // namespace bkappa
