#pragma once

/**
 * @file qseries.hpp
 * @brief Truncated formal Laurent series in q with exponents in (1/N)Z.
 *
 * A QSeries knows its coefficients exactly for every exponent below `prec`;
 * nothing is known at or above it. Coefficients are GMP rationals, stored
 * sparsely (zero coefficients are never kept), keyed by the integer
 * numerator of the exponent over the common denominator `den`.
 *
 * Truncation discipline: if a is exact below p1 with valuation l1 and b
 * exact below p2 with valuation l2, then a*b is exact below
 * min(p1 + l2, p2 + l1). Every operation derives its output precision from
 * its inputs, so loss of precision shows up in `prec()` rather than as a
 * silently wrong coefficient.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bkappa/errors.hpp"
#include "bkappa/rational.hpp"

namespace bkappa {

class QSeries {
public:
    using Index = std::int64_t;
    using Term = std::pair<Rational, Rational>; // (exponent, coefficient)

    /// The zero series with nothing known (precision 0).
    QSeries() = default;

    /// The zero series, known exactly below `prec`.
    static QSeries zero(const Rational &prec)
    {
        QSeries s;
        s.den_ = to_index(prec.get_den());
        s.prec_ = to_index(prec.get_num());
        return s;
    }

    static QSeries monomial(const Rational &coeff, const Rational &exp, const Rational &prec)
    {
        return from_terms({{exp, coeff}}, prec);
    }

    /// Builds a series from (exponent, coefficient) pairs. Terms at or above
    /// `prec` are dropped; repeated exponents are summed.
    static QSeries from_terms(const std::vector<Term> &terms, const Rational &prec)
    {
        Index den = to_index(prec.get_den());
        for (const auto &[e, c] : terms)
            den = std::lcm(den, to_index(e.get_den()));
        QSeries s;
        s.den_ = den;
        s.prec_ = scaled_index(prec, den);
        for (const auto &[e, c] : terms) {
            Index k = scaled_index(e, den);
            if (k >= s.prec_ || c == 0)
                continue;
            s.terms_[k] += c;
        }
        s.drop_zeros();
        s.normalize();
        return s;
    }

    Index den() const { return den_; }
    Rational prec() const { return make_rational(prec_, den_); }
    /// Valuation: the lowest exponent with a nonzero coefficient, or `prec`
    /// if every known coefficient vanishes.
    Rational lo() const { return make_rational(lo_index(), den_); }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(const Rational &exp) const
    {
        if (exp >= prec())
            throw Error(Errc::PrecisionExhausted,
                        "coefficient of q^(" + to_string(exp) + ") requested beyond precision " + to_string(prec()));
        Rational k = exp * den_;
        if (!is_integer(k))
            return 0;
        auto it = terms_.find(to_index(k.get_num()));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    std::vector<Term> terms() const
    {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto &[k, c] : terms_)
            out.emplace_back(make_rational(k, den_), c);
        return out;
    }

    /// Visits (exponent, coefficient) in ascending exponent order.
    template <typename F>
    void for_each_term(F &&f) const
    {
        for (const auto &[k, c] : terms_)
            f(make_rational(k, den_), c);
    }

    bool is_integral() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto &kv) { return is_integer(kv.second); });
    }

    /// Forgets everything at and above `p`. `p` may not exceed `prec()`.
    QSeries truncated(const Rational &p) const
    {
        if (p > prec())
            throw Error(Errc::PrecisionExhausted,
                        "cannot truncate to " + to_string(p) + ": series only known below " + to_string(prec()));
        QSeries s = lifted(std::lcm(den_, to_index(p.get_den())));
        s.prec_ = scaled_index(p, s.den_);
        s.terms_.erase(s.terms_.lower_bound(s.prec_), s.terms_.end());
        s.normalize();
        return s;
    }

    /// Multiplication by q^e; the precision moves with the terms.
    QSeries shifted(const Rational &e) const
    {
        QSeries s = lifted(std::lcm(den_, to_index(e.get_den())));
        Index k = scaled_index(e, s.den_);
        std::map<Index, Rational> moved;
        for (auto &[i, c] : s.terms_)
            moved.emplace_hint(moved.end(), i + k, std::move(c));
        s.terms_ = std::move(moved);
        s.prec_ += k;
        s.normalize();
        return s;
    }

    QSeries scaled(const Rational &c) const
    {
        QSeries s = *this;
        if (c == 0) {
            s.terms_.clear();
            return s;
        }
        for (auto &[k, v] : s.terms_)
            v *= c;
        return s;
    }

    QSeries operator-() const { return scaled(Rational(-1)); }

    friend QSeries operator+(const QSeries &a, const QSeries &b) { return combine(a, b, false); }
    friend QSeries operator-(const QSeries &a, const QSeries &b) { return combine(a, b, true); }

    friend QSeries operator*(const QSeries &a, const QSeries &b)
    {
        Index den = std::lcm(a.den_, b.den_);
        QSeries x = a.lifted(den);
        QSeries y = b.lifted(den);
        QSeries out;
        out.den_ = den;
        out.prec_ = std::min(x.prec_ + y.lo_index(), y.prec_ + x.lo_index());
        if (x.empty() || y.empty()) {
            out.normalize();
            return out;
        }
        const Index base = x.lo_index() + y.lo_index();
        if (out.prec_ <= base) {
            out.normalize();
            return out;
        }
        std::vector<Rational> acc(static_cast<std::size_t>(out.prec_ - base));
        Rational prod;
        for (const auto &[i, ci] : x.terms_) {
            for (const auto &[j, cj] : y.terms_) {
                if (i + j >= out.prec_)
                    break;
                mpq_mul(prod.get_mpq_t(), ci.get_mpq_t(), cj.get_mpq_t());
                auto &slot = acc[static_cast<std::size_t>(i + j - base)];
                mpq_add(slot.get_mpq_t(), slot.get_mpq_t(), prod.get_mpq_t());
            }
        }
        for (std::size_t n = 0; n < acc.size(); ++n)
            if (acc[n] != 0)
                out.terms_.emplace_hint(out.terms_.end(), base + static_cast<Index>(n), std::move(acc[n]));
        out.normalize();
        return out;
    }

    friend QSeries operator*(const Rational &c, const QSeries &a) { return a.scaled(c); }

    /// Representation equality: same precision and the same known terms.
    friend bool operator==(const QSeries &a, const QSeries &b)
    {
        return a.den_ == b.den_ && a.prec_ == b.prec_ && a.terms_ == b.terms_;
    }

    /// True iff a and b have identical coefficients below min(prec).
    friend bool agree(const QSeries &a, const QSeries &b)
    {
        Rational p = std::min(a.prec(), b.prec());
        return a.truncated(p) == b.truncated(p);
    }

private:
    Index den_ = 1;
    Index prec_ = 0;
    std::map<Index, Rational> terms_;

    static Index to_index(const Integer &z)
    {
        if (!z.fits_slong_p())
            throw Error(Errc::InvalidArgument, "exponent index out of range");
        return z.get_si();
    }

    static Index scaled_index(const Rational &e, Index den)
    {
        Rational k = e * den;
        if (!is_integer(k))
            throw Error(Errc::InvalidArgument, "exponent " + to_string(e) + " not in (1/" + std::to_string(den) + ")Z");
        return to_index(k.get_num());
    }

    Index lo_index() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

    QSeries lifted(Index new_den) const
    {
        if (new_den == den_)
            return *this;
        const Index f = new_den / den_;
        QSeries s;
        s.den_ = new_den;
        s.prec_ = prec_ * f;
        for (const auto &[k, c] : terms_)
            s.terms_.emplace_hint(s.terms_.end(), k * f, c);
        return s;
    }

    void drop_zeros()
    {
        std::erase_if(terms_, [](const auto &kv) { return kv.second == 0; });
    }

    void normalize()
    {
        Index g = std::gcd(den_, prec_);
        for (const auto &[k, c] : terms_) {
            if (g == 1)
                break;
            g = std::gcd(g, k);
        }
        if (g <= 1)
            return;
        den_ /= g;
        prec_ /= g;
        std::map<Index, Rational> reduced;
        for (auto &[k, c] : terms_)
            reduced.emplace_hint(reduced.end(), k / g, std::move(c));
        terms_ = std::move(reduced);
    }

    static QSeries combine(const QSeries &a, const QSeries &b, bool subtract)
    {
        Index den = std::lcm(a.den_, b.den_);
        QSeries out = a.lifted(den);
        QSeries y = b.lifted(den);
        out.prec_ = std::min(out.prec_, y.prec_);
        out.terms_.erase(out.terms_.lower_bound(out.prec_), out.terms_.end());
        for (const auto &[k, c] : y.terms_) {
            if (k >= out.prec_)
                break;
            auto &slot = out.terms_[k];
            if (subtract)
                slot -= c;
            else
                slot += c;
        }
        out.drop_zeros();
        out.normalize();
        return out;
    }

    friend QSeries invert(const QSeries &a);
};

inline QSeries add(const QSeries &a, const QSeries &b) { return a + b; }
inline QSeries mul(const QSeries &a, const QSeries &b) { return a * b; }

/// Multiplicative inverse. If a = c q^l (1 + ...) is exact below p, the
/// inverse starts at q^-l and is exact below p - 2l.
inline QSeries invert(const QSeries &a)
{
    using Index = QSeries::Index;
    if (a.empty())
        throw Error(Errc::ZeroLeadingCoefficient, "lowest tracked coefficient vanishes (series known below q^(" +
                                                      to_string(a.prec()) + ") is zero there)");
    const Index l = a.terms_.begin()->first;
    const Rational inv_lead = 1 / a.terms_.begin()->second;
    const Index count = a.prec_ - l;
    std::vector<Rational> v(static_cast<std::size_t>(count));
    // unit part u_k = a_{l+k}, k >= 1
    std::vector<std::pair<Index, const Rational *>> unit;
    for (auto it = std::next(a.terms_.begin()); it != a.terms_.end(); ++it)
        unit.emplace_back(it->first - l, &it->second);
    Rational acc, prod;
    for (Index n = 0; n < count; ++n) {
        if (n == 0) {
            v[0] = inv_lead;
            continue;
        }
        acc = 0;
        for (const auto &[k, uk] : unit) {
            if (k > n)
                break;
            const Rational &vn = v[static_cast<std::size_t>(n - k)];
            if (vn == 0)
                continue;
            mpq_mul(prod.get_mpq_t(), uk->get_mpq_t(), vn.get_mpq_t());
            mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), prod.get_mpq_t());
        }
        v[static_cast<std::size_t>(n)] = -acc * inv_lead;
    }
    QSeries out;
    out.den_ = a.den_;
    out.prec_ = a.prec_ - 2 * l;
    for (Index n = 0; n < count; ++n)
        if (v[static_cast<std::size_t>(n)] != 0)
            out.terms_.emplace_hint(out.terms_.end(), n - l, std::move(v[static_cast<std::size_t>(n)]));
    out.normalize();
    return out;
}

inline QSeries pow(const QSeries &a, unsigned n)
{
    if (n == 0)
        return QSeries::monomial(1, 0, a.prec() - a.lo()); // relative precision of a
    QSeries result;
    bool have = false;
    QSeries base = a;
    while (n > 0) {
        if (n & 1u) {
            result = have ? result * base : base;
            have = true;
        }
        n >>= 1u;
        if (n > 0)
            base = base * base;
    }
    return result;
}

/// Text form: "c * q^(e) + ... + O(q^(prec))" in ascending exponent order.
inline std::string to_string(const QSeries &s)
{
    std::ostringstream os;
    bool first = true;
    s.for_each_term([&](const Rational &e, const Rational &c) {
        if (!first)
            os << " + ";
        os << to_string(c) << " * q^(" << to_string(e) << ")";
        first = false;
    });
    if (!first)
        os << " + ";
    os << "O(q^(" << to_string(s.prec()) << "))";
    return os.str();
}

namespace series {

namespace detail {

inline Integer divisor_power_sum(unsigned k, long n)
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

inline long integral_cover(const Rational &prec)
{
    Integer c = -floor(-prec); // ceiling
    return to_long(c);
}

/// 1 + c * sum sigma_k(n) q^n, exact below `prec`.
inline QSeries eisenstein(const Rational &prec, long c, unsigned k)
{
    const long top = integral_cover(prec);
    std::vector<QSeries::Term> terms{{0, 1}};
    for (long n = 1; n < top; ++n)
        terms.emplace_back(Rational(n), Rational(c * divisor_power_sum(k, n)));
    return QSeries::from_terms(terms, prec);
}

} // namespace detail

/// prod_{n>=1} (1 - q^n), exact below `prec`, from Euler's pentagonal theorem.
inline QSeries euler_product(const Rational &prec)
{
    const long top = detail::integral_cover(prec);
    std::vector<QSeries::Term> terms{{0, 1}};
    for (long k = 1; k * (3 * k - 1) / 2 < top; ++k) {
        const Rational sign(k % 2 == 0 ? 1 : -1);
        terms.emplace_back(Rational(k * (3 * k - 1) / 2), sign);
        terms.emplace_back(Rational(k * (3 * k + 1) / 2), sign);
    }
    return QSeries::from_terms(terms, prec);
}

/// Delta = q prod (1 - q^n)^24.
inline QSeries delta(const Rational &prec)
{
    if (prec < 1)
        throw Error(Errc::InvalidArgument, "Delta needs precision >= 1");
    QSeries p = euler_product(prec - 1);
    QSeries p2 = p * p;
    QSeries p4 = p2 * p2;
    QSeries p8 = p4 * p4;
    QSeries p16 = p8 * p8;
    return (p16 * p8).shifted(1);
}

inline QSeries e4(const Rational &prec)
{
    if (prec < 1)
        throw Error(Errc::InvalidArgument, "E4 needs precision >= 1");
    return detail::eisenstein(prec, 240, 3);
}

inline QSeries e6(const Rational &prec)
{
    if (prec < 1)
        throw Error(Errc::InvalidArgument, "E6 needs precision >= 1");
    return detail::eisenstein(prec, -504, 5);
}

/// j = E4^3 / Delta.
inline QSeries j_invariant(const Rational &prec)
{
    if (prec < 1)
        throw Error(Errc::InvalidArgument, "j needs precision >= 1");
    const Rational work = prec + 2;
    QSeries e = e4(work);
    return (e * e * e * invert(delta(work))).truncated(prec);
}

} // namespace series

} // namespace bkappa
