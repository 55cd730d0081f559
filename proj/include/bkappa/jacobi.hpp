#pragma once

/**
 * @file jacobi.hpp
 * @brief Theta components of the weight 12, index 1 Jacobi cusp form and the
 * weight -1/2 vector-valued input forms built from it.
 *
 * For index 1 a Jacobi form sum c(4n - r^2) q^n zeta^r is determined by its
 * theta components h_mu(tau) = sum_{N = -mu mod 4} c(N) q^(N/4), mu = 0, 1.
 * The Jacobi-Eisenstein series E_{k,1} has c(N) = H(k-1, N) / H(k-1, 0),
 * and the cusp form is the normalized combination E4^2 E_{4,1} - E6 E_{6,1}.
 * Multiplying a Jacobi form by an elliptic modular form multiplies each
 * theta component by it, so the two-variable form is never materialized.
 */

#include <array>
#include <map>
#include <utility>

#include "bkappa/arith.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/qseries.hpp"
#include "bkappa/rational.hpp"

namespace bkappa {

/// C(D) for D >= 0, supported on D = 0, 3 mod 4.
struct JacobiCuspCoefficients {
    std::map<long, Rational> c12;

    Rational at(long D) const
    {
        auto it = c12.find(D);
        return it == c12.end() ? Rational(0) : it->second;
    }
};

struct ThetaComponents {
    QSeries h0; ///< exponents in Z
    QSeries h1; ///< exponents in Z - 1/4
    JacobiCuspCoefficients coefficients;
};

/// Weight -1/2 form valued in the two-dimensional group ring; f0 lives on
/// exponents in Z and f1 on exponents in Z - 1/4.
struct VectorValuedForm {
    QSeries f0;
    QSeries f1;
    Rational weight = make_rational(-1, 2);
    /// R with c_mu(m) = 0 for all m < -R.
    Rational principal_bound = 0;

    const QSeries &component(int mu) const { return mu == 0 ? f0 : f1; }
};

/// Classical table of the cusp form's coefficients (normalized C(3) = 1).
inline constexpr std::array<std::pair<long, long>, 11> kReferenceC12{{
    {0, 0},
    {3, 1},
    {4, 10},
    {7, -88},
    {8, -132},
    {11, 1275},
    {12, 736},
    {15, -8040},
    {16, -2880},
    {19, 24035},
    {20, 13080},
}};

namespace detail {

/// Exponent coset of component mu: 0 for mu = 0, 3/4 (= -1/4 mod 1) for mu = 1.
inline Rational coset_offset(int mu) { return mu == 0 ? Rational(0) : make_rational(3, 4); }

inline bool in_coset(const Rational &e, int mu)
{
    Rational frac = e - Rational(floor(e));
    return frac == coset_offset(mu);
}

/// Theta components of the Jacobi-Eisenstein series E_{k,1}, exact below `prec`.
inline std::pair<QSeries, QSeries> jacobi_eisenstein_theta(unsigned k, const Rational &prec)
{
    const unsigned r = k - 1;
    const Rational norm = cohen_H(r, 0);
    const long top = to_long(floor(4 * prec));
    std::vector<QSeries::Term> t0, t1;
    for (long N = 0; N <= top; ++N) {
        const long m4 = mod_floor(-N, 4);
        if (m4 > 1)
            continue;
        Rational c = cohen_H(r, N) / norm;
        (m4 == 0 ? t0 : t1).emplace_back(make_rational(N, 4), c);
    }
    return {QSeries::from_terms(t0, prec), QSeries::from_terms(t1, prec)};
}

} // namespace detail

/// h0, h1 of the weight 12 index 1 cusp form, exact below `prec`. The
/// computed coefficients are checked against `kReferenceC12` on every call.
inline ThetaComponents phi12_theta_components(const Rational &prec)
{
    if (prec <= 0)
        throw Error(Errc::InvalidArgument, "theta components need positive precision");
    // always cover the whole reference table (D <= 20)
    const Rational work = std::max(prec, Rational(6));
    const QSeries e4 = series::e4(work);
    const QSeries e6 = series::e6(work);
    const QSeries e4sq = e4 * e4;
    const auto [a0, a1] = detail::jacobi_eisenstein_theta(4, work);
    const auto [b0, b1] = detail::jacobi_eisenstein_theta(6, work);
    QSeries h0 = e4sq * a0 - e6 * b0;
    QSeries h1 = e4sq * a1 - e6 * b1;
    const Rational lead = h1.coeff(make_rational(3, 4));
    if (lead == 0)
        throw Error(Errc::ConstructionMismatch, "C(3) vanishes; cannot normalize");
    h0 = h0.scaled(1 / lead);
    h1 = h1.scaled(1 / lead);

    ThetaComponents out;
    for (long D = 0; make_rational(D, 4) < work; ++D) {
        const long m4 = mod_floor(-D, 4);
        if (m4 > 1)
            continue;
        Rational c = (m4 == 0 ? h0 : h1).coeff(make_rational(D, 4));
        if (c != 0)
            out.coefficients.c12.emplace(D, c);
    }
    for (const auto &[D, expected] : kReferenceC12) {
        Rational got = out.coefficients.at(D);
        if (got != expected)
            throw Error(Errc::ConstructionMismatch, "C(" + std::to_string(D) + ") = " + to_string(got) +
                                                        ", expected " + std::to_string(expected));
    }
    for (const auto &[D, c] : out.coefficients.c12)
        if (!is_integer(c))
            throw Error(Errc::ConstructionMismatch, "C(" + std::to_string(D) + ") is not an integer");
    out.h0 = h0.truncated(prec);
    out.h1 = h1.truncated(prec);
    return out;
}

/// Validates the coset lattice and principal-part integrality, and derives
/// the principal bound.
inline VectorValuedForm make_vv_form(QSeries f0, QSeries f1, Rational weight)
{
    Rational bound = 0;
    for (int mu : {0, 1}) {
        const QSeries &f = mu == 0 ? f0 : f1;
        f.for_each_term([&](const Rational &e, const Rational &c) {
            if (!detail::in_coset(e, mu))
                throw Error(Errc::InvalidForm, "component " + std::to_string(mu) + " has exponent " + to_string(e) +
                                                   " outside its coset");
            if (e <= 0 && !is_integer(c))
                throw Error(Errc::NonIntegralPrincipalPart,
                            "c_" + std::to_string(mu) + "(" + to_string(e) + ") = " + to_string(c) + " is not an integer");
            if (-e > bound)
                bound = -e;
        });
    }
    VectorValuedForm f;
    f.f0 = std::move(f0);
    f.f1 = std::move(f1);
    f.weight = std::move(weight);
    f.principal_bound = bound;
    return f;
}

/// f_mu = h_mu / Delta, exact below `prec`.
inline VectorValuedForm build_vv_form(const Rational &prec)
{
    if (prec <= 0)
        throw Error(Errc::InvalidArgument, "vector-valued form needs positive precision");
    ThetaComponents h = phi12_theta_components(prec + 1);
    const QSeries delta_inv = invert(series::delta(prec + 2));
    QSeries f0 = h.h0 * delta_inv;
    QSeries f1 = h.h1 * delta_inv;
    if (f0.prec() < prec || f1.prec() < prec)
        throw Error(Errc::PrecisionExhausted, "h/Delta lost precision");
    return make_vv_form(f0.truncated(prec), f1.truncated(prec), make_rational(-1, 2));
}

/// j^t f, exact below `out_prec`. Fails if the input is not known far
/// enough: multiplying by j^t costs t in precision.
inline VectorValuedForm scale_by_j_power(const VectorValuedForm &f, unsigned t, const Rational &out_prec)
{
    const Rational avail = std::min(f.f0.prec(), f.f1.prec()) - t;
    if (avail < out_prec)
        throw Error(Errc::PrecisionExhausted, "j^" + std::to_string(t) + " f is only certified below q^(" +
                                                  to_string(avail) + "), requested " + to_string(out_prec));
    if (t == 0)
        return make_vv_form(f.f0.truncated(out_prec), f.f1.truncated(out_prec), f.weight);
    const Rational j_prec = std::min(f.f0.prec(), f.f1.prec()) + f.principal_bound + 2;
    const QSeries j = series::j_invariant(j_prec);
    const QSeries jt = pow(j, t);
    QSeries g0 = jt * f.f0;
    QSeries g1 = jt * f.f1;
    if (g0.prec() < out_prec || g1.prec() < out_prec)
        throw Error(Errc::PrecisionExhausted, "j power lost precision");
    return make_vv_form(g0.truncated(out_prec), g1.truncated(out_prec), f.weight);
}

/// j^t f certified through the constant term (precision > 0).
inline VectorValuedForm scale_by_j_power(const VectorValuedForm &f, unsigned t)
{
    const Rational avail = std::min(f.f0.prec(), f.f1.prec()) - t;
    if (avail <= 0)
        throw Error(Errc::PrecisionExhausted, "input precision does not cover the principal part of j^" +
                                                  std::to_string(t) + " f");
    return scale_by_j_power(f, t, avail);
}

/// The member j^t (h/Delta) of the family, exact below `prec`.
inline VectorValuedForm jt_family_member(unsigned t, const Rational &prec)
{
    return scale_by_j_power(build_vv_form(prec + t), t, prec);
}

} // namespace bkappa
