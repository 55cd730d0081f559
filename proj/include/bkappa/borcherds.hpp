#pragma once

/**
 * @file borcherds.hpp
 * @brief Bookkeeping for Borcherds forms Psi(f) on the signature (3,2)
 * lattice: principal parts, divisor and weight, the weight/degree identity,
 * and kappa(Psi(f)) assembled from the kappa_mu(m).
 *
 * Weights are reported for Psi(f)^2, whose weight is c_0(0); the half weight
 * is shown alongside.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bkappa/eisen.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/jacobi.hpp"
#include "bkappa/lfun.hpp"
#include "bkappa/rational.hpp"
#include "bkappa/symbolic.hpp"

namespace bkappa {

/// (m >= 0, mu) -> c_mu(-m), nonzero entries only.
using PrincipalPart = std::map<std::pair<Rational, int>, Integer>;

struct Divisor {
    struct Term {
        Rational m;
        int mu = 0;
        Integer mult;
    };
    std::vector<Term> terms;
};

struct DegreeCheck {
    Rational lhs; ///< -120 sum c_mu(-m) H(2, 4m)
    Rational rhs; ///< c_0(0)
    bool pass = false;
};

inline PrincipalPart extract_principal_part(const VectorValuedForm &f)
{
    PrincipalPart pp;
    for (int mu : {0, 1}) {
        const QSeries &s = f.component(mu);
        if (s.prec() <= 0)
            throw Error(Errc::PrecisionExhausted, "component " + std::to_string(mu) +
                                                      " is not known through the constant term");
        s.for_each_term([&](const Rational &e, const Rational &c) {
            if (e > 0)
                return;
            if (!is_integer(c))
                throw Error(Errc::NonIntegralPrincipalPart,
                            "c_" + std::to_string(mu) + "(" + to_string(e) + ") = " + to_string(c));
            pp.emplace(std::pair{Rational(-e), mu}, c.get_num());
        });
    }
    return pp;
}

inline Integer constant_coefficient(const PrincipalPart &pp)
{
    auto it = pp.find({Rational(0), 0});
    return it == pp.end() ? Integer(0) : it->second;
}

/// div(Psi(f)^2) = sum over m > 0 of c_mu(-m) Z(m, mu), largest m first.
inline Divisor divisor_of_psi(const PrincipalPart &pp)
{
    Divisor d;
    for (const auto &[key, c] : pp)
        if (key.first > 0)
            d.terms.push_back({key.first, key.second, c});
    std::stable_sort(d.terms.begin(), d.terms.end(), [](const Divisor::Term &a, const Divisor::Term &b) {
        return a.m > b.m;
    });
    return d;
}

inline Divisor divisor_of_psi(const VectorValuedForm &f) { return divisor_of_psi(extract_principal_part(f)); }

/// Weight of Psi(f)^2.
inline Rational weight_of_psi(const PrincipalPart &pp) { return Rational(constant_coefficient(pp)); }
inline Rational weight_of_psi(const VectorValuedForm &f) { return weight_of_psi(extract_principal_part(f)); }

inline DegreeCheck degree_identity_check(const PrincipalPart &pp)
{
    DegreeCheck chk;
    Rational sum = 0;
    for (const auto &[key, c] : pp)
        if (key.first > 0)
            sum += Rational(c) * eis_value_coeff(SignatureContext::n3(), key.second, key.first);
    chk.lhs = -sum;
    chk.rhs = Rational(constant_coefficient(pp));
    chk.pass = (chk.lhs == chk.rhs);
    return chk;
}

inline DegreeCheck degree_identity_check(const VectorValuedForm &f)
{
    return degree_identity_check(extract_principal_part(f));
}

struct KappaContribution {
    Rational m;
    int mu = 0;
    Integer coeff; ///< c_mu(-m)
    KappaTerm term;
};

/// One bracket of the regrouped kappa: weight * inner.
struct GroupedBlock {
    std::string label;
    Rational weight;
    LinearForm inner;
    Real numeric; ///< weight * inner
};

/// A published value that disagrees with the one computed here.
struct Discrepancy {
    std::string quantity;
    LinearForm derived;
    LinearForm literature;
    Rational weight;
    LinearForm kappa_difference; ///< weight * (derived - literature)
    Real numeric_difference;
};

struct ClosedFormCheck {
    std::string name;
    LinearForm expected;
    bool symbolic_match = false;
    Real expected_numeric;
    Real abs_diff;
    bool numeric_pass = false;
};

struct KappaReport {
    PrincipalPart principal_part;
    Rational weight;      ///< weight of Psi(f)^2 = c_0(0)
    Rational weight_half; ///< c_0(0)/2
    Divisor divisor;
    Rational degree_lhs; ///< sum c_mu(-m) deg Z(m, mu)
    Rational degree_rhs; ///< -vol(X) c_0(0)
    LinearForm symbolic;
    Real kappa;
    std::vector<KappaContribution> breakdown;
    KappaContribution constant_term;
    std::vector<GroupedBlock> grouped;
    std::optional<ClosedFormCheck> closed_form_check;
    std::vector<Discrepancy> discrepancies;
    int digits = 0;
};

/// -4/3 - 2 zeta'(-3)/zeta(-3) + C + C0/2, which multiplies c_0(0) after regrouping.
inline LinearForm constant_block_regrouped()
{
    return kappa_constant_block().scaled(-1) + LinearForm::constant_C0().scaled(make_rational(1, 2));
}

/// The closed form of kappa(Psi(f)) for the weight 5 input:
/// 10 [-4/3 - 2 zeta'(-3)/zeta(-3) + zeta'(-1)/zeta(-1) + (3/2) log 2 + log pi].
inline LinearForm delta5_closed_form()
{
    LinearForm inner = LinearForm::constant(make_rational(-4, 3)) + LinearForm::zeta_logderiv(-3).scaled(-2) +
                       LinearForm::zeta_logderiv(-1) + LinearForm::log_of(2).scaled(make_rational(3, 2)) +
                       LinearForm::log_pi();
    return inner.scaled(10);
}

inline bool is_delta5_input(const PrincipalPart &pp)
{
    return pp == PrincipalPart{{{Rational(0), 0}, Integer(10)}, {{make_rational(1, 4), 1}, Integer(1)}};
}

/// Published value of b_2'(2,-1)/b_2(2,-1) / log 2.
inline Rational literature_b2_logderiv() { return make_rational(-9, 11); }

namespace detail {

/// L'/L + (1/2) log d + sum (k + r_p) log p, i.e. minus the m-dependent part
/// of the kappa_mu bracket.
inline LinearForm regrouped_inner(const KappaBreakdown &b)
{
    LinearForm inner = (b.disc_log + b.l_term).scaled(-1);
    for (const auto &t : b.primes)
        inner -= t.form();
    return inner;
}

} // namespace detail

inline KappaReport kappa_psi(const PrincipalPart &pp, AtomEvaluator &eval)
{
    const DegreeCheck chk = degree_identity_check(pp);
    if (!chk.pass)
        throw Error(Errc::DegreeIdentityViolation,
                    "-120 sum c H(2,4m) = " + to_string(chk.lhs) + " but c_0(0) = " + to_string(chk.rhs));
    PrecisionScope scope(eval.config());
    const SignatureContext ctx = SignatureContext::n3();

    KappaReport r;
    r.digits = eval.config().digits;
    r.principal_part = pp;
    r.weight = weight_of_psi(pp);
    r.weight_half = r.weight / 2;
    r.divisor = divisor_of_psi(pp);
    const Integer c0 = constant_coefficient(pp);
    r.degree_rhs = -*ctx.vol_X * Rational(c0);
    r.degree_lhs = 0;

    for (const auto &t : r.divisor.terms) {
        KappaContribution kc{t.m, t.mu, t.mult, kappa_mu(t.mu, t.m, eval)};
        r.degree_lhs += Rational(t.mult) * degree_Z(t.mu, t.m);
        r.symbolic += kc.term.symbolic.scaled(Rational(t.mult));

        const KappaBreakdown &b = kc.term.breakdown;
        GroupedBlock g;
        g.weight = -Rational(t.mult) * b.prefactor;
        g.inner = detail::regrouped_inner(b);
        g.label = "m=" + to_string(t.m) + ",mu=" + std::to_string(t.mu);
        g.numeric = to_real(g.weight) * eval.evaluate(g.inner);
        r.grouped.push_back(std::move(g));

        for (const auto &pt : b.primes) {
            if (pt.p == 2 && b.n == 2 && b.d == 1) {
                Discrepancy dsc;
                dsc.quantity = "b_2'(2,-1)/b_2(2,-1)";
                dsc.derived = LinearForm::log_of(2).scaled(-pt.local_coeff);
                dsc.literature = LinearForm::log_of(2).scaled(literature_b2_logderiv());
                dsc.weight = -Rational(t.mult) * b.prefactor;
                dsc.kappa_difference = (dsc.derived - dsc.literature).scaled(dsc.weight);
                dsc.numeric_difference = eval.evaluate(dsc.kappa_difference);
                r.discrepancies.push_back(std::move(dsc));
            }
        }
        r.breakdown.push_back(std::move(kc));
    }

    r.constant_term = {Rational(0), 0, c0, kappa_mu(0, Rational(0), eval)};
    r.symbolic += r.constant_term.term.symbolic.scaled(Rational(c0));
    {
        GroupedBlock g;
        g.weight = Rational(c0);
        g.inner = constant_block_regrouped();
        g.label = "constant";
        g.numeric = to_real(g.weight) * eval.evaluate(g.inner);
        r.grouped.push_back(std::move(g));
    }
    r.kappa = eval.evaluate(r.symbolic);

    if (is_delta5_input(pp)) {
        ClosedFormCheck cf;
        cf.name = "weight 5 closed form";
        cf.expected = delta5_closed_form();
        cf.symbolic_match = (cf.expected == r.symbolic);
        cf.expected_numeric = eval.evaluate(cf.expected);
        cf.abs_diff = abs(cf.expected_numeric - r.kappa);
        cf.numeric_pass = cf.abs_diff < pow10_neg(eval.config().digits - 12);
        r.closed_form_check = std::move(cf);
    }
    return r;
}

inline KappaReport kappa_psi(const VectorValuedForm &f, const PrecisionConfig &cfg)
{
    AtomEvaluator eval(cfg);
    return kappa_psi(extract_principal_part(f), eval);
}

/// The input form j^t f with f = h/Delta, known through the constant term.
inline VectorValuedForm family_input(unsigned t) { return jt_family_member(t, Rational(1)); }

/// kappa(Psi(f)) - 7 log 2 for the weight 5 input.
inline Real delta5_normalization(const PrecisionConfig &cfg)
{
    AtomEvaluator eval(cfg);
    KappaReport r = kappa_psi(extract_principal_part(family_input(0)), eval);
    PrecisionScope scope(cfg);
    return r.kappa - eval.evaluate(LinearForm::log_of(2).scaled(7));
}

} // namespace bkappa
