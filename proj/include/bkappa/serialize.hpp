#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encodings. Exact rationals are strings "p/q" (or "p"); real
 * numbers are decimal strings accompanied by their digit count.
 */

#include <string>
#include <vector>

#include "json.hpp"

#include "bkappa/borcherds.hpp"
#include "bkappa/eisen.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/jacobi.hpp"
#include "bkappa/lfun.hpp"
#include "bkappa/qseries.hpp"
#include "bkappa/rational.hpp"
#include "bkappa/symbolic.hpp"

namespace bkappa {

using json = nlohmann::ordered_json;

inline json rational_json(const Rational &q) { return to_string(q); }

inline Rational rational_from_json(const json &j)
{
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational(j.get<long>());
    throw Error(Errc::ParseError, "expected a rational string, got " + j.dump());
}

inline json real_json(const Real &x, int digits) { return to_decimal(x, digits); }

inline json to_json(const QSeries &s)
{
    json terms = json::array();
    s.for_each_term([&](const Rational &e, const Rational &c) {
        terms.push_back({{"exp", rational_json(e)}, {"coeff", rational_json(c)}});
    });
    return {{"den", s.den()}, {"lo", rational_json(s.lo())}, {"prec", rational_json(s.prec())}, {"terms", terms}};
}

/// `den` and `lo` are derived data and are not trusted on input.
inline QSeries qseries_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("prec") || !j.contains("terms") || !j["terms"].is_array())
        throw Error(Errc::ParseError, "q-series JSON needs 'prec' and a 'terms' array");
    std::vector<QSeries::Term> terms;
    for (const auto &t : j["terms"]) {
        if (!t.is_object() || !t.contains("exp") || !t.contains("coeff"))
            throw Error(Errc::ParseError, "q-series term needs 'exp' and 'coeff'");
        terms.emplace_back(rational_from_json(t["exp"]), rational_from_json(t["coeff"]));
    }
    return QSeries::from_terms(terms, rational_from_json(j["prec"]));
}

inline json to_json(const VectorValuedForm &f)
{
    json comps = json::array();
    for (int mu : {0, 1})
        comps.push_back({{"coset", mu}, {"series", to_json(f.component(mu))}});
    return {{"weight", rational_json(f.weight)}, {"components", comps}};
}

/// Parses and validates (coset lattice, integral principal part).
inline VectorValuedForm vv_form_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("weight") || !j.contains("components") || !j["components"].is_array())
        throw Error(Errc::ParseError, "form JSON needs 'weight' and a 'components' array");
    const Rational weight = rational_from_json(j["weight"]);
    if (weight != make_rational(-1, 2))
        throw Error(Errc::InvalidForm, "input forms must have weight -1/2, got " + to_string(weight));
    std::optional<QSeries> comp[2];
    for (const auto &c : j["components"]) {
        if (!c.is_object() || !c.contains("coset") || !c["coset"].is_number_integer() || !c.contains("series"))
            throw Error(Errc::ParseError, "component needs an integer 'coset' and a 'series'");
        const int mu = c["coset"].get<int>();
        if (mu != 0 && mu != 1)
            throw Error(Errc::InvalidForm, "coset must be 0 or 1");
        if (comp[mu])
            throw Error(Errc::InvalidForm, "coset " + std::to_string(mu) + " given twice");
        comp[mu] = qseries_from_json(c["series"]);
    }
    if (!comp[0] || !comp[1])
        throw Error(Errc::InvalidForm, "both cosets 0 and 1 are required");
    return make_vv_form(*comp[0], *comp[1], weight);
}

inline json to_json(const LinearForm &f)
{
    json terms = json::array();
    for (const auto &[a, c] : f.coefficients())
        terms.push_back({{"atom", to_string(a)}, {"coeff", rational_json(c)}});
    return terms;
}

inline json to_json(const LDerivResult &r, int digits)
{
    json j = {{"value", real_json(r.value, digits)}, {"deriv", real_json(r.deriv, digits)}};
    j["logderiv"] = r.logderiv ? real_json(*r.logderiv, digits) : json(nullptr);
    j["err"] = real_json(r.err_estimate, 6);
    j["digits"] = digits;
    return j;
}

inline json to_json(const KappaBreakdown &b)
{
    json primes = json::array();
    for (const auto &t : b.primes)
        primes.push_back({{"p", t.p},
                          {"k", t.k},
                          {"log_abs_coeff", rational_json(t.log_abs_coeff)},
                          {"local_coeff", rational_json(t.local_coeff)}});
    return {{"prefactor", rational_json(b.prefactor)},
            {"n", b.n},
            {"d", b.d},
            {"constant_block", to_json(b.constant_block)},
            {"disc_log", to_json(b.disc_log)},
            {"l_term", to_json(b.l_term)},
            {"primes", primes}};
}

inline json to_json(const KappaTerm &t, int digits)
{
    return {{"m", rational_json(t.m)},
            {"mu", t.mu},
            {"value", real_json(t.numeric, digits)},
            {"digits", digits},
            {"symbolic", to_json(t.symbolic)},
            {"text", to_string(t.symbolic)},
            {"breakdown", to_json(t.breakdown)}};
}

inline json to_json(const PrincipalPart &pp)
{
    json rows = json::array();
    for (const auto &[key, c] : pp)
        rows.push_back({{"m", rational_json(key.first)}, {"mu", key.second}, {"coeff", c.get_str()}});
    return rows;
}

inline json to_json(const Divisor &d)
{
    json rows = json::array();
    for (const auto &t : d.terms)
        rows.push_back({{"m", rational_json(t.m)}, {"mu", t.mu}, {"mult", t.mult.get_str()}});
    return rows;
}

inline json to_json(const KappaReport &r, int digits)
{
    json j;
    j["principal_part"] = to_json(r.principal_part);
    j["weight"] = rational_json(r.weight);
    j["weight_half"] = rational_json(r.weight_half);
    j["divisor"] = to_json(r.divisor);
    j["degree_check"] = {{"lhs", rational_json(r.degree_lhs)},
                         {"rhs", rational_json(r.degree_rhs)},
                         {"pass", r.degree_lhs == r.degree_rhs}};
    j["kappa"] = real_json(r.kappa, digits);
    j["digits"] = digits;
    j["symbolic"] = to_json(r.symbolic);
    j["text"] = to_string(r.symbolic);
    json br = json::array();
    for (const auto &c : r.breakdown)
        br.push_back({{"m", rational_json(c.m)}, {"mu", c.mu}, {"coeff", c.coeff.get_str()},
                      {"kappa_mu", to_json(c.term, digits)}});
    j["breakdown"] = br;
    j["constant_term"] = {{"coeff", r.constant_term.coeff.get_str()},
                          {"kappa_mu", to_json(r.constant_term.term, digits)}};
    json gr = json::array();
    for (const auto &g : r.grouped)
        gr.push_back({{"label", g.label},
                      {"weight", rational_json(g.weight)},
                      {"inner", to_json(g.inner)},
                      {"text", to_string(g.inner)},
                      {"value", real_json(g.numeric, digits)}});
    j["grouped"] = gr;
    if (r.closed_form_check) {
        const auto &cf = *r.closed_form_check;
        j["closed_form_check"] = {{"name", cf.name},
                                  {"expected", to_string(cf.expected)},
                                  {"symbolic_match", cf.symbolic_match},
                                  {"expected_value", real_json(cf.expected_numeric, digits)},
                                  {"abs_diff", real_json(cf.abs_diff, 6)},
                                  {"pass", cf.symbolic_match && cf.numeric_pass}};
    } else {
        j["closed_form_check"] = nullptr;
    }
    json ds = json::array();
    for (const auto &d : r.discrepancies)
        ds.push_back({{"quantity", d.quantity},
                      {"derived", to_string(d.derived)},
                      {"literature", to_string(d.literature)},
                      {"weight", rational_json(d.weight)},
                      {"kappa_difference", to_string(d.kappa_difference)},
                      {"kappa_difference_value", real_json(d.numeric_difference, digits)}});
    j["discrepancies"] = ds;
    return j;
}

inline json error_json(const Error &e) { return {{"error", to_string(e.code())}, {"detail", e.detail()}}; }

} // namespace bkappa
