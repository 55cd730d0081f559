#pragma once

/**
 * @file cli.hpp
 * @brief The `bkappa` command line. `run` takes the argument vector and
 * output streams so it can be driven from tests.
 *
 * Exit codes: 0 success, 1 computation error, 2 usage error.
 */

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bkappa/borcherds.hpp"
#include "bkappa/eisen.hpp"
#include "bkappa/errors.hpp"
#include "bkappa/jacobi.hpp"
#include "bkappa/lfun.hpp"
#include "bkappa/qseries.hpp"
#include "bkappa/serialize.hpp"
#include "bkappa/verify/acceptance.hpp"

namespace bkappa::cli {

struct RunConfig {
    int digits = 50;
    std::string prec = "12";
    bool json = false;
};

namespace detail {

/// Accepts "p/q", integers, or decimal notation.
inline Real parse_real(const std::string &s)
{
    try {
        return to_real(parse_rational(s));
    } catch (const Error &) {
        try {
            return Real(s);
        } catch (const std::exception &) {
            throw Error(Errc::ParseError, "cannot parse a number from '" + s + "'");
        }
    }
}

inline PrecisionConfig precision(const RunConfig &rc)
{
    PrecisionConfig cfg;
    cfg.digits = rc.digits;
    cfg.validate();
    return cfg;
}

/// Empty when the --prec value is unusable.
inline std::optional<Rational> series_prec(const RunConfig &rc)
{
    try {
        const Rational p = parse_rational(rc.prec);
        if (p >= 2)
            return p;
    } catch (const Error &) {
    }
    return std::nullopt;
}

inline void print_form_text(std::ostream &out, const VectorValuedForm &f)
{
    out << "f0 = " << to_string(f.f0) << "\n";
    out << "f1 = " << to_string(f.f1) << "\n";
}

inline void print_report_text(std::ostream &out, const KappaReport &r, int digits)
{
    out << "principal part:\n";
    for (const auto &[key, c] : r.principal_part)
        out << "  c_" << key.second << "(" << to_string(-key.first) << ") = " << c.get_str() << "\n";
    out << "weight of Psi^2: " << to_string(r.weight) << " (Psi: " << to_string(r.weight_half) << ")\n";
    out << "divisor of Psi^2:";
    bool first = true;
    for (const auto &t : r.divisor.terms) {
        out << (first ? " " : " + ") << t.mult.get_str() << " Z(" << to_string(t.m) << ", phi_" << t.mu << ")";
        first = false;
    }
    out << "\n";
    out << "degree check: " << to_string(r.degree_lhs) << " = " << to_string(r.degree_rhs)
        << (r.degree_lhs == r.degree_rhs ? "  ok" : "  MISMATCH") << "\n";
    out << "kappa = " << to_decimal(r.kappa, digits) << "\n";
    out << "      = " << to_string(r.symbolic) << "\n";
    out << "terms:\n";
    for (const auto &kc : r.breakdown)
        out << "  " << kc.coeff.get_str() << " * kappa_" << kc.mu << "(" << to_string(kc.m)
            << "), kappa = " << to_decimal(kc.term.numeric, digits) << "\n";
    out << "  " << r.constant_term.coeff.get_str() << " * C0/2\n";
    out << "grouped:\n";
    for (const auto &g : r.grouped)
        out << "  " << to_string(g.weight) << " [" << to_string(g.inner) << "]  (" << g.label << ")\n";
    if (r.closed_form_check) {
        const auto &cf = *r.closed_form_check;
        out << "closed form (" << cf.name << "): " << to_string(cf.expected) << "\n";
        out << "  symbolic " << (cf.symbolic_match ? "match" : "MISMATCH") << ", numeric gap "
            << to_decimal(cf.abs_diff, 3) << "\n";
    }
    for (const auto &d : r.discrepancies) {
        out << "discrepancy: " << d.quantity << " computed " << to_string(d.derived) << ", published "
            << to_string(d.literature) << "\n";
        out << "  effect on kappa: " << to_string(d.kappa_difference) << " = "
            << to_decimal(d.numeric_difference, digits) << "\n";
    }
}

} // namespace detail

inline int cmd_cohen(unsigned r, long max_n, const RunConfig &rc, std::ostream &out)
{
    json rows = json::array();
    for (long N = 0; N <= max_n; ++N) {
        if (!cohen_admissible(r, N))
            continue;
        const Rational H = cohen_H(r, N);
        const Rational scaled = -120 * H;
        if (rc.json)
            rows.push_back({{"N", N}, {"H", rational_json(H)}, {"minus120H", rational_json(scaled)}});
        else
            out << N << "\t" << to_string(H) << "\t" << to_string(scaled) << "\n";
    }
    if (rc.json)
        out << rows.dump(2) << "\n";
    return 0;
}

inline int cmd_series(const std::string &name, unsigned t, const RunConfig &rc, std::ostream &out)
{
    const Rational prec = *detail::series_prec(rc);
    if (name == "f" || name == "h") {
        VectorValuedForm f;
        if (name == "f") {
            f = jt_family_member(t, prec);
        } else {
            const ThetaComponents h = phi12_theta_components(prec);
            f.f0 = h.h0;
            f.f1 = h.h1;
            f.weight = make_rational(23, 2);
        }
        if (rc.json)
            out << to_json(f).dump(2) << "\n";
        else
            detail::print_form_text(out, f);
        return 0;
    }
    QSeries s;
    if (name == "delta")
        s = series::delta(prec);
    else if (name == "e4")
        s = series::e4(prec);
    else if (name == "e6")
        s = series::e6(prec);
    else if (name == "j")
        s = series::j_invariant(prec);
    else if (name == "eta24")
        s = pow(series::euler_product(prec), 24);
    else
        throw Error(Errc::InvalidArgument, "unknown series '" + name + "'");
    if (rc.json)
        out << to_json(s).dump(2) << "\n";
    else
        out << to_string(s) << "\n";
    return 0;
}

inline int cmd_lvalue(long d, const std::string &s_text, bool deriv, const RunConfig &rc, std::ostream &out)
{
    const PrecisionConfig cfg = detail::precision(rc);
    PrecisionScope scope(cfg);
    const Real s = detail::parse_real(s_text);
    const LDerivResult r = dirichlet_L_deriv(s, d, cfg);
    const int digits = cfg.digits;
    if (rc.json) {
        json j = to_json(r, digits);
        if (!deriv) {
            j.erase("deriv");
            j.erase("logderiv");
        }
        out << j.dump(2) << "\n";
    } else {
        out << "value    " << to_decimal(r.value, digits) << "\n";
        if (deriv) {
            out << "deriv    " << to_decimal(r.deriv, digits) << "\n";
            out << "logderiv " << (r.logderiv ? to_decimal(*r.logderiv, digits) : std::string("undefined")) << "\n";
        }
        out << "err      " << to_decimal(r.err_estimate, 3) << "\n";
    }
    return 0;
}

inline int cmd_kappa_mu(int mu, const std::string &m_text, const std::optional<std::string> &v_text,
                        const std::optional<std::string> &l2_text, const RunConfig &rc, std::ostream &out)
{
    const PrecisionConfig cfg = detail::precision(rc);
    PrecisionScope scope(cfg);
    const Rational m = parse_rational(m_text);
    const int digits = cfg.report_digits();
    std::optional<KappaTerm> term;
    if (m >= 0)
        term = kappa_mu(mu, m, cfg);
    std::optional<Real> b;
    if (v_text) {
        std::optional<Real> l2;
        if (l2_text)
            l2 = detail::parse_real(*l2_text);
        b = b_mu(mu, m, detail::parse_real(*v_text), cfg, l2);
    } else if (!term) {
        throw Error(Errc::InvalidArgument, "kappa_mu(m) needs m >= 0; pass --v for b_mu at m < 0");
    }
    if (rc.json) {
        json j = term ? to_json(*term, digits) : json{{"m", rational_json(m)}, {"mu", mu}};
        if (b) {
            j["v"] = *v_text;
            j["b"] = real_json(*b, digits);
        }
        out << j.dump(2) << "\n";
    } else {
        if (term) {
            out << "kappa_" << mu << "(" << to_string(m) << ") = " << to_decimal(term->numeric, digits) << "\n";
            out << "  = " << to_string(term->symbolic) << "\n";
            const KappaBreakdown &bd = term->breakdown;
            if (bd.prefactor != 0 && m > 0) {
                out << "  prefactor " << to_string(bd.prefactor) << ", 4m = " << bd.n << "^2 * " << bd.d << "\n";
                for (const auto &p : bd.primes)
                    out << "  p = " << p.p << ": log|n|_p = " << to_string(p.log_abs_coeff) << " log " << p.p
                        << ", -b'/b = " << to_string(p.local_coeff) << " log " << p.p << "\n";
            }
        }
        if (b)
            out << "b_" << mu << "(" << to_string(m) << ", " << *v_text << ") = " << to_decimal(*b, digits) << "\n";
    }
    return 0;
}

inline int cmd_borcherds(std::optional<unsigned> t, const std::optional<std::string> &input, const RunConfig &rc,
                         std::ostream &out)
{
    const PrecisionConfig cfg = detail::precision(rc);
    VectorValuedForm f;
    if (input) {
        std::ifstream in(*input);
        if (!in)
            throw Error(Errc::InvalidArgument, "cannot open " + *input);
        json j;
        try {
            in >> j;
        } catch (const json::exception &e) {
            throw Error(Errc::ParseError, e.what());
        }
        f = vv_form_from_json(j);
    } else {
        f = jt_family_member(t.value_or(0), *detail::series_prec(rc));
    }
    const KappaReport r = kappa_psi(f, cfg);
    PrecisionScope scope(cfg);
    const int digits = cfg.report_digits();
    if (rc.json) {
        json j;
        if (t && !input)
            j["t"] = *t;
        j["input"] = to_json(f);
        j["report"] = to_json(r, digits);
        out << j.dump(2) << "\n";
    } else {
        if (t && !input)
            out << "input j^" << *t << " f:\n";
        detail::print_form_text(out, f);
        detail::print_report_text(out, r, digits);
    }
    return 0;
}

inline int cmd_check(const RunConfig &rc, std::ostream &out)
{
    const PrecisionConfig cfg = detail::precision(rc);
    const auto results = verify::run_acceptance(cfg);
    bool all = true;
    json rows = json::array();
    for (const auto &r : results) {
        all = all && r.pass;
        if (rc.json)
            rows.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        else
            out << verify::format_line(r) << "\n";
    }
    if (rc.json)
        out << json{{"pass", all}, {"criteria", rows}}.dump(2) << "\n";
    return all ? 0 : 1;
}

inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact and high-precision tools for Borcherds forms on a signature (3,2) lattice", "bkappa"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig rc;
    app.add_option("--digits", rc.digits, "decimal digits of working precision")
        ->check(CLI::Range(15, 100000))
        ->capture_default_str();
    app.add_flag("--json", rc.json, "machine-readable output");

    unsigned r = 2;
    long max_n = 20;
    auto *cohen = app.add_subcommand("cohen", "table of Cohen numbers H(r, N)");
    cohen->add_option("--r", r, "r >= 1")->check(CLI::Range(1u, 50u))->capture_default_str();
    cohen->add_option("--max-N", max_n, "largest N")->check(CLI::Range(0L, 100000L))->capture_default_str();

    std::string name = "f";
    unsigned t = 0;
    auto *series = app.add_subcommand("series", "q-expansions: delta, e4, e6, j, eta24, h, f");
    series->add_option("--name", name, "which series")
        ->check(CLI::IsMember({"delta", "e4", "e6", "j", "eta24", "h", "f"}))
        ->capture_default_str();
    series->add_option("--t", t, "power of j multiplying f")->check(CLI::Range(0u, 20u));
    series->add_option("--prec", rc.prec, "exponent bound")->capture_default_str();

    long d = 1;
    std::string s_text = "-1";
    bool want_deriv = false;
    auto *lvalue = app.add_subcommand("lvalue", "Dirichlet L(s, chi_d)");
    lvalue->add_option("--d", d, "fundamental discriminant or 1")->required();
    lvalue->add_option("--s", s_text, "real point s")->required();
    lvalue->add_flag("--deriv", want_deriv, "also print L' and L'/L");

    int mu = 0;
    std::string m_text;
    std::optional<std::string> v_text, l2_text;
    auto *kmu = app.add_subcommand("kappa-mu", "kappa_mu(m) with its breakdown, optionally b_mu(m, v)");
    kmu->add_option("--mu", mu, "coset 0 or 1")->required()->check(CLI::IsMember({0, 1}));
    kmu->add_option("--m", m_text, "m as p/q")->required();
    kmu->add_option("--v", v_text, "imaginary part v > 0 for b_mu(m, v)");
    kmu->add_option("--l2", l2_text, "L(2, chi_m), needed for m < 0");

    std::optional<unsigned> bt;
    std::optional<std::string> input;
    auto *borch = app.add_subcommand("borcherds", "weight, divisor, degree check and kappa of Psi(f)");
    auto *t_opt = borch->add_option("--t", bt, "use j^t f")->check(CLI::Range(0u, 20u));
    borch->add_option("--prec", rc.prec, "q-series precision of the printed input")->capture_default_str();
    borch->add_option("--input", input, "vector-valued form JSON instead of j^t f")->excludes(t_opt);

    auto *check = app.add_subcommand("check", "run the acceptance checks");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError &e) {
        std::ostringstream cli_out, cli_err;
        const int code = app.exit(e, cli_out, cli_err);
        out << cli_out.str();
        err << cli_err.str();
        return code == 0 ? 0 : 2;
    }
    if (!detail::series_prec(rc)) {
        err << "--prec must be a rational >= 2, got '" << rc.prec << "'\n";
        return 2;
    }

    try {
        if (cohen->parsed())
            return cmd_cohen(r, max_n, rc, out);
        if (series->parsed())
            return cmd_series(name, t, rc, out);
        if (lvalue->parsed())
            return cmd_lvalue(d, s_text, want_deriv, rc, out);
        if (kmu->parsed())
            return cmd_kappa_mu(mu, m_text, v_text, l2_text, rc, out);
        if (borch->parsed())
            return cmd_borcherds(bt, input, rc, out);
        if (check->parsed())
            return cmd_check(rc, out);
    } catch (const Error &e) {
        if (rc.json)
            out << error_json(e).dump(2) << "\n";
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace bkappa::cli
