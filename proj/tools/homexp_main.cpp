// Command-line surface: exponent queries, the SU(n) bound table, the
// exceptional-group table, and the self-check.
//
// Exit codes: 0 success, 1 bad input or table mismatch, 2 internal
// inconsistency (a certificate failed to replay).

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "homexp/homexp.hpp"

namespace {

using namespace homexp;

OddPrime make_prime(Int p) {
    if (p > 10'000) throw DomainError("primes larger than 10^4 are not supported");
    return OddPrime(p);
}

int cmd_exp(const std::string& expr, Int prime, bool strict, bool with_cert,
            const std::string& format) {
    OddPrime p = make_prime(prime);
    Space s = parse_space(expr);
    RuleContext ctx{p, strict};
    BoundInterval iv = exponent_interval(s, ctx);

    if ((iv.lower_cert() && !replay(*iv.lower_cert())) ||
        (iv.upper_cert() && !replay(*iv.upper_cert()))) {
        std::cerr << "internal error: certificate replay failed\n";
        return 2;
    }

    const std::string rendered = render_space(s);
    if (format == "json") {
        std::cout << interval_to_json(rendered, p, iv, with_cert).dump(2) << "\n";
        return 0;
    }
    if (format == "csv") {
        std::cout << "space,prime,lower,upper\n"
                  << detail::csv_field(rendered) << "," << p.value() << "," << iv.lower() << ","
                  << (iv.upper() ? std::to_string(*iv.upper()) : std::string()) << "\n";
        return 0;
    }
    if (format == "latex") {
        std::string body = iv.is_exact()
                               ? "= " + std::to_string(iv.lower())
                               : (iv.upper() ? "\\in [" + std::to_string(iv.lower()) + ", " +
                                                   std::to_string(*iv.upper()) + "]"
                                             : "\\ge " + std::to_string(iv.lower()));
        std::cout << "$\\mathrm{exp}_{" << p.value() << "}(" << detail::latex_math_space(rendered)
                  << ") " << body << "$\n";
    } else {
        std::cout << "exp_" << p.value() << "(" << rendered << ") ";
        if (iv.is_exact())
            std::cout << "= " << iv.lower() << "\n";
        else if (iv.upper())
            std::cout << "in [" << iv.lower() << ", " << *iv.upper() << "]\n";
        else
            std::cout << "in [" << iv.lower() << ", inf)\n";
    }
    if (with_cert) {
        nlohmann::json j{{"lower_certificate", iv.lower_cert()
                                                   ? certificate_to_json(*iv.lower_cert())
                                                   : nlohmann::json(nullptr)},
                         {"upper_certificate", iv.upper_cert()
                                                   ? certificate_to_json(*iv.upper_cert())
                                                   : nlohmann::json(nullptr)}};
        std::cout << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_su_table(Int prime, Int max_n, const std::string& format) {
    OddPrime p = make_prime(prime);
    auto rows = build_su_table(p, max_n);
    if (format == "csv")
        std::cout << render_su_csv(rows);
    else if (format == "latex")
        std::cout << render_su_latex(p, rows);
    else if (format == "json")
        std::cout << render_su_json(p, rows);
    else
        std::cout << render_su_text(p, rows);
    return 0;
}

int cmd_exceptional_table(std::optional<Int> prime, bool strict, const std::string& format) {
    std::vector<TableRow> rows;
    if (prime) {
        OddPrime p = make_prime(*prime);
        for (GroupSeries g : {GroupSeries::G2, GroupSeries::F4, GroupSeries::E6, GroupSeries::E7,
                              GroupSeries::E8}) {
            try {
                rows.push_back(exceptional_row(g, p, strict));
            } catch (const OutOfScopeError& e) {
                std::cerr << "note: " << e.what() << "\n";
            }
        }
        // merge the shared F4,E6 line when both rows agree
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            if (rows[i].groups == std::vector<GroupSeries>{GroupSeries::F4} &&
                rows[i + 1].groups == std::vector<GroupSeries>{GroupSeries::E6} &&
                rows[i].interval.bounds() == rows[i + 1].interval.bounds() &&
                rows[i].factor_label == rows[i + 1].factor_label) {
                rows[i].groups = {GroupSeries::F4, GroupSeries::E6};
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(i) + 1);
            }
        }
    } else {
        rows = exceptional_table(default_table_primes(), strict);
    }
    if (format == "csv")
        std::cout << render_exceptional_csv(rows);
    else if (format == "latex")
        std::cout << render_exceptional_latex(rows);
    else if (format == "json")
        std::cout << render_exceptional_json(rows);
    else
        std::cout << render_exceptional_text(rows);
    return 0;
}

// Table cross-check plus a handful of fast invariants.
int cmd_check(bool strict) {
    int worst = 0;

    CrosscheckReport report = crosscheck_table(strict);
    for (const CrosscheckEntry& e : report.entries)
        std::cout << "[" << e.status << "] " << e.row << ": " << e.detail << "\n";
    std::cout << report.summary() << "\n";
    if (report.replay_failures > 0) return 2;
    if (!report.ok()) worst = 1;

    // Legendre oracle
    bool legendre_ok = true;
    for (Int pv : {3, 5, 7, 11}) {
        OddPrime p(pv);
        Int running = 0;
        for (Int m = 1; m <= 400 && legendre_ok; ++m) {
            running += nu(p, m);
            if (nu_factorial(p, m) != running) legendre_ok = false;
            if (nu_factorial(p, m) > (m - 1) / (pv - 1)) legendre_ok = false;
        }
    }
    std::cout << (legendre_ok ? "[ok] " : "[fail] ") << "factorial valuation oracle\n";
    if (!legendre_ok) worst = std::max(worst, 1);

    // parse/render round trip
    bool parse_ok = true;
    for (const char* e : {"S^11", "B(3,11)", "B2(3,11)", "B(23,35,47,59)", "SU(18)", "Sp(4)",
                          "Spin(10)", "G2", "K3", "W", "S^3 x Sp(4) x B(5,13)"}) {
        Space s = parse_space(e);
        if (parse_space(render_space(s)) != s) parse_ok = false;
    }
    std::cout << (parse_ok ? "[ok] " : "[fail] ") << "parse/render round trip\n";
    if (!parse_ok) worst = std::max(worst, 1);

    // certificate replay across a small grid
    bool replay_ok = true;
    bool sane_ok = true;
    for (Int pv : {3, 5, 7}) {
        OddPrime p(pv);
        RuleContext ctx{p, strict};
        std::vector<Space> grid;
        for (Int n = 1; n <= 12; ++n) grid.push_back(GroupAtom{GroupSeries::SU, n});
        for (Int n = 1; n <= 6; ++n) grid.push_back(GroupAtom{GroupSeries::Sp, n});
        for (Int n = 3; n <= 12; ++n) grid.push_back(GroupAtom{GroupSeries::Spin, n});
        grid.push_back(Bundle{{3, 3 + p.q()}, 1});
        for (const Space& s : grid) {
            BoundInterval iv = exponent_interval(s, ctx);
            if (iv.upper() && iv.lower() > *iv.upper()) sane_ok = false;
            if (iv.lower_cert() && !replay(*iv.lower_cert())) replay_ok = false;
            if (iv.upper_cert() && !replay(*iv.upper_cert())) replay_ok = false;
        }
    }
    std::cout << (replay_ok ? "[ok] " : "[fail] ") << "certificate replay\n";
    std::cout << (sane_ok ? "[ok] " : "[fail] ") << "interval sanity\n";
    if (!replay_ok) return 2;
    if (!sane_ok) worst = std::max(worst, 1);

    // Sp/Spin consistency
    bool harris_ok = true;
    for (Int pv : {3, 5}) {
        OddPrime p(pv);
        RuleContext ctx{p, strict};
        for (Int n = 1; n <= 8; ++n) {
            auto sp = exponent_interval(Space{GroupAtom{GroupSeries::Sp, n}}, ctx).bounds();
            auto odd = exponent_interval(Space{GroupAtom{GroupSeries::Spin, 2 * n + 1}}, ctx).bounds();
            auto even = exponent_interval(Space{GroupAtom{GroupSeries::Spin, 2 * n + 2}}, ctx).bounds();
            if (sp != odd || sp != even) harris_ok = false;
        }
    }
    std::cout << (harris_ok ? "[ok] " : "[fail] ") << "Sp/Spin consistency\n";
    if (!harris_ok) worst = std::max(worst, 1);

    std::cout << (worst == 0 ? "check passed\n" : "check failed\n");
    return worst;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact bounds for odd-primary homotopy exponents of Lie groups and sphere bundles"};
    app.require_subcommand(1);

    std::string expr, format = "text";
    Int prime = 0, max_n = 20;
    bool strict = false, with_cert = false;
    Int table_prime = -1;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "csv", "latex", "json"}));
    };

    CLI::App* exp_cmd = app.add_subcommand("exp", "bound the exponent of a space expression");
    exp_cmd->add_option("space", expr, "space expression, e.g. \"B(3,11)\" or \"SU(10)\"")
        ->required();
    exp_cmd->add_option("-p,--prime", prime, "odd prime")->required();
    exp_cmd->add_flag("--strict", strict, "only verified rule instances");
    exp_cmd->add_flag("--certificate", with_cert, "print the JSON certificate tree");
    add_format(exp_cmd);

    CLI::App* su_cmd = app.add_subcommand("su-table", "lower/upper bound table for SU(n)");
    su_cmd->add_option("-p,--prime", prime, "odd prime")->required();
    su_cmd->add_option("--max-n", max_n, "largest n")->required();
    add_format(su_cmd);

    CLI::App* exc_cmd = app.add_subcommand("exceptional-table", "exponent table of G2,F4,E6,E7,E8");
    exc_cmd->add_option("--prime", table_prime, "restrict to one odd prime");
    exc_cmd->add_flag("--strict", strict, "only verified rule instances");
    add_format(exc_cmd);

    CLI::App* check_cmd = app.add_subcommand("check", "cross-check the table and fast invariants");
    check_cmd->add_flag("--strict", strict, "only verified rule instances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (exp_cmd->parsed()) return cmd_exp(expr, prime, strict, with_cert, format);
        if (su_cmd->parsed()) return cmd_su_table(prime, max_n, format);
        if (exc_cmd->parsed())
            return cmd_exceptional_table(
                table_prime >= 0 ? std::optional<Int>(table_prime) : std::nullopt, strict, format);
        if (check_cmd->parsed()) return cmd_check(strict);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
