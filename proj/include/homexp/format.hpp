#pragma once

// Rendering: aligned text, RFC-4180 CSV, LaTeX tabular, and JSON for the two
// tables and for certificates, plus the parsers the round-trip checks use.
// All output is deterministic.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "homexp/bounds.hpp"
#include "homexp/exceptional.hpp"

namespace homexp {

// "6" for a point, "11,12" for a short range, ">=lo" when unbounded above.
inline std::string exponent_label(const BoundInterval& iv) {
    if (!iv.upper()) return ">=" + std::to_string(iv.lower());
    if (*iv.upper() == iv.lower()) return std::to_string(iv.lower());
    if (*iv.upper() - iv.lower() > 8)
        return std::to_string(iv.lower()) + ".." + std::to_string(*iv.upper());
    std::string out;
    for (Int v = iv.lower(); v <= *iv.upper(); ++v) {
        if (v != iv.lower()) out += ",";
        out += std::to_string(v);
    }
    return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

inline std::string reference_label(const TableRow& row) {
    std::string out = join(row.references, ", ");
    if (!row.note.empty()) {
        if (!out.empty()) out += "; ";
        out += row.note;
    }
    return out;
}

namespace detail {

inline std::string pad(const std::string& s, std::size_t width) {
    return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// One CSV record, honoring quoted fields.
inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

inline std::string latex_math_space(std::string s) {
    // B2(...) -> B_2(...), S^11 -> S^{11}, G2 -> G_2 etc.
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && std::isdigit(static_cast<unsigned char>(s[i])) &&
            (std::isalpha(static_cast<unsigned char>(s[i - 1])))) {
            out += '_';
            out += s[i];
        } else if (s[i] == '^') {
            out += "^{";
            std::size_t j = i + 1;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) out += s[j++];
            out += '}';
            i = j - 1;
        } else {
            out += s[i];
        }
    }
    return out;
}

}  // namespace detail

// ---- exceptional table ----------------------------------------------------

inline std::string render_exceptional_text(const std::vector<TableRow>& rows) {
    const std::vector<std::string> header = {"X", "p", "exp_p(X)", "Factor", "Reference"};
    std::vector<std::vector<std::string>> cells;
    for (const TableRow& r : rows)
        cells.push_back({groups_label(r.groups), r.prime_label, exponent_label(r.interval),
                         r.factor_label, reference_label(r)});
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
    for (const auto& row : cells)
        for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], row[i].size());

    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i + 1 < row.size())
                os << detail::pad(row[i], w[i]) << "  ";
            else
                os << row[i];
        }
        os << "\n";
    };
    emit(header);
    std::size_t total = 0;
    for (std::size_t i = 0; i < w.size(); ++i) total += w[i] + (i + 1 < w.size() ? 2 : 0);
    os << std::string(total, '-') << "\n";
    for (const auto& row : cells) emit(row);
    return os.str();
}

inline std::string render_exceptional_csv(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "group,primes,lower,upper,factor,reference\n";
    for (const TableRow& r : rows) {
        os << detail::csv_field(groups_label(r.groups)) << "," << detail::csv_field(r.prime_label)
           << "," << r.interval.lower() << ","
           << (r.interval.upper() ? std::to_string(*r.interval.upper()) : std::string()) << ","
           << detail::csv_field(r.factor_label) << "," << detail::csv_field(reference_label(r))
           << "\n";
    }
    return os.str();
}

inline std::string render_exceptional_latex(const std::vector<TableRow>& rows) {
    std::ostringstream os;
    os << "\\begin{tabular}{cc|ccc}\n";
    os << "$X$ & $p$ & $\\mathrm{exp}_p(X)$ & Factor & Reference\\\\\n\\hline\n";
    for (const TableRow& r : rows) {
        os << "$" << detail::latex_math_space(groups_label(r.groups)) << "$ & $" << r.prime_label
           << "$ & $" << exponent_label(r.interval) << "$ & $"
           << detail::latex_math_space(r.factor_label) << "$ & " << reference_label(r) << "\\\\\n";
    }
    os << "\\end{tabular}\n";
    return os.str();
}

inline nlohmann::json exceptional_row_json(const TableRow& r) {
    nlohmann::json groups = nlohmann::json::array();
    for (GroupSeries g : r.groups) groups.push_back(series_name(g));
    nlohmann::json j{{"groups", groups},
                     {"primes", r.prime_label},
                     {"lower", r.interval.lower()},
                     {"factor", r.factor_label},
                     {"mode", r.mode == RowMode::Cited ? "cited-fact" : "derived"},
                     {"references", r.references}};
    if (r.interval.upper())
        j["upper"] = *r.interval.upper();
    else
        j["upper"] = nullptr;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline std::string render_exceptional_json(const std::vector<TableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const TableRow& r : rows) arr.push_back(exceptional_row_json(r));
    return arr.dump(2) + "\n";
}

// Parsed-back view used by the round-trip checks.
struct ParsedTableRow {
    std::string group;
    std::string primes;
    Int lower = 0;
    std::optional<Int> upper;
    std::string factor;
    std::string reference;
};

inline std::vector<ParsedTableRow> parse_exceptional_csv(const std::string& text) {
    std::vector<ParsedTableRow> out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;  // header
            continue;
        }
        auto f = detail::split_csv_line(line);
        if (f.size() != 6) throw Error("malformed CSV row: " + line);
        ParsedTableRow r;
        r.group = f[0];
        r.primes = f[1];
        r.lower = std::stoll(f[2]);
        if (!f[3].empty()) r.upper = std::stoll(f[3]);
        r.factor = f[4];
        r.reference = f[5];
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<ParsedTableRow> parse_exceptional_json(const std::string& text) {
    std::vector<ParsedTableRow> out;
    nlohmann::json arr = nlohmann::json::parse(text);
    for (const auto& j : arr) {
        ParsedTableRow r;
        std::vector<std::string> gs = j.at("groups").get<std::vector<std::string>>();
        r.group = join(gs, ",");
        r.primes = j.at("primes").get<std::string>();
        r.lower = j.at("lower").get<Int>();
        if (!j.at("upper").is_null()) r.upper = j.at("upper").get<Int>();
        r.factor = j.at("factor").get<std::string>();
        std::vector<std::string> refs = j.at("references").get<std::vector<std::string>>();
        r.reference = join(refs, ", ");
        if (j.contains("note")) {
            if (!r.reference.empty()) r.reference += "; ";
            r.reference += j.at("note").get<std::string>();
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---- SU bound table ---------------------------------------------------------

struct SuTableRow {
    Int n = 2;
    Int lower = 0;
    Int upper_recursive = 0;
    Int upper_closed = 0;
    bool exact = false;
};

inline std::vector<SuTableRow> build_su_table(const OddPrime& p, Int max_n) {
    if (max_n < 2) throw DomainError("su table requires max_n >= 2");
    std::vector<SuTableRow> out;
    for (Int n = 2; n <= max_n; ++n) {
        SuTableRow r;
        r.n = n;
        r.lower = su_lower(p, n);
        r.upper_recursive = su_upper_recursive(p, n);
        r.upper_closed = su_upper_closed(p, n);
        r.exact = r.lower == std::min(r.upper_recursive, r.upper_closed);
        out.push_back(r);
    }
    return out;
}

inline std::string render_su_text(const OddPrime& p, const std::vector<SuTableRow>& rows) {
    std::ostringstream os;
    os << "exp_" << p.value() << "(SU(n)) bounds\n";
    os << detail::pad("n", 5) << detail::pad("lower", 7) << detail::pad("upper", 7)
       << detail::pad("closed", 8) << "exact\n";
    for (const SuTableRow& r : rows) {
        os << detail::pad(std::to_string(r.n), 5) << detail::pad(std::to_string(r.lower), 7)
           << detail::pad(std::to_string(r.upper_recursive), 7)
           << detail::pad(std::to_string(r.upper_closed), 8) << (r.exact ? "*" : "") << "\n";
    }
    return os.str();
}

inline std::string render_su_csv(const std::vector<SuTableRow>& rows) {
    std::ostringstream os;
    os << "n,lower,upper_recursive,upper_closed,exact\n";
    for (const SuTableRow& r : rows)
        os << r.n << "," << r.lower << "," << r.upper_recursive << "," << r.upper_closed << ","
           << (r.exact ? "true" : "false") << "\n";
    return os.str();
}

inline std::string render_su_latex(const OddPrime& p, const std::vector<SuTableRow>& rows) {
    std::ostringstream os;
    os << "\\begin{tabular}{c|ccc}\n";
    os << "$n$ & lower & upper & closed\\\\\n\\hline\n";
    for (const SuTableRow& r : rows)
        os << "$" << r.n << "$ & $" << r.lower << "$ & $" << r.upper_recursive << "$ & $"
           << r.upper_closed << "$\\\\\n";
    os << "\\end{tabular}\n";
    (void)p;
    return os.str();
}

inline std::string render_su_json(const OddPrime& p, const std::vector<SuTableRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const SuTableRow& r : rows)
        arr.push_back({{"n", r.n},
                       {"lower", r.lower},
                       {"upper_recursive", r.upper_recursive},
                       {"upper_closed", r.upper_closed},
                       {"exact", r.exact}});
    nlohmann::json j{{"prime", p.value()}, {"rows", arr}};
    return j.dump(2) + "\n";
}

inline std::vector<SuTableRow> parse_su_csv(const std::string& text) {
    std::vector<SuTableRow> out;
    std::istringstream is(text);
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (first) {
            first = false;
            continue;
        }
        auto f = detail::split_csv_line(line);
        if (f.size() != 5) throw Error("malformed CSV row: " + line);
        out.push_back({std::stoll(f[0]), std::stoll(f[1]), std::stoll(f[2]), std::stoll(f[3]),
                       f[4] == "true"});
    }
    return out;
}

// ---- certificates and single intervals -------------------------------------

inline nlohmann::json certificate_to_json(const Certificate& c) {
    nlohmann::json premises = nlohmann::json::array();
    for (const Certificate& pr : c.premises) premises.push_back(certificate_to_json(pr));
    return nlohmann::json{{"rule", c.rule},         {"citation", c.citation},
                          {"statement", c.statement}, {"value", c.value},
                          {"extrapolated", c.extrapolated}, {"premises", premises}};
}

inline nlohmann::json interval_to_json(const std::string& space_expr, const OddPrime& p,
                                       const BoundInterval& iv, bool with_certs) {
    nlohmann::json j{{"space", space_expr}, {"prime", p.value()}, {"lower", iv.lower()}};
    if (iv.upper())
        j["upper"] = *iv.upper();
    else
        j["upper"] = nullptr;
    if (with_certs) {
        j["lower_certificate"] =
            iv.lower_cert() ? certificate_to_json(*iv.lower_cert()) : nlohmann::json(nullptr);
        j["upper_certificate"] =
            iv.upper_cert() ? certificate_to_json(*iv.upper_cert()) : nlohmann::json(nullptr);
    }
    return j;
}

}  // namespace homexp
