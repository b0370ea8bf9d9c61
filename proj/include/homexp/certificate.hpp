#pragma once

// Provenance certificates. Every derived bound carries a tree of rule
// applications; each node cites its source and records the concluded value.
// Replaying a node recomputes the value from the premises and must agree
// exactly, so a certificate can be audited without rerunning the engine.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homexp/arith.hpp"

namespace homexp {

struct Certificate {
    std::string rule;
    std::string citation;
    std::string statement;
    Int value = 0;
    bool extrapolated = false;
    std::vector<Certificate> premises;
};

// How a rule's value relates to its premises under replay.
enum class RuleKind {
    Leaf,           // axiom or quoted fact; no premises
    Sum,            // value equals the sum of the premise values
    FibrationStep,  // value == r + max(fiber, n) over premises [r, fiber, n]
    MaxOfPremises,  // value equals the max of the premise values
    Transport,      // value equals the first premise's value
};

inline std::optional<RuleKind> rule_kind(std::string_view rule) {
    struct Entry {
        std::string_view name;
        RuleKind kind;
    };
    static constexpr std::array<Entry, 19> table{{
        {"sphere-exponent", RuleKind::Leaf},
        {"point-space", RuleKind::Leaf},
        {"two-cell-lower", RuleKind::Leaf},
        {"two-cell-upper", RuleKind::Leaf},
        {"legendre-coker", RuleKind::Leaf},
        {"alpha-coker", RuleKind::Leaf},
        {"su-upper-closed-b", RuleKind::Leaf},
        {"su-lower-factorial", RuleKind::Leaf},
        {"su-lower-unstable", RuleKind::Leaf},
        {"cited-fact", RuleKind::Leaf},
        {"su-upper-closed-a", RuleKind::Sum},
        {"fibration-upper", RuleKind::FibrationStep},
        {"product-max", RuleKind::MaxOfPremises},
        {"mnt-splitting", RuleKind::Transport},
        {"spin-splitting", RuleKind::Transport},
        {"v1-factor-localization", RuleKind::Transport},
        {"factor-projection", RuleKind::Transport},
        {"sphere-factor-lower", RuleKind::Transport},
        {"exceptional-factor", RuleKind::Transport},
    }};
    for (const auto& e : table)
        if (e.name == rule) return e.kind;
    return std::nullopt;
}

// Fixed whitelist of literature tags; "standard" covers elementary steps
// (product rule, point spaces, alpha-family order counting).
inline bool citation_allowed(std::string_view c) {
    static constexpr std::array<std::string_view, 17> allowed{
        "CMN",      "DS 1.1",  "DY 1.8",  "BDMi 1.1", "BDMi 1.3", "BDMi 1.4",
        "BH 26.7",  "Th1 1.2", "Th1 2.1", "Th1 2.2",  "Th2 1.2",  "Rep 1.1",
        "BDF4 1.6", "Harris",  "MNT",     "BDspin 1.2", "standard",
    };
    for (auto a : allowed)
        if (a == c) return true;
    return false;
}

// Re-executes the node's rule on the premise conclusions, recursively.
inline bool replay(const Certificate& c) {
    if (!citation_allowed(c.citation)) return false;
    auto kind = rule_kind(c.rule);
    if (!kind) return false;
    for (const auto& pr : c.premises)
        if (!replay(pr)) return false;
    switch (*kind) {
        case RuleKind::Leaf:
            return c.premises.empty();
        case RuleKind::Sum: {
            if (c.premises.empty()) return false;
            Int s = 0;
            for (const auto& pr : c.premises) s += pr.value;
            return s == c.value;
        }
        case RuleKind::FibrationStep: {
            if (c.premises.size() != 3) return false;
            Int r = c.premises[0].value;
            Int fiber = c.premises[1].value;
            Int n = c.premises[2].value;
            return r + std::max(fiber, n) == c.value;
        }
        case RuleKind::MaxOfPremises: {
            if (c.premises.empty()) return false;
            Int m = c.premises.front().value;
            for (const auto& pr : c.premises) m = std::max(m, pr.value);
            return m == c.value;
        }
        case RuleKind::Transport:
            return !c.premises.empty() && c.premises.front().value == c.value;
    }
    return false;
}

inline Int node_count(const Certificate& c) {
    Int n = 1;
    for (const auto& pr : c.premises) n += node_count(pr);
    return n;
}

inline Int extrapolated_count(const Certificate& c) {
    Int n = c.extrapolated ? 1 : 0;
    for (const auto& pr : c.premises) n += extrapolated_count(pr);
    return n;
}

}  // namespace homexp
