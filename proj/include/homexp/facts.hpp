#pragma once

// Knowledge base: exponent bounds quoted from the literature for spaces the
// derivation rules cannot reach, and the row layout of the exceptional-group
// table together with the published intervals used for cross-checking.

#include <optional>
#include <string>
#include <vector>

#include "homexp/space.hpp"

namespace homexp {

// A quoted exponent bound for one space at one prime. Either side may be
// absent; each present side carries its own reference tag.
struct CitedFact {
    std::string space;  // rendered space expression, the lookup key
    Int prime;
    std::optional<Int> lower;
    std::string lower_ref;
    std::optional<Int> upper;
    std::string upper_ref;
};

inline const std::vector<CitedFact>& cited_facts() {
    static const std::vector<CitedFact> table = {
        {"B2(3,11)", 3, 6, "BDMi 1.3", 6, "Th1 2.2"},
        {"K3", 3, 12, "BDF4 1.6", 12, "Th1 1.2"},
        {"W", 5, 30, "Rep 1.1", 31, "Th2 1.2"},
        {"B(23,35,47,59)", 7, 29, "BDMi 1.4", std::nullopt, ""},
    };
    return table;
}

inline const CitedFact* find_fact(const std::string& rendered, Int prime) {
    for (const CitedFact& f : cited_facts())
        if (f.prime == prime && f.space == rendered) return &f;
    return nullptr;
}

// Prime condition of a table row: an exact prime, a finite set, a closed
// range, or an open range "p > c".
struct PrimeCond {
    enum class Kind { Exact, Set, Range, Greater };
    Kind kind = Kind::Exact;
    std::vector<Int> primes;  // Exact/Set: members; Range: {lo, hi}; Greater: {threshold}

    bool matches(Int p) const {
        switch (kind) {
            case Kind::Exact:
            case Kind::Set:
                for (Int q : primes)
                    if (q == p) return true;
                return false;
            case Kind::Range:
                return primes[0] <= p && p <= primes[1];
            case Kind::Greater:
                return p > primes[0];
        }
        return false;
    }

    bool single_prime() const { return kind == Kind::Exact; }

    std::string label() const {
        switch (kind) {
            case Kind::Exact:
                return std::to_string(primes[0]);
            case Kind::Set: {
                std::string out;
                for (std::size_t i = 0; i < primes.size(); ++i) {
                    if (i) out += ",";
                    out += std::to_string(primes[i]);
                }
                return out;
            }
            case Kind::Range:
                return std::to_string(primes[0]) + "-" + std::to_string(primes[1]);
            case Kind::Greater:
                return ">" + std::to_string(primes[0]);
        }
        return "?";
    }
};

// Factor column of a table row. Two-cell factors are parameterized by the
// top dimension with bottom = top - q, so coalesced rows print symbolically.
struct FactorForm {
    enum class Kind { SphereTop, TwoCellTop, Fixed };
    Kind kind = Kind::Fixed;
    Int top = 0;
    Space fixed = Sphere{3};

    Space materialize(const OddPrime& p) const {
        switch (kind) {
            case Kind::SphereTop:
                return Sphere{top};
            case Kind::TwoCellTop:
                return Bundle{{top - p.q(), top}, 1};
            case Kind::Fixed:
                return fixed;
        }
        return fixed;
    }

    // Label for rows coalesced over several primes.
    std::string symbolic_label() const {
        switch (kind) {
            case Kind::SphereTop:
                return "S^" + std::to_string(top);
            case Kind::TwoCellTop:
                return "B(" + std::to_string(top) + "-q," + std::to_string(top) + ")";
            case Kind::Fixed:
                return render_space(fixed);
        }
        return "?";
    }
};

enum class RowMode { Derived, Cited };

struct ExceptionalRowSpec {
    std::vector<GroupSeries> groups;  // table lines shared by F4 and E6 list both
    PrimeCond cond;
    RowMode mode = RowMode::Derived;
    FactorForm factor;
    bool via_su18 = false;  // derived by evaluating SU(18) rather than the factor
    Int published_lower = 0;
    Int published_upper = 0;
    std::vector<std::string> references;
    std::string note;  // free-text addition to the reference column
};

inline const std::vector<ExceptionalRowSpec>& exceptional_rows() {
    using K = PrimeCond::Kind;
    using FK = FactorForm::Kind;
    static const std::vector<ExceptionalRowSpec> rows = {
        {{GroupSeries::G2}, {K::Exact, {3}}, RowMode::Cited,
         {FK::Fixed, 0, Bundle{{3, 11}, 2}}, false, 6, 6, {"BDMi 1.3", "Th1 2.2"}, ""},
        {{GroupSeries::G2}, {K::Exact, {5}}, RowMode::Derived,
         {FK::TwoCellTop, 11, {}}, false, 6, 6, {}, ""},
        {{GroupSeries::G2}, {K::Greater, {5}}, RowMode::Derived,
         {FK::SphereTop, 11, {}}, false, 5, 5, {}, ""},

        {{GroupSeries::F4, GroupSeries::E6}, {K::Exact, {3}}, RowMode::Cited,
         {FK::Fixed, 0, ExoticAtom{ExoticName::K3}}, false, 12, 12, {"BDF4 1.6", "Th1 1.2"}, ""},
        {{GroupSeries::F4, GroupSeries::E6}, {K::Set, {5, 7}}, RowMode::Derived,
         {FK::TwoCellTop, 23, {}}, false, 11, 12, {}, ""},
        {{GroupSeries::F4, GroupSeries::E6}, {K::Exact, {11}}, RowMode::Derived,
         {FK::TwoCellTop, 23, {}}, false, 12, 12, {}, ""},
        {{GroupSeries::F4, GroupSeries::E6}, {K::Greater, {11}}, RowMode::Derived,
         {FK::SphereTop, 23, {}}, false, 11, 11, {}, ""},

        {{GroupSeries::E7}, {K::Exact, {5}}, RowMode::Derived,
         {FK::Fixed, 0, Bundle{{3, 11, 19, 27, 35}, 1}}, true, 18, 20, {}, "factor of SU(18)"},
        {{GroupSeries::E7}, {K::Exact, {7}}, RowMode::Derived,
         {FK::Fixed, 0, Bundle{{11, 23, 35}, 1}}, true, 17, 19, {}, "factor of SU(18)"},
        {{GroupSeries::E7}, {K::Set, {11, 13}}, RowMode::Derived,
         {FK::TwoCellTop, 35, {}}, false, 17, 18, {}, ""},
        {{GroupSeries::E7}, {K::Exact, {17}}, RowMode::Derived,
         {FK::TwoCellTop, 35, {}}, false, 18, 18, {}, ""},
        {{GroupSeries::E7}, {K::Greater, {17}}, RowMode::Derived,
         {FK::SphereTop, 35, {}}, false, 17, 17, {}, ""},

        {{GroupSeries::E8}, {K::Exact, {5}}, RowMode::Cited,
         {FK::Fixed, 0, ExoticAtom{ExoticName::W}}, false, 30, 31, {"Rep 1.1", "Th2 1.2"}, ""},
        {{GroupSeries::E8}, {K::Exact, {7}}, RowMode::Derived,
         {FK::Fixed, 0, Bundle{{23, 35, 47, 59}, 1}}, false, 29, 32, {"BDMi 1.4"}, ""},
        {{GroupSeries::E8}, {K::Range, {11, 23}}, RowMode::Derived,
         {FK::TwoCellTop, 59, {}}, false, 29, 30, {}, ""},
        {{GroupSeries::E8}, {K::Exact, {29}}, RowMode::Derived,
         {FK::TwoCellTop, 59, {}}, false, 30, 30, {}, ""},
        {{GroupSeries::E8}, {K::Greater, {29}}, RowMode::Derived,
         {FK::SphereTop, 59, {}}, false, 29, 29, {}, ""},
    };
    return rows;
}

// The row covering (group, p), or nullptr: by design nothing covers the
// torsion pairs (E7, 3) and (E8, 3).
inline const ExceptionalRowSpec* find_exceptional_row(GroupSeries g, Int p) {
    for (const ExceptionalRowSpec& r : exceptional_rows())
        for (GroupSeries rg : r.groups)
            if (rg == g && r.cond.matches(p)) return &r;
    return nullptr;
}

}  // namespace homexp
