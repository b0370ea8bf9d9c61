#pragma once

// The algebra of p-local spaces under consideration: odd spheres, sphere
// bundles attached along alpha-family maps, finite products, the classical
// group atoms SU/Sp/Spin, the five exceptional atoms, and three named exotic
// factors that only carry quoted facts.

#include <string>
#include <variant>
#include <vector>

#include "homexp/arith.hpp"
#include "homexp/errors.hpp"

namespace homexp {

struct Sphere {
    Int dim = 3;
    friend bool operator==(const Sphere&, const Sphere&) = default;
};

// dims: odd, >= 3, strictly increasing, at least two of them.
// attaching: the alpha index; 1 everywhere except B2(3,11).
struct Bundle {
    std::vector<Int> dims;
    Int attaching = 1;
    friend bool operator==(const Bundle&, const Bundle&) = default;
};

enum class GroupSeries { SU, Sp, Spin, G2, F4, E6, E7, E8 };

struct GroupAtom {
    GroupSeries series = GroupSeries::SU;
    Int rank = 1;  // n in SU(n)/Sp(n)/Spin(n); ignored for exceptional atoms
    friend bool operator==(const GroupAtom&, const GroupAtom&) = default;
};

enum class ExoticName { K3, K5, W };

struct ExoticAtom {
    ExoticName name = ExoticName::K3;
    friend bool operator==(const ExoticAtom&, const ExoticAtom&) = default;
};

struct Product;
using Space = std::variant<Sphere, Bundle, Product, GroupAtom, ExoticAtom>;

// Canonical form is flat: factors are never themselves products.
struct Product {
    std::vector<Space> factors;
};

inline bool operator==(const Product& a, const Product& b) { return a.factors == b.factors; }
inline bool operator!=(const Product& a, const Product& b) { return !(a == b); }

inline bool is_exceptional(GroupSeries s) {
    return s != GroupSeries::SU && s != GroupSeries::Sp && s != GroupSeries::Spin;
}

inline std::string series_name(GroupSeries s) {
    switch (s) {
        case GroupSeries::SU: return "SU";
        case GroupSeries::Sp: return "Sp";
        case GroupSeries::Spin: return "Spin";
        case GroupSeries::G2: return "G2";
        case GroupSeries::F4: return "F4";
        case GroupSeries::E6: return "E6";
        case GroupSeries::E7: return "E7";
        case GroupSeries::E8: return "E8";
    }
    return "?";
}

inline std::string exotic_label(ExoticName n) {
    switch (n) {
        case ExoticName::K3: return "K3";
        case ExoticName::K5: return "K5";
        case ExoticName::W: return "W";
    }
    return "?";
}

inline void validate_space(const Space& s, bool allow_product = true);

namespace detail {

inline void validate_sphere_dim(Int d) {
    if (d < 3 || d % 2 == 0)
        throw ValidationError("sphere dimension must be odd and >= 3, got " + std::to_string(d));
}

}  // namespace detail

// Structural invariants only; prime compatibility is validate_for_prime's job.
inline void validate_space(const Space& s, bool allow_product) {
    struct Visitor {
        bool allow_product;
        void operator()(const Sphere& sp) const { detail::validate_sphere_dim(sp.dim); }
        void operator()(const Bundle& b) const {
            if (b.dims.size() < 2) throw ValidationError("bundle needs at least two cells");
            if (b.attaching < 1) throw ValidationError("bundle attaching index must be >= 1");
            Int prev = 0;
            for (Int d : b.dims) {
                detail::validate_sphere_dim(d);
                if (d <= prev) throw ValidationError("bundle dimensions must be strictly increasing");
                prev = d;
            }
        }
        void operator()(const Product& pr) const {
            if (!allow_product) throw ValidationError("products must be flat");
            if (pr.factors.empty()) throw ValidationError("product needs at least one factor");
            for (const Space& f : pr.factors) validate_space(f, /*allow_product=*/false);
        }
        void operator()(const GroupAtom& g) const {
            check_arg_limit(g.rank, "rank");
            switch (g.series) {
                case GroupSeries::SU:
                case GroupSeries::Sp:
                    if (g.rank < 1) throw ValidationError(series_name(g.series) + "(n) requires n >= 1");
                    break;
                case GroupSeries::Spin:
                    if (g.rank < 3) throw ValidationError("Spin(n) requires n >= 3");
                    break;
                default:
                    break;
            }
        }
        void operator()(const ExoticAtom&) const {}
    };
    std::visit(Visitor{allow_product}, s);
}

inline std::string render_space(const Space& s) {
    struct Visitor {
        std::string operator()(const Sphere& sp) const { return "S^" + std::to_string(sp.dim); }
        std::string operator()(const Bundle& b) const {
            std::string out = b.attaching == 1 ? "B(" : "B" + std::to_string(b.attaching) + "(";
            for (std::size_t i = 0; i < b.dims.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(b.dims[i]);
            }
            return out + ")";
        }
        std::string operator()(const Product& pr) const {
            std::string out;
            for (std::size_t i = 0; i < pr.factors.size(); ++i) {
                if (i) out += " x ";
                out += render_space(pr.factors[i]);
            }
            return out;
        }
        std::string operator()(const GroupAtom& g) const {
            if (is_exceptional(g.series)) return series_name(g.series);
            return series_name(g.series) + "(" + std::to_string(g.rank) + ")";
        }
        std::string operator()(const ExoticAtom& e) const { return exotic_label(e.name); }
    };
    return std::visit(Visitor{}, s);
}

// Checks that every bundle is compatible with p: an alpha_i attachment spans
// exactly i*q dimensions, so each consecutive gap must equal attaching * (2p-2).
// Returns s unchanged.
inline const Space& validate_for_prime(const Space& s, const OddPrime& p) {
    struct Visitor {
        const OddPrime& p;
        void operator()(const Sphere&) const {}
        void operator()(const Bundle& b) const {
            const Int want = b.attaching * p.q();
            for (std::size_t i = 1; i < b.dims.size(); ++i) {
                Int gap = b.dims[i] - b.dims[i - 1];
                if (gap != want)
                    throw ValidationError("bundle " + render_space(Space{b}) + " has cell gap " +
                                          std::to_string(gap) + ", expected " + std::to_string(want) +
                                          " at p = " + std::to_string(p.value()));
            }
        }
        void operator()(const Product& pr) const {
            for (const Space& f : pr.factors) validate_for_prime(f, p);
        }
        void operator()(const GroupAtom&) const {}
        void operator()(const ExoticAtom&) const {}
    };
    std::visit(Visitor{p}, s);
    return s;
}

// Largest sphere dimension appearing in a sphere or bundle.
inline Int top_dimension(const Space& s) {
    if (const auto* sp = std::get_if<Sphere>(&s)) return sp->dim;
    if (const auto* b = std::get_if<Bundle>(&s)) return b->dims.back();
    throw DomainError("top_dimension applies to spheres and bundles only");
}

}  // namespace homexp
