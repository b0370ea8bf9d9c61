#pragma once

// p-local product decompositions: the residue-class splitting of SU(n) and
// the classical Sp/Spin reductions. Sp(n) itself is a fixed point; its
// relation to SU(2n) is a bound-propagation rule, not a decomposition.

#include <map>
#include <utility>
#include <vector>

#include "homexp/space.hpp"

namespace homexp {

// Splits the sphere dimensions {3, 5, ..., 2n-1} of SU(n) by the residue of
// their index m in {2..n} mod p-1. Singleton classes are spheres; larger
// classes are bundles with consecutive gaps 2p-2. Factors come out ordered
// by bottom dimension. n = 1 yields the empty list.
inline std::vector<Space> mnt_su_factors(const OddPrime& p, Int n) {
    if (n < 1) throw DomainError("mnt_su_factors requires n >= 1");
    check_arg_limit(n, "n");
    std::vector<std::vector<Int>> classes;
    std::map<Int, std::size_t> slot;
    for (Int m = 2; m <= n; ++m) {
        auto [it, fresh] = slot.try_emplace(m % (p.value() - 1), classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(2 * m - 1);
    }
    std::vector<Space> out;
    out.reserve(classes.size());
    for (auto& dims : classes) {
        if (dims.size() == 1)
            out.emplace_back(Sphere{dims.front()});
        else
            out.emplace_back(Bundle{std::move(dims), 1});
    }
    return out;
}

// The factor whose top cell is S^{2n-1}.
inline Space su_prime_factor(const OddPrime& p, Int n) {
    if (n < 2) throw DomainError("su_prime_factor requires n >= 2");
    for (Space& f : mnt_su_factors(p, n))
        if (top_dimension(f) == 2 * n - 1) return std::move(f);
    throw Error("internal: no factor contains the top sphere");  // unreachable
}

// SU(n) -> product of its residue-class factors; Spin(2n+1) -> Sp(n);
// Spin(2n+2) -> Sp(n) x S^{2n+1}. Everything else is returned unchanged.
inline Space decompose(const Space& s, const OddPrime& p) {
    const auto* g = std::get_if<GroupAtom>(&s);
    if (!g) return s;
    switch (g->series) {
        case GroupSeries::SU: {
            if (g->rank < 2) return s;  // SU(1) is a point
            std::vector<Space> factors = mnt_su_factors(p, g->rank);
            if (factors.size() == 1) return std::move(factors.front());
            return Space{Product{std::move(factors)}};
        }
        case GroupSeries::Spin: {
            if (g->rank < 3) throw ValidationError("Spin(n) requires n >= 3");
            if (g->rank % 2 == 1) return Space{GroupAtom{GroupSeries::Sp, (g->rank - 1) / 2}};
            Int half = g->rank / 2 - 1;
            return Space{Product{{Space{GroupAtom{GroupSeries::Sp, half}}, Space{Sphere{2 * half + 1}}}}};
        }
        default:
            return s;
    }
}

}  // namespace homexp
