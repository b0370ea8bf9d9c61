#pragma once

// Exact p-adic valuation arithmetic. Every function here is total on its
// stated domain and works in 64-bit integers; inputs are capped at 10^9 so
// no intermediate product can overflow.

#include <cstdint>
#include <string>

#include "homexp/errors.hpp"

namespace homexp {

using Int = std::int64_t;

inline constexpr Int kArgLimit = 1'000'000'000;

inline void check_arg_limit(Int v, const char* what) {
    if (v > kArgLimit)
        throw DomainError(std::string(what) + " exceeds the supported magnitude 10^9");
}

// Deterministic trial division; certificates require an unconditional answer.
inline bool is_prime(Int n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Int d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// An odd prime p >= 3. q() is the dimension step 2p-2 of the alpha_1 family.
class OddPrime {
  public:
    explicit OddPrime(Int p) : p_(p) {
        check_arg_limit(p, "prime");
        if (p < 3 || p % 2 == 0 || !is_prime(p))
            throw DomainError("expected an odd prime >= 3, got " + std::to_string(p));
    }

    Int value() const { return p_; }
    Int q() const { return 2 * p_ - 2; }

    friend bool operator==(const OddPrime&, const OddPrime&) = default;

  private:
    Int p_;
};

// Largest e with p^e dividing n. Rejects n = 0, whose valuation is infinite.
inline Int nu(const OddPrime& p, Int n) {
    if (n < 1) throw DomainError("nu requires n >= 1");
    check_arg_limit(n, "n");
    Int e = 0;
    while (n % p.value() == 0) {
        n /= p.value();
        ++e;
    }
    return e;
}

// nu_p(m!) via the floor sum  floor(m/p) + floor(m/p^2) + ...
inline Int nu_factorial(const OddPrime& p, Int m) {
    if (m < 0) throw DomainError("nu_factorial requires m >= 0");
    check_arg_limit(m, "m");
    Int sum = 0;
    for (Int pw = p.value(); pw <= m; pw *= p.value()) sum += m / pw;
    return sum;
}

// Binomial(a, 2), clamped to 0 below a = 2: the closed-form bound probes the
// binomial term outside the branch that uses it, and the branch guard decides.
inline Int choose2(Int a) {
    check_arg_limit(a, "a");
    if (a < 2) return 0;
    return a * (a - 1) / 2;
}

}  // namespace homexp
