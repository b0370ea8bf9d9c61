#pragma once

// Integer interval [lower, upper] on a homotopy exponent, together with the
// certificates of the rules that produced each side. A missing upper bound
// means no upper-bound rule applied.

#include <optional>
#include <utility>

#include "homexp/certificate.hpp"
#include "homexp/errors.hpp"

namespace homexp {

class BoundInterval {
  public:
    BoundInterval() = default;

    BoundInterval(Int lower, std::optional<Int> upper,
                  std::optional<Certificate> lower_cert = std::nullopt,
                  std::optional<Certificate> upper_cert = std::nullopt)
        : lower_(lower),
          upper_(upper),
          lower_cert_(std::move(lower_cert)),
          upper_cert_(std::move(upper_cert)) {
        if (lower_ < 0) throw DomainError("interval lower bound must be nonnegative");
        if (upper_ && *upper_ < lower_)
            throw DomainError("empty interval: lower " + std::to_string(lower_) +
                              " exceeds upper " + std::to_string(*upper_));
    }

    Int lower() const { return lower_; }
    const std::optional<Int>& upper() const { return upper_; }
    const std::optional<Certificate>& lower_cert() const { return lower_cert_; }
    const std::optional<Certificate>& upper_cert() const { return upper_cert_; }

    bool is_exact() const { return upper_ && *upper_ == lower_; }

    // Numeric bounds only, for comparisons that ignore provenance.
    std::pair<Int, std::optional<Int>> bounds() const { return {lower_, upper_}; }

  private:
    Int lower_ = 0;
    std::optional<Int> upper_;
    std::optional<Certificate> lower_cert_;
    std::optional<Certificate> upper_cert_;
};

}  // namespace homexp
