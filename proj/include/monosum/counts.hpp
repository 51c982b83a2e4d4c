#pragma once

/**
 * @file counts.hpp
 * @brief Solution counts of product congruences over intervals.
 *
 * I_{p,ν}(h,k) counts pairs of ν-tuples in [1,h]^ν with
 *   (x_1+k)...(x_ν+k) ≡ (y_1+k)...(y_ν+k) ≢ 0 (mod p),
 * and J_{p,ν}(e,h,k) is the same with per-coordinate shifts k_j, side lengths
 * h_j and exponents e_j applied to each factor.
 */

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "monosum/modular.hpp"

namespace monosum {

enum class CountMethod { Brute, Spectral };
std::string_view to_string(CountMethod m) noexcept;

struct CountSpec {
    int nu = 1;
    std::vector<std::int64_t> h;
    std::vector<std::int64_t> k;
    std::optional<ExponentVector> e;

    /// Validates lengths and 1 ≤ h_j < p.
    void validate(const PrimeContext& ctx) const;
};

struct CountResult {
    std::uint64_t value = 0;
    CountMethod method = CountMethod::Brute;
    /// Spectral only: |rounded - unrounded|.
    double residual = 0.0;
};

/// Frequency table m(u) of the product (x_1+k)...(x_ν+k) and Σ m(u)².
CountResult count_I_brute(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k);

/// (1/(p-1)) Σ_χ |Σ_{x≤h} χ(x+k)|^{2ν}, rounded. Throws RoundingUnstable when
/// the unrounded value is 0.4 or more away from an integer.
CountResult count_I_spectral(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k);

/// Unrounded character average behind count_I_spectral.
double count_I_character_average(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k);

/// Requires spec.e.
CountResult count_J_brute(const PrimeContext& ctx, const CountSpec& spec);

struct Lemma3Report {
    std::uint64_t lhs = 0;
    std::vector<std::uint64_t> i_counts;  // I_{p,ν}(h_j, k_j)
    double rhs_plain = 0.0;               // Π I_j^{1/ν}
    double rhs_gcd = 0.0;                 // (Π gcd(|e_j|, p-1) I_j)^{1/ν}
    bool holds_plain = false;
    bool holds_gcd = false;
};

/// Compares J with both product forms; comparisons allow 10^-9 relative slack.
Lemma3Report lemma3_check(const PrimeContext& ctx, const CountSpec& spec);

}  // namespace monosum
