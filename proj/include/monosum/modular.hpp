#pragma once

/**
 * @file modular.hpp
 * @brief Residue arithmetic modulo an odd prime.
 *
 * A PrimeContext owns the primitive root and the full discrete-log (index)
 * table for its prime. It is immutable once built and cheap to copy: the
 * tables live behind a shared pointer, so every value type that needs the
 * modulus simply stores a PrimeContext.
 */

#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "monosum/error.hpp"

namespace monosum {

using residue_t = std::uint64_t;

inline constexpr std::uint32_t kIndexSentinel = 0xFFFFFFFFu;
inline constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

/// Deterministic for every input below 2^63.
bool is_prime(std::uint64_t m) noexcept;

/// Reduces an arbitrary integer into [0, p).
constexpr residue_t reduce(std::int64_t a, std::uint64_t p) noexcept {
    const auto sp = static_cast<std::int64_t>(p);
    std::int64_t r = a % sp;
    return static_cast<residue_t>(r < 0 ? r + sp : r);
}

__extension__ using uint128_t = unsigned __int128;

constexpr residue_t mul_mod(residue_t a, residue_t b, std::uint64_t p) noexcept {
    return static_cast<residue_t>((static_cast<uint128_t>(a) * b) % p);
}

/// a^e mod p; a negative exponent raises the modular inverse to |e|.
/// Throws ZeroToNegativePower for a ≡ 0 with e < 0.
residue_t pow_mod(std::int64_t a, std::int64_t e, std::uint64_t p);

/// Throws NotInvertible for a ≡ 0.
residue_t inv_mod(std::int64_t a, std::uint64_t p);

/// Smallest positive primitive root of a prime p.
residue_t primitive_root(std::uint64_t p);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t m);

class PrimeContext {
public:
    /// Validates p (odd prime below 2^31) and materializes the index table.
    /// Throws NotPrime or TooLarge.
    static PrimeContext build(std::uint64_t p);

    std::uint64_t p() const noexcept { return p_; }
    residue_t g() const noexcept { return g_; }
    /// p - 1, the order of the multiplicative group.
    std::uint64_t order() const noexcept { return p_ - 1; }

    /// ind(x) in [0, p-2] for x ≢ 0, kIndexSentinel for x ≡ 0.
    std::uint32_t index(residue_t x) const noexcept { return tables_->index[x % p_]; }
    /// g^k for k in [0, p-2].
    residue_t power(std::uint64_t k) const noexcept { return tables_->power[k % order()]; }

    /// x^e mod p through the index table; x must be nonzero mod p.
    residue_t pow_index(residue_t x, std::int64_t e) const;

    std::span<const std::uint32_t> index_table() const noexcept { return tables_->index; }

    friend bool operator==(const PrimeContext& a, const PrimeContext& b) noexcept {
        return a.p_ == b.p_;
    }

private:
    struct Tables {
        std::vector<std::uint32_t> index;
        std::vector<std::uint32_t> power;
    };

    PrimeContext(std::uint64_t p, residue_t g, std::shared_ptr<const Tables> tables)
        : p_(p), g_(g), tables_(std::move(tables)) {}

    std::uint64_t p_;
    residue_t g_;
    std::shared_ptr<const Tables> tables_;
};

inline PrimeContext build_context(std::uint64_t p) { return PrimeContext::build(p); }

/// Nonzero integer exponents (e_1, ..., e_n), n ≥ 1, each |e_j| < 2^31.
class ExponentVector {
public:
    explicit ExponentVector(std::vector<std::int64_t> e);
    ExponentVector(std::initializer_list<std::int64_t> e)
        : ExponentVector(std::vector<std::int64_t>(e)) {}

    static ExponentVector ones(std::size_t n, std::int64_t value = 1);

    std::size_t size() const noexcept { return e_.size(); }
    std::int64_t operator[](std::size_t j) const noexcept { return e_[j]; }
    std::span<const std::int64_t> values() const noexcept { return e_; }

    ExponentVector slice(std::size_t first, std::size_t count) const;

    friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

private:
    std::vector<std::int64_t> e_;
};

/// x_1^{e_1} ... x_n^{e_n} mod p. Throws ZeroCoordinate if some x_j ≡ 0 and
/// DimensionMismatch on a length mismatch.
residue_t monomial_eval(const PrimeContext& ctx, std::span<const std::int64_t> x,
                        const ExponentVector& e);

}  // namespace monosum
