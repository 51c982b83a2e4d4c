#include "monosum/modular.hpp"

#include <array>
#include <cstdlib>
#include <string>

namespace monosum {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::ZeroToNegativePower: return "ZeroToNegativePower";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ZeroCoordinate: return "ZeroCoordinate";
        case ErrorCode::InvalidExponent: return "InvalidExponent";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidWeights: return "InvalidWeights";
        case ErrorCode::InvalidBox: return "InvalidBox";
        case ErrorCode::PrincipalCharacter: return "PrincipalCharacter";
        case ErrorCode::LambdaDivisible: return "LambdaDivisible";
        case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
        case ErrorCode::RoundingUnstable: return "RoundingUnstable";
        case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::MomentOrderTooSmall: return "MomentOrderTooSmall";
        case ErrorCode::ConfigInvalid: return "ConfigInvalid";
        case ErrorCode::VerifyNotGreen: return "VerifyNotGreen";
    }
    return "Unknown";
}

namespace {

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
    return static_cast<std::uint64_t>((static_cast<uint128_t>(a) * b) % m);
}

std::uint64_t pow_mod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) noexcept {
    std::uint64_t result = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) result = mul_mod64(result, a, m);
        a = mul_mod64(a, a, m);
        e >>= 1;
    }
    return result;
}

bool miller_rabin_round(std::uint64_t n, std::uint64_t d, int s, std::uint64_t a) noexcept {
    std::uint64_t x = pow_mod64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mul_mod64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime(std::uint64_t m) noexcept {
    if (m < 2) return false;
    // Trial division settles everything below 2^32 and strips small factors.
    for (std::uint64_t d = 2; d < (1u << 16); ++d) {
        if (d * d > m) return true;
        if (m % d == 0) return m == d;
    }
    std::uint64_t d = m - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for every n < 3.3 * 10^24.
    static constexpr std::array<std::uint64_t, 12> witnesses{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (std::uint64_t a : witnesses) {
        if (!miller_rabin_round(m, d, s, a)) return false;
    }
    return true;
}

residue_t inv_mod(std::int64_t a, std::uint64_t p) {
    const residue_t r = reduce(a, p);
    if (r == 0) throw Error(ErrorCode::NotInvertible, "zero has no inverse modulo " + std::to_string(p));
    std::int64_t old_r = static_cast<std::int64_t>(r), cur_r = static_cast<std::int64_t>(p);
    std::int64_t old_s = 1, cur_s = 0;
    while (cur_r != 0) {
        const std::int64_t q = old_r / cur_r;
        std::int64_t t = old_r - q * cur_r;
        old_r = cur_r;
        cur_r = t;
        t = old_s - q * cur_s;
        old_s = cur_s;
        cur_s = t;
    }
    if (old_r != 1) throw Error(ErrorCode::NotInvertible, "argument not coprime to modulus");
    return reduce(old_s, p);
}

residue_t pow_mod(std::int64_t a, std::int64_t e, std::uint64_t p) {
    residue_t base = reduce(a, p);
    if (e < 0) {
        if (base == 0) throw Error(ErrorCode::ZeroToNegativePower, "0 raised to a negative power");
        base = inv_mod(static_cast<std::int64_t>(base), p);
    }
    const std::uint64_t magnitude = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
    return pow_mod64(base, magnitude, p);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            out.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) out.push_back(m);
    return out;
}

residue_t primitive_root(std::uint64_t p) {
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (residue_t g = 2; g < p; ++g) {
        bool generator = true;
        for (std::uint64_t q : factors) {
            if (pow_mod64(g, (p - 1) / q, p) == 1) {
                generator = false;
                break;
            }
        }
        if (generator) return g;
    }
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " has no primitive root");
}

PrimeContext PrimeContext::build(std::uint64_t p) {
    if (p >= kMaxModulus) throw Error(ErrorCode::TooLarge, "modulus must be below 2^31, got " + std::to_string(p));
    if (p < 3 || !is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not an odd prime");

    const residue_t g = primitive_root(p);
    auto tables = std::make_shared<Tables>();
    tables->index.assign(p, kIndexSentinel);
    tables->power.resize(p - 1);
    residue_t x = 1;
    for (std::uint64_t k = 0; k < p - 1; ++k) {
        tables->power[k] = static_cast<std::uint32_t>(x);
        tables->index[x] = static_cast<std::uint32_t>(k);
        x = mul_mod64(x, g, p);
    }
    return PrimeContext(p, g, std::move(tables));
}

residue_t PrimeContext::pow_index(residue_t x, std::int64_t e) const {
    const std::uint32_t i = index(x);
    if (i == kIndexSentinel) {
        if (e < 0) throw Error(ErrorCode::ZeroToNegativePower, "0 raised to a negative power");
        return e == 0 ? 1 : 0;
    }
    const auto n = static_cast<std::int64_t>(order());
    std::int64_t k = (static_cast<std::int64_t>(i) * (e % n)) % n;
    if (k < 0) k += n;
    return power(static_cast<std::uint64_t>(k));
}

ExponentVector::ExponentVector(std::vector<std::int64_t> e) : e_(std::move(e)) {
    if (e_.empty()) throw Error(ErrorCode::InvalidExponent, "exponent vector must be nonempty");
    for (std::int64_t v : e_) {
        if (v == 0) throw Error(ErrorCode::InvalidExponent, "exponents must be nonzero");
        if (v >= (std::int64_t{1} << 31) || v <= -(std::int64_t{1} << 31))
            throw Error(ErrorCode::InvalidExponent, "exponent magnitude must be below 2^31");
    }
}

ExponentVector ExponentVector::ones(std::size_t n, std::int64_t value) {
    return ExponentVector(std::vector<std::int64_t>(n, value));
}

ExponentVector ExponentVector::slice(std::size_t first, std::size_t count) const {
    if (first + count > e_.size()) throw Error(ErrorCode::DimensionMismatch, "exponent slice out of range");
    return ExponentVector(std::vector<std::int64_t>(e_.begin() + first, e_.begin() + first + count));
}

residue_t monomial_eval(const PrimeContext& ctx, std::span<const std::int64_t> x, const ExponentVector& e) {
    if (x.size() != e.size()) throw Error(ErrorCode::DimensionMismatch, "point and exponent lengths differ");
    const std::uint64_t p = ctx.p();
    residue_t acc = 1;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const residue_t xj = reduce(x[j], p);
        if (xj == 0) throw Error(ErrorCode::ZeroCoordinate, "coordinate " + std::to_string(j) + " is 0 mod p");
        acc = mul_mod(acc, ctx.pow_index(xj, e[j]), p);
    }
    return acc;
}

}  // namespace monosum
