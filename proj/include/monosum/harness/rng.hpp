#pragma once

#include <cstdint>
#include <initializer_list>

namespace monosum::harness {

/// SplitMix64 finalizer; used both as a hash and to seed xoshiro state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t state = 0x6D6F6E6F73756D00ull;
    std::uint64_t h = 0;
    for (std::uint64_t w : words) {
        state ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        h = splitmix64(state);
    }
    return h;
}

/// xoshiro256** with a platform-independent bounded draw, so that every
/// seeded experiment reproduces bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [lo, hi], by rejection.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) noexcept {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    /// Uniform on [0, 1).
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

/// Per-trial substream: cells and trials reproduce independently of order.
inline Rng substream(std::uint64_t seed, std::uint64_t p, std::uint64_t n, std::uint64_t h, std::uint64_t trial) {
    return Rng(hash_words({seed, p, n, h, trial}));
}

}  // namespace monosum::harness
