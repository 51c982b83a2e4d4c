#pragma once

// Slow reference implementations that share no code with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline bool is_prime(std::uint64_t m) {
    if (m < 2) return false;
    for (std::uint64_t d = 2; d * d <= m; ++d)
        if (m % d == 0) return false;
    return true;
}

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

// Repeated multiplication; negative exponents by searching for the inverse.
inline std::int64_t power(std::int64_t a, std::int64_t e, std::int64_t p) {
    a = mod(a, p);
    if (e < 0) {
        std::int64_t inv = 0;
        for (std::int64_t y = 1; y < p; ++y)
            if (a * y % p == 1) inv = y;
        a = inv;
        e = -e;
    }
    std::int64_t r = 1 % p;
    for (std::int64_t i = 0; i < e; ++i) r = r * a % p;
    return r;
}

inline std::int64_t order(std::int64_t a, std::int64_t p) {
    std::int64_t v = mod(a, p), k = 1;
    while (v != 1) v = v * a % p, ++k;
    return k;
}

inline std::int64_t smallest_generator(std::int64_t p) {
    for (std::int64_t g = 2;; ++g)
        if (order(g, p) == p - 1) return g;
}

// Discrete log by walking powers of the smallest generator.
inline std::int64_t dlog(std::int64_t x, std::int64_t p) {
    const std::int64_t g = smallest_generator(p);
    std::int64_t v = 1;
    for (std::int64_t k = 0; k < p - 1; ++k, v = v * g % p)
        if (v == mod(x, p)) return k;
    return -1;
}

inline cplx e_p(std::int64_t z, std::int64_t p) {
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(z, p)) / static_cast<double>(p));
}

inline cplx chi(std::int64_t a, std::int64_t x, std::int64_t p) {
    if (mod(x, p) == 0) return 0.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod(a * dlog(x, p), p - 1)) /
                               static_cast<double>(p - 1));
}

// Calls f on every tuple of the box [k_j+1, k_j+h]^n.
template <class F>
void for_box(const std::vector<std::int64_t>& k, std::int64_t h, F&& f) {
    std::vector<std::int64_t> x(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) x[j] = k[j] + 1;
    while (true) {
        f(x);
        std::size_t j = 0;
        while (j < x.size() && x[j] == k[j] + h) x[j] = k[j] + 1, ++j;
        if (j == x.size()) return;
        ++x[j];
    }
}

// weights[j][i] is the weight at x = k_j + 1 + i; empty means unit weights.
inline cplx sum_S(std::int64_t p, const std::vector<std::int64_t>& k, std::int64_t h, const std::vector<std::int64_t>& e,
                  std::int64_t lambda, const std::vector<std::vector<cplx>>& weights = {}) {
    cplx total = 0.0;
    for_box(k, h, [&](const std::vector<std::int64_t>& x) {
        std::int64_t mono = 1;
        cplx w = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (mod(x[j], p) == 0) return;
            mono = mono * power(x[j], e[j], p) % p;
            if (!weights.empty()) w *= weights[j][static_cast<std::size_t>(x[j] - k[j] - 1)];
        }
        total += w * e_p(lambda * mono, p);
    });
    return total;
}

inline cplx sum_T(std::int64_t p, const std::vector<std::int64_t>& k, std::int64_t h, const std::vector<std::int64_t>& e,
                  std::int64_t lambda, std::int64_t a, const std::vector<std::vector<cplx>>& weights = {}) {
    cplx total = 0.0;
    for_box(k, h, [&](const std::vector<std::int64_t>& x) {
        std::int64_t mono = 1;
        cplx w = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (mod(x[j], p) == 0) return;
            mono = mono * power(x[j], e[j], p) % p;
            if (!weights.empty()) w *= weights[j][static_cast<std::size_t>(x[j] - k[j] - 1)];
        }
        total += w * chi(a, mono + lambda, p);
    });
    return total;
}

// Pairs of tuples with equal nonzero shifted-monomial products, counted pairwise.
inline std::uint64_t count_J(std::int64_t p, const std::vector<std::int64_t>& e, const std::vector<std::int64_t>& h,
                             const std::vector<std::int64_t>& k) {
    std::vector<std::int64_t> values;
    std::vector<std::int64_t> x(h.size(), 1);
    while (true) {
        std::int64_t v = 1;
        for (std::size_t j = 0; j < x.size(); ++j) v = v * power(x[j] + k[j], e[j], p) % p;
        if (v != 0) values.push_back(v);
        std::size_t j = 0;
        while (j < x.size() && x[j] == h[j]) x[j] = 1, ++j;
        if (j == x.size()) break;
        ++x[j];
    }
    std::uint64_t pairs = 0;
    for (auto a : values)
        for (auto b : values) pairs += a == b;
    return pairs;
}

inline std::uint64_t count_I(std::int64_t p, int nu, std::int64_t h, std::int64_t k) {
    return count_J(p, std::vector<std::int64_t>(nu, 1), std::vector<std::int64_t>(nu, h), std::vector<std::int64_t>(nu, k));
}

}  // namespace oracle
