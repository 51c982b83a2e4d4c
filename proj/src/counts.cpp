#include "monosum/counts.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "monosum/characters.hpp"

namespace monosum {

namespace {

// Multiplicities of (x+k)^e mod p over x in [1, h], zero factors dropped.
std::vector<std::pair<residue_t, std::uint64_t>> factor_values(const PrimeContext& ctx, std::int64_t h,
                                                               std::int64_t k, std::int64_t e) {
    std::vector<std::uint64_t> hits(ctx.p());
    for (std::int64_t x = 1; x <= h; ++x) {
        const residue_t base = reduce(x + k, ctx.p());
        if (base == 0) continue;
        ++hits[ctx.pow_index(base, e)];
    }
    std::vector<std::pair<residue_t, std::uint64_t>> out;
    for (residue_t v = 1; v < ctx.p(); ++v)
        if (hits[v] != 0) out.emplace_back(v, hits[v]);
    return out;
}

// Σ_u m(u)² where m is the distribution of the product of the factors.
std::uint64_t square_sum_of_products(const PrimeContext& ctx,
                                     const std::vector<std::vector<std::pair<residue_t, std::uint64_t>>>& factors) {
    const std::uint64_t p = ctx.p();
    std::vector<std::uint64_t> current(p), next(p);
    current[1] = 1;
    for (const auto& factor : factors) {
        std::fill(next.begin(), next.end(), 0);
        for (residue_t u = 1; u < p; ++u) {
            if (current[u] == 0) continue;
            for (const auto& [v, mult] : factor) next[mul_mod(u, v, p)] += current[u] * mult;
        }
        current.swap(next);
    }
    std::uint64_t total = 0;
    for (std::uint64_t m : current) total += m * m;
    return total;
}

void check_side(const PrimeContext& ctx, std::int64_t h) {
    if (h < 1 || static_cast<std::uint64_t>(h) >= ctx.p())
        throw Error(ErrorCode::InvalidBox, "side length must satisfy 1 <= h < p, got " + std::to_string(h));
}

void check_nu(int nu) {
    if (nu < 1) throw Error(ErrorCode::DimensionTooSmall, "nu must be at least 1");
}

}  // namespace

std::string_view to_string(CountMethod m) noexcept {
    return m == CountMethod::Brute ? "brute" : "spectral";
}

void CountSpec::validate(const PrimeContext& ctx) const {
    check_nu(nu);
    const auto n = static_cast<std::size_t>(nu);
    if (h.size() != n || k.size() != n) throw Error(ErrorCode::DimensionMismatch, "h and k need nu entries");
    if (e && e->size() != n) throw Error(ErrorCode::DimensionMismatch, "e needs nu entries");
    for (std::int64_t side : h) check_side(ctx, side);
}

CountResult count_I_brute(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k) {
    check_nu(nu);
    check_side(ctx, h);
    const auto factor = factor_values(ctx, h, k, 1);
    const std::vector<std::vector<std::pair<residue_t, std::uint64_t>>> factors(static_cast<std::size_t>(nu), factor);
    return {square_sum_of_products(ctx, factors), CountMethod::Brute, 0.0};
}

double count_I_character_average(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k) {
    check_nu(nu);
    check_side(ctx, h);
    const std::uint64_t p = ctx.p();
    const std::uint64_t n = ctx.order();
    std::vector<std::uint32_t> indices;
    for (std::int64_t x = 1; x <= h; ++x) {
        const residue_t v = reduce(x + k, p);
        if (v != 0) indices.push_back(ctx.index(v));
    }
    std::vector<complex_t> roots(n);
    for (std::uint64_t j = 0; j < n; ++j) roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / n);

    double total = 0.0;
    for (std::uint64_t a = 0; a < n; ++a) {
        complex_t s{};
        for (std::uint32_t ind : indices) s += roots[mul_mod(a, ind, n)];
        const double sq = std::norm(s);
        double term = 1.0;
        for (int i = 0; i < nu; ++i) term *= sq;
        total += term;
    }
    return total / static_cast<double>(n);
}

CountResult count_I_spectral(const PrimeContext& ctx, int nu, std::int64_t h, std::int64_t k) {
    const double raw = count_I_character_average(ctx, nu, h, k);
    const double rounded = std::round(raw);
    const double residual = std::abs(raw - rounded);
    if (!(residual < 0.4))
        throw Error(ErrorCode::RoundingUnstable, "character average " + std::to_string(raw) + " is not near an integer");
    return {static_cast<std::uint64_t>(rounded), CountMethod::Spectral, residual};
}

CountResult count_J_brute(const PrimeContext& ctx, const CountSpec& spec) {
    spec.validate(ctx);
    if (!spec.e) throw Error(ErrorCode::InvalidExponent, "J-type counts need an exponent vector");
    std::vector<std::vector<std::pair<residue_t, std::uint64_t>>> factors;
    for (std::size_t j = 0; j < spec.h.size(); ++j) factors.push_back(factor_values(ctx, spec.h[j], spec.k[j], (*spec.e)[j]));
    return {square_sum_of_products(ctx, factors), CountMethod::Brute, 0.0};
}

Lemma3Report lemma3_check(const PrimeContext& ctx, const CountSpec& spec) {
    Lemma3Report report;
    report.lhs = count_J_brute(ctx, spec).value;
    const double inv_nu = 1.0 / spec.nu;
    double log_plain = 0.0;
    double log_gcd = 0.0;
    for (std::size_t j = 0; j < spec.h.size(); ++j) {
        const std::uint64_t count = count_I_brute(ctx, spec.nu, spec.h[j], spec.k[j]).value;
        report.i_counts.push_back(count);
        const auto e = static_cast<std::uint64_t>(std::abs((*spec.e)[j]));
        const double g = static_cast<double>(std::gcd(e, ctx.order()));
        log_plain += std::log(static_cast<double>(count));
        log_gcd += std::log(g * static_cast<double>(count));
    }
    report.rhs_plain = std::exp(inv_nu * log_plain);
    report.rhs_gcd = std::exp(inv_nu * log_gcd);
    const auto lhs = static_cast<double>(report.lhs);
    report.holds_plain = lhs <= report.rhs_plain * (1.0 + 1e-9);
    report.holds_gcd = lhs <= report.rhs_gcd * (1.0 + 1e-9);
    return report;
}

}  // namespace monosum
