#include "monosum/characters.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

namespace monosum {

namespace {

// exp(2πi num/den) with 0 <= num < den, so the angle is reduced before the
// trigonometric call.
complex_t unit_root(std::uint64_t num, std::uint64_t den) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return {std::cos(angle), std::sin(angle)};
}

std::mutex fftw_planner_mutex;  // FFTW planning is not thread-safe; execution is.

}  // namespace

complex_t additive_char(const PrimeContext& ctx, std::int64_t z) {
    return unit_root(reduce(z, ctx.p()), ctx.p());
}

std::vector<complex_t> additive_char_table(const PrimeContext& ctx) {
    std::vector<complex_t> table(ctx.p());
    for (std::uint64_t z = 0; z < ctx.p(); ++z) table[z] = unit_root(z, ctx.p());
    return table;
}

MultChar::MultChar(PrimeContext ctx, std::int64_t a)
    : ctx_(std::move(ctx)), a_(reduce(a, ctx_.order())) {}

complex_t MultChar::operator()(std::int64_t x) const {
    const std::uint32_t ind = ctx_.index(reduce(x, ctx_.p()));
    if (ind == kIndexSentinel) return {0.0, 0.0};
    const std::uint64_t n = ctx_.order();
    return unit_root(mul_mod(a_, ind, n), n);
}

complex_t mult_char_eval(const MultChar& chi, std::int64_t x) { return chi(x); }

MultChar char_power(const MultChar& chi, std::int64_t e) {
    const std::uint64_t n = chi.context().order();
    return MultChar(chi.context(), static_cast<std::int64_t>(mul_mod(chi.index(), reduce(e, n), n)));
}

CharacterTable::CharacterTable(const MultChar& chi) : values_(chi.context().p()) {
    const PrimeContext& ctx = chi.context();
    const std::uint64_t n = ctx.order();
    std::vector<complex_t> roots(n);
    for (std::uint64_t j = 0; j < n; ++j) roots[j] = unit_root(j, n);
    values_[0] = {0.0, 0.0};
    for (residue_t x = 1; x < ctx.p(); ++x) values_[x] = roots[mul_mod(chi.index(), ctx.index(x), n)];
}

ResidueDistribution::ResidueDistribution(PrimeContext c, std::vector<complex_t> v)
    : ctx(std::move(c)), values(std::move(v)) {
    if (values.size() != ctx.p())
        throw Error(ErrorCode::DimensionMismatch, "distribution must have exactly p entries");
}

double ResidueDistribution::mass() const noexcept {
    double total = 0.0;
    for (const auto& v : values) total += std::abs(v);
    return total;
}

double ResidueDistribution::energy() const noexcept {
    double total = 0.0;
    for (const auto& v : values) total += std::norm(v);
    return total;
}

Spectrum additive_spectrum(const ResidueDistribution& dist, SpectrumMethod method) {
    switch (method) {
        case SpectrumMethod::Direct: return additive_spectrum_direct(dist);
        case SpectrumMethod::Fft: return additive_spectrum_fft(dist);
        case SpectrumMethod::Automatic: break;
    }
    return dist.ctx.p() <= kDirectSpectrumLimit ? additive_spectrum_direct(dist) : additive_spectrum_fft(dist);
}

Spectrum additive_spectrum_direct(const ResidueDistribution& dist) {
    const std::uint64_t p = dist.ctx.p();
    const auto roots = additive_char_table(dist.ctx);
    std::vector<std::uint64_t> support;
    for (std::uint64_t v = 0; v < p; ++v)
        if (dist.values[v] != complex_t{}) support.push_back(v);

    Spectrum out{dist.ctx, std::vector<complex_t>(p)};
    for (std::uint64_t w = 0; w < p; ++w) {
        complex_t acc{};
        for (std::uint64_t v : support) acc += dist.values[v] * roots[(w * v) % p];
        out.values[w] = acc;
    }
    return out;
}

Spectrum additive_spectrum_fft(const ResidueDistribution& dist) {
    const std::uint64_t p = dist.ctx.p();
    std::vector<complex_t> in = dist.values;
    Spectrum out{dist.ctx, std::vector<complex_t>(p)};
    // FFTW_BACKWARD uses the exp(+2πi wv/p) kernel, matching e_p(wv).
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex);
        plan = fftw_plan_dft_1d(static_cast<int>(p), reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.values.data()), FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(fftw_planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

complex_t char_interval_sum(const CharacterTable& chi, const PrimeContext& ctx, std::int64_t k, std::int64_t h,
                            std::int64_t u, std::int64_t lambda, std::span<const complex_t> rho) {
    if (h < 1 || static_cast<std::uint64_t>(h) >= ctx.p())
        throw Error(ErrorCode::InvalidBox, "interval length must satisfy 1 <= h < p");
    if (rho.size() != static_cast<std::size_t>(h))
        throw Error(ErrorCode::DimensionMismatch, "weight table length must equal h");
    const std::uint64_t p = ctx.p();
    const residue_t ur = reduce(u, p);
    // arg = u x + λ, advanced by u per step.
    residue_t arg = (mul_mod(ur, reduce(k + 1, p), p) + reduce(lambda, p)) % p;
    complex_t acc{};
    for (std::int64_t i = 0; i < h; ++i) {
        acc += rho[static_cast<std::size_t>(i)] * chi[arg];
        arg += ur;
        if (arg >= p) arg -= p;
    }
    return acc;
}

complex_t char_interval_sum(const MultChar& chi, std::int64_t k, std::int64_t h, std::int64_t u,
                            std::int64_t lambda, std::span<const complex_t> rho) {
    return char_interval_sum(CharacterTable(chi), chi.context(), k, h, u, lambda, rho);
}

double char_moment(const MultChar& chi, std::int64_t k, std::int64_t h, std::int64_t lambda,
                   std::span<const complex_t> rho, int r) {
    if (chi.principal()) throw Error(ErrorCode::PrincipalCharacter, "moment bound needs a nonprincipal character");
    const PrimeContext& ctx = chi.context();
    if (reduce(lambda, ctx.p()) == 0) throw Error(ErrorCode::LambdaDivisible, "lambda must be coprime to p");
    if (r < 1) throw Error(ErrorCode::MomentOrderTooSmall, "moment order must be at least 1");

    const CharacterTable table(chi);
    double total = 0.0;
    for (std::uint64_t u = 1; u < ctx.p(); ++u) {
        const double sq = std::norm(char_interval_sum(table, ctx, k, h, static_cast<std::int64_t>(u), lambda, rho));
        double term = 1.0;
        for (int i = 0; i < r; ++i) term *= sq;
        total += term;
    }
    return total;
}

}  // namespace monosum
