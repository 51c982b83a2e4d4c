#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "monosum/modular.hpp"

namespace monosum {

using complex_t = std::complex<double>;

/// exp(2πi (z mod p)/p).
complex_t additive_char(const PrimeContext& ctx, std::int64_t z);

/// The p values e_p(0), ..., e_p(p-1).
std::vector<complex_t> additive_char_table(const PrimeContext& ctx);

/// Multiplicative character χ_a(x) = exp(2πi a ind(x)/(p-1)), χ_a(0) = 0.
class MultChar {
public:
    MultChar(PrimeContext ctx, std::int64_t a);

    const PrimeContext& context() const noexcept { return ctx_; }
    std::uint64_t index() const noexcept { return a_; }
    bool principal() const noexcept { return a_ == 0; }

    complex_t operator()(std::int64_t x) const;

private:
    PrimeContext ctx_;
    std::uint64_t a_;
};

/// χ evaluated once at every residue; table[0] = 0.
class CharacterTable {
public:
    explicit CharacterTable(const MultChar& chi);

    complex_t operator[](residue_t x) const noexcept { return values_[x]; }
    std::span<const complex_t> values() const noexcept { return values_; }

private:
    std::vector<complex_t> values_;
};

complex_t mult_char_eval(const MultChar& chi, std::int64_t x);

/// χ^e, with index a·e mod (p-1); negative e gives powers of the conjugate.
MultChar char_power(const MultChar& chi, std::int64_t e);

/// A complex function on the residues 0..p-1.
struct ResidueDistribution {
    PrimeContext ctx;
    std::vector<complex_t> values;

    explicit ResidueDistribution(PrimeContext c) : ctx(std::move(c)), values(ctx.p()) {}
    ResidueDistribution(PrimeContext c, std::vector<complex_t> v);

    /// Σ |values[v]|
    double mass() const noexcept;
    /// Σ |values[v]|^2
    double energy() const noexcept;
};

/// values[w] = Σ_v dist[v] e_p(w v).
struct Spectrum {
    PrimeContext ctx;
    std::vector<complex_t> values;
};

enum class SpectrumMethod { Automatic, Direct, Fft };

/// Above this modulus the automatic method switches to the FFT.
inline constexpr std::uint64_t kDirectSpectrumLimit = 4096;

Spectrum additive_spectrum(const ResidueDistribution& dist, SpectrumMethod method = SpectrumMethod::Automatic);
Spectrum additive_spectrum_direct(const ResidueDistribution& dist);
/// Prime-length FFT through FFTW, O(p log p).
Spectrum additive_spectrum_fft(const ResidueDistribution& dist);

/// Σ_{x=k+1}^{k+h} ρ(x) χ(u x + λ), with rho[i] the weight of x = k+1+i.
complex_t char_interval_sum(const MultChar& chi, std::int64_t k, std::int64_t h, std::int64_t u,
                            std::int64_t lambda, std::span<const complex_t> rho);
complex_t char_interval_sum(const CharacterTable& chi, const PrimeContext& ctx, std::int64_t k, std::int64_t h,
                            std::int64_t u, std::int64_t lambda, std::span<const complex_t> rho);

/// Σ_{u=1}^{p-1} |Σ_{x=k+1}^{k+h} ρ(x) χ(u x + λ)|^{2r} by direct enumeration.
/// Throws PrincipalCharacter for χ_0 and LambdaDivisible when p | λ.
double char_moment(const MultChar& chi, std::int64_t k, std::int64_t h, std::int64_t lambda,
                   std::span<const complex_t> rho, int r);

}  // namespace monosum
