#pragma once

/**
 * @file sums.hpp
 * @brief Weighted monomial sums over boxes modulo a prime.
 *
 * For a box B = [k_1+1, k_1+h] × ... × [k_n+1, k_n+h], weights ρ_j with
 * |ρ_j| ≤ 1 and nonzero exponents e_j:
 *
 *   S = Σ ρ_1(x_1)...ρ_n(x_n) e_p(λ x_1^{e_1}...x_n^{e_n})
 *   T = Σ ρ_1(x_1)...ρ_n(x_n) χ(x_1^{e_1}...x_n^{e_n} + λ)
 *
 * where tuples with some x_j ≡ 0 (mod p) are excluded. Each sum is available
 * by naive enumeration and by a decomposition through the residue
 * distribution η of a partial monomial.
 */

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "monosum/characters.hpp"
#include "monosum/modular.hpp"

namespace monosum {

struct Box {
    std::vector<std::int64_t> k;
    std::int64_t h = 1;

    Box(std::vector<std::int64_t> corners, std::int64_t side);

    std::size_t dimension() const noexcept { return k.size(); }
    Box slice(std::size_t first, std::size_t count) const;
    /// Number of x in coordinate j's interval with x ≢ 0 (mod p).
    std::int64_t admissible(std::size_t j, std::uint64_t p) const noexcept;
};

struct UnitWeights {
    std::size_t n;
};
/// ρ_j(x) = exp(2πi λ_j x/p).
struct AdditivePhaseWeights {
    std::vector<std::int64_t> lambdas;
};
/// tables[j][i] is the weight of x = k_j + 1 + i.
struct TableWeights {
    std::vector<std::vector<complex_t>> tables;
};

class WeightSystem {
public:
    static WeightSystem unit(std::size_t n) { return WeightSystem(UnitWeights{n}); }
    static WeightSystem additive_phase(std::vector<std::int64_t> lambdas) {
        return WeightSystem(AdditivePhaseWeights{std::move(lambdas)});
    }
    /// Throws InvalidWeights if some |ρ| exceeds 1.
    static WeightSystem table(std::vector<std::vector<complex_t>> tables);

    std::size_t dimension() const noexcept;
    std::string_view kind() const noexcept;
    bool is_unit() const noexcept { return std::holds_alternative<UnitWeights>(w_); }
    const std::variant<UnitWeights, AdditivePhaseWeights, TableWeights>& variant() const noexcept { return w_; }

    WeightSystem slice(std::size_t first, std::size_t count) const;

    /// The h weights of coordinate j over [k_j+1, k_j+h].
    std::vector<complex_t> coordinate(const PrimeContext& ctx, const Box& box, std::size_t j) const;

private:
    using Storage = std::variant<UnitWeights, AdditivePhaseWeights, TableWeights>;
    explicit WeightSystem(Storage w) : w_(std::move(w)) {}
    Storage w_;
};

struct SumSpec {
    PrimeContext ctx;
    Box box;
    ExponentVector e;
    WeightSystem weights;
    std::int64_t lambda = 1;

    SumSpec(PrimeContext c, Box b, ExponentVector ex, WeightSystem w, std::int64_t l);

    std::size_t dimension() const noexcept { return box.dimension(); }
    /// Tuples with every coordinate ≢ 0 (mod p).
    std::uint64_t admissible_terms() const noexcept;
};

enum class SumMethod { Naive, Bilinear, Eta };
std::string_view to_string(SumMethod m) noexcept;

struct SumResult {
    complex_t value;
    std::uint64_t terms = 0;
    SumMethod method = SumMethod::Naive;
};

/// Absolute agreement tolerance 10^-9 (1 + terms) between evaluation methods.
inline double agreement_tolerance(std::uint64_t terms) noexcept { return 1e-9 * (1.0 + static_cast<double>(terms)); }

/// η(u) = Σ over tuples of the box with x_1^{e_1}...x_m^{e_m} ≡ u of the weight
/// product; η(0) = 0. An empty box slice is not allowed.
ResidueDistribution eta_distribution(const PrimeContext& ctx, const Box& box, const ExponentVector& e,
                                     const WeightSystem& weights);

SumResult sum_S_naive(const SumSpec& spec);

using SpectrumFn = std::function<Spectrum(const ResidueDistribution&)>;

/// η_1 over the first ⌊n/2⌋ coordinates, η_2 over the rest, and
/// S = Σ_u η_1(u) Ê_2(λu). Throws DimensionTooSmall for n < 2.
SumResult sum_S_bilinear(const SumSpec& spec, SpectrumMethod method = SpectrumMethod::Automatic);
SumResult sum_S_bilinear(const SumSpec& spec, const SpectrumFn& spectrum);

/// Multivariate incomplete Kloosterman sum: exponents all -1 and additive
/// phase weights λ_1..λ_n.
SumResult sum_K(const PrimeContext& ctx, const Box& box, std::int64_t lambda, std::vector<std::int64_t> lambda_vec,
                SumMethod method = SumMethod::Naive);
SumSpec kloosterman_spec(const PrimeContext& ctx, const Box& box, std::int64_t lambda,
                         std::vector<std::int64_t> lambda_vec);

SumResult sum_T_naive(const SumSpec& spec, const MultChar& chi);

/// η_0 over the first n-1 coordinates and the last coordinate summed per u.
/// Throws DimensionTooSmall for n < 2.
SumResult sum_T_eta(const SumSpec& spec, const MultChar& chi);

/// (p Σ|η_1(u)|² Σ|η_2(v)|²)^{1/2} ≥ |S|. Throws LambdaDivisible.
double cauchy_majorant(const SumSpec& spec);

/// ((Σ|η_0|²)(Σ|η_0|)^{2r-2} Σ_u |Σ_x ρ_n(x) χ(u x^{e_n} + λ)|^{2r})^{1/(2r)} ≥ |T|.
/// Throws PrincipalCharacter or LambdaDivisible.
double holder_majorant(const SumSpec& spec, const MultChar& chi, int r);

}  // namespace monosum
