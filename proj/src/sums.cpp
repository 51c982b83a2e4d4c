#include "monosum/sums.hpp"

#include <cmath>
#include <string>

namespace monosum {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) noexcept {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct Term {
    residue_t value;  // x^e mod p
    complex_t weight;
};

// Admissible points of coordinate j with their monomial factor and weight.
std::vector<Term> coordinate_terms(const PrimeContext& ctx, const Box& box, const ExponentVector& e,
                                   const WeightSystem& weights, std::size_t j) {
    const auto rho = weights.coordinate(ctx, box, j);
    std::vector<Term> terms;
    terms.reserve(rho.size());
    for (std::int64_t i = 0; i < box.h; ++i) {
        const residue_t x = reduce(box.k[j] + 1 + i, ctx.p());
        if (x == 0) continue;
        terms.push_back({ctx.pow_index(x, e[j]), rho[static_cast<std::size_t>(i)]});
    }
    return terms;
}

std::vector<std::vector<Term>> all_terms(const SumSpec& spec) {
    std::vector<std::vector<Term>> out;
    for (std::size_t j = 0; j < spec.dimension(); ++j)
        out.push_back(coordinate_terms(spec.ctx, spec.box, spec.e, spec.weights, j));
    return out;
}

// Depth-first enumeration of the box; `leaf` receives the monomial residue and
// the weight product. Accumulation order is lexicographic in the tuple.
template <typename Leaf>
void enumerate(const std::vector<std::vector<Term>>& terms, std::size_t depth, residue_t monomial,
               complex_t weight, std::uint64_t p, Leaf& leaf) {
    if (depth == terms.size()) {
        leaf(monomial, weight);
        return;
    }
    for (const Term& t : terms[depth])
        enumerate(terms, depth + 1, mul_mod(monomial, t.value, p), weight * t.weight, p, leaf);
}

void require_gcd_one(const SumSpec& spec) {
    if (reduce(spec.lambda, spec.ctx.p()) == 0)
        throw Error(ErrorCode::LambdaDivisible, "bound comparisons need gcd(lambda, p) = 1");
}

// The last coordinate's weights with x ≡ 0 masked out, as h values.
std::vector<complex_t> masked_last_weights(const SumSpec& spec) {
    const std::size_t last = spec.dimension() - 1;
    auto rho = spec.weights.coordinate(spec.ctx, spec.box, last);
    for (std::int64_t i = 0; i < spec.box.h; ++i)
        if (reduce(spec.box.k[last] + 1 + i, spec.ctx.p()) == 0) rho[static_cast<std::size_t>(i)] = {};
    return rho;
}

// F(u) = Σ_x ρ_n(x) χ(u x^{e_n} + λ) over admissible x of the last coordinate.
class LastCoordinateSum {
public:
    LastCoordinateSum(const SumSpec& spec, const CharacterTable& chi)
        : spec_(spec), chi_(chi), linear_(spec.e[spec.dimension() - 1] == 1) {
        if (linear_) {
            masked_ = masked_last_weights(spec);
        } else {
            terms_ = coordinate_terms(spec.ctx, spec.box, spec.e, spec.weights, spec.dimension() - 1);
        }
    }

    complex_t operator()(residue_t u) const {
        const std::size_t last = spec_.dimension() - 1;
        if (linear_) {
            return char_interval_sum(chi_, spec_.ctx, spec_.box.k[last], spec_.box.h, static_cast<std::int64_t>(u),
                                     spec_.lambda, masked_);
        }
        const std::uint64_t p = spec_.ctx.p();
        const residue_t lam = reduce(spec_.lambda, p);
        complex_t acc{};
        for (const Term& t : terms_) acc += t.weight * chi_[(mul_mod(u, t.value, p) + lam) % p];
        return acc;
    }

private:
    const SumSpec& spec_;
    const CharacterTable& chi_;
    bool linear_;
    std::vector<complex_t> masked_;
    std::vector<Term> terms_;
};

}  // namespace

std::string_view to_string(SumMethod m) noexcept {
    switch (m) {
        case SumMethod::Naive: return "naive";
        case SumMethod::Bilinear: return "bilinear";
        case SumMethod::Eta: return "eta";
    }
    return "unknown";
}

Box::Box(std::vector<std::int64_t> corners, std::int64_t side) : k(std::move(corners)), h(side) {
    if (k.empty()) throw Error(ErrorCode::InvalidBox, "box needs at least one coordinate");
    if (h < 1) throw Error(ErrorCode::InvalidBox, "side length must be at least 1");
}

Box Box::slice(std::size_t first, std::size_t count) const {
    if (first + count > k.size()) throw Error(ErrorCode::DimensionMismatch, "box slice out of range");
    return Box(std::vector<std::int64_t>(k.begin() + first, k.begin() + first + count), h);
}

std::int64_t Box::admissible(std::size_t j, std::uint64_t p) const noexcept {
    const auto sp = static_cast<std::int64_t>(p);
    const std::int64_t zeros = floor_div(k[j] + h, sp) - floor_div(k[j], sp);
    return h - zeros;
}

WeightSystem WeightSystem::table(std::vector<std::vector<complex_t>> tables) {
    if (tables.empty()) throw Error(ErrorCode::InvalidWeights, "weight table needs at least one coordinate");
    for (const auto& t : tables)
        for (const auto& v : t)
            if (!(std::abs(v) <= 1.0 + 1e-12))
                throw Error(ErrorCode::InvalidWeights, "weights must satisfy |rho(x)| <= 1");
    return WeightSystem(TableWeights{std::move(tables)});
}

std::size_t WeightSystem::dimension() const noexcept {
    struct Visitor {
        std::size_t operator()(const UnitWeights& w) const { return w.n; }
        std::size_t operator()(const AdditivePhaseWeights& w) const { return w.lambdas.size(); }
        std::size_t operator()(const TableWeights& w) const { return w.tables.size(); }
    };
    return std::visit(Visitor{}, w_);
}

std::string_view WeightSystem::kind() const noexcept {
    struct Visitor {
        std::string_view operator()(const UnitWeights&) const { return "unit"; }
        std::string_view operator()(const AdditivePhaseWeights&) const { return "phase"; }
        std::string_view operator()(const TableWeights&) const { return "table"; }
    };
    return std::visit(Visitor{}, w_);
}

WeightSystem WeightSystem::slice(std::size_t first, std::size_t count) const {
    if (first + count > dimension()) throw Error(ErrorCode::DimensionMismatch, "weight slice out of range");
    struct Visitor {
        std::size_t first, count;
        Storage operator()(const UnitWeights&) const { return UnitWeights{count}; }
        Storage operator()(const AdditivePhaseWeights& w) const {
            return AdditivePhaseWeights{{w.lambdas.begin() + first, w.lambdas.begin() + first + count}};
        }
        Storage operator()(const TableWeights& w) const {
            return TableWeights{{w.tables.begin() + first, w.tables.begin() + first + count}};
        }
    };
    return WeightSystem(std::visit(Visitor{first, count}, w_));
}

std::vector<complex_t> WeightSystem::coordinate(const PrimeContext& ctx, const Box& box, std::size_t j) const {
    const auto h = static_cast<std::size_t>(box.h);
    if (const auto* phase = std::get_if<AdditivePhaseWeights>(&w_)) {
        std::vector<complex_t> out(h);
        const residue_t lam = reduce(phase->lambdas[j], ctx.p());
        for (std::size_t i = 0; i < h; ++i) {
            const residue_t x = reduce(box.k[j] + 1 + static_cast<std::int64_t>(i), ctx.p());
            out[i] = additive_char(ctx, static_cast<std::int64_t>(mul_mod(lam, x, ctx.p())));
        }
        return out;
    }
    if (const auto* table = std::get_if<TableWeights>(&w_)) {
        if (table->tables[j].size() != h)
            throw Error(ErrorCode::DimensionMismatch, "weight table length differs from side length");
        return table->tables[j];
    }
    return std::vector<complex_t>(h, complex_t{1.0, 0.0});
}

SumSpec::SumSpec(PrimeContext c, Box b, ExponentVector ex, WeightSystem w, std::int64_t l)
    : ctx(std::move(c)), box(std::move(b)), e(std::move(ex)), weights(std::move(w)), lambda(l) {
    if (box.dimension() != e.size() || box.dimension() != weights.dimension())
        throw Error(ErrorCode::DimensionMismatch, "box, exponents and weights must have equal dimension");
    if (static_cast<std::uint64_t>(box.h) >= ctx.p())
        throw Error(ErrorCode::InvalidBox, "side length must be below p");
    if (const auto* t = std::get_if<TableWeights>(&weights.variant())) {
        for (const auto& column : t->tables)
            if (column.size() != static_cast<std::size_t>(box.h))
                throw Error(ErrorCode::DimensionMismatch, "weight table length differs from side length");
    }
}

std::uint64_t SumSpec::admissible_terms() const noexcept {
    std::uint64_t total = 1;
    for (std::size_t j = 0; j < dimension(); ++j) total *= static_cast<std::uint64_t>(box.admissible(j, ctx.p()));
    return total;
}

ResidueDistribution eta_distribution(const PrimeContext& ctx, const Box& box, const ExponentVector& e,
                                     const WeightSystem& weights) {
    if (box.dimension() != e.size() || box.dimension() != weights.dimension())
        throw Error(ErrorCode::DimensionMismatch, "slice dimensions must agree");
    if (static_cast<std::uint64_t>(box.h) >= ctx.p()) throw Error(ErrorCode::InvalidBox, "side length must be below p");

    const std::uint64_t p = ctx.p();
    std::vector<complex_t> current(p), next(p);
    current[1] = 1.0;
    for (std::size_t j = 0; j < box.dimension(); ++j) {
        const auto terms = coordinate_terms(ctx, box, e, weights, j);
        std::fill(next.begin(), next.end(), complex_t{});
        for (residue_t u = 1; u < p; ++u) {
            if (current[u] == complex_t{}) continue;
            for (const Term& t : terms) next[mul_mod(u, t.value, p)] += current[u] * t.weight;
        }
        current.swap(next);
    }
    return ResidueDistribution(ctx, std::move(current));
}

SumResult sum_S_naive(const SumSpec& spec) {
    const std::uint64_t p = spec.ctx.p();
    const auto roots = additive_char_table(spec.ctx);
    const residue_t lam = reduce(spec.lambda, p);
    complex_t acc{};
    auto leaf = [&](residue_t m, complex_t w) { acc += w * roots[mul_mod(lam, m, p)]; };
    enumerate(all_terms(spec), 0, 1, complex_t{1.0, 0.0}, p, leaf);
    return {acc, spec.admissible_terms(), SumMethod::Naive};
}

SumResult sum_S_bilinear(const SumSpec& spec, SpectrumMethod method) {
    return sum_S_bilinear(spec, [method](const ResidueDistribution& d) { return additive_spectrum(d, method); });
}

SumResult sum_S_bilinear(const SumSpec& spec, const SpectrumFn& spectrum) {
    const std::size_t n = spec.dimension();
    if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "bilinear decomposition needs n >= 2");
    const std::size_t s = n / 2;
    const std::size_t t = n - s;
    const auto eta1 = eta_distribution(spec.ctx, spec.box.slice(0, s), spec.e.slice(0, s), spec.weights.slice(0, s));
    const auto eta2 = eta_distribution(spec.ctx, spec.box.slice(s, t), spec.e.slice(s, t), spec.weights.slice(s, t));
    const Spectrum e2 = spectrum(eta2);

    const std::uint64_t p = spec.ctx.p();
    const residue_t lam = reduce(spec.lambda, p);
    complex_t acc{};
    for (residue_t u = 1; u < p; ++u) {
        if (eta1.values[u] == complex_t{}) continue;
        acc += eta1.values[u] * e2.values[mul_mod(lam, u, p)];
    }
    return {acc, spec.admissible_terms(), SumMethod::Bilinear};
}

SumSpec kloosterman_spec(const PrimeContext& ctx, const Box& box, std::int64_t lambda,
                         std::vector<std::int64_t> lambda_vec) {
    if (lambda_vec.size() != box.dimension())
        throw Error(ErrorCode::DimensionMismatch, "one additive frequency per coordinate is required");
    return SumSpec(ctx, box, ExponentVector::ones(box.dimension(), -1),
                   WeightSystem::additive_phase(std::move(lambda_vec)), lambda);
}

SumResult sum_K(const PrimeContext& ctx, const Box& box, std::int64_t lambda, std::vector<std::int64_t> lambda_vec,
                SumMethod method) {
    const SumSpec spec = kloosterman_spec(ctx, box, lambda, std::move(lambda_vec));
    return method == SumMethod::Naive ? sum_S_naive(spec) : sum_S_bilinear(spec);
}

SumResult sum_T_naive(const SumSpec& spec, const MultChar& chi) {
    if (!(chi.context() == spec.ctx)) throw Error(ErrorCode::DimensionMismatch, "character modulus differs");
    const std::uint64_t p = spec.ctx.p();
    const CharacterTable table(chi);
    const residue_t lam = reduce(spec.lambda, p);
    complex_t acc{};
    auto leaf = [&](residue_t m, complex_t w) { acc += w * table[(m + lam) % p]; };
    enumerate(all_terms(spec), 0, 1, complex_t{1.0, 0.0}, p, leaf);
    return {acc, spec.admissible_terms(), SumMethod::Naive};
}

SumResult sum_T_eta(const SumSpec& spec, const MultChar& chi) {
    const std::size_t n = spec.dimension();
    if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "eta decomposition needs n >= 2");
    if (!(chi.context() == spec.ctx)) throw Error(ErrorCode::DimensionMismatch, "character modulus differs");
    const auto eta0 =
        eta_distribution(spec.ctx, spec.box.slice(0, n - 1), spec.e.slice(0, n - 1), spec.weights.slice(0, n - 1));
    const CharacterTable table(chi);
    const LastCoordinateSum inner(spec, table);
    complex_t acc{};
    for (residue_t u = 1; u < spec.ctx.p(); ++u) {
        if (eta0.values[u] == complex_t{}) continue;
        acc += eta0.values[u] * inner(u);
    }
    return {acc, spec.admissible_terms(), SumMethod::Eta};
}

double cauchy_majorant(const SumSpec& spec) {
    const std::size_t n = spec.dimension();
    if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "bilinear decomposition needs n >= 2");
    require_gcd_one(spec);
    const std::size_t s = n / 2;
    const std::size_t t = n - s;
    const auto eta1 = eta_distribution(spec.ctx, spec.box.slice(0, s), spec.e.slice(0, s), spec.weights.slice(0, s));
    const auto eta2 = eta_distribution(spec.ctx, spec.box.slice(s, t), spec.e.slice(s, t), spec.weights.slice(s, t));
    return std::sqrt(static_cast<double>(spec.ctx.p()) * eta1.energy() * eta2.energy());
}

double holder_majorant(const SumSpec& spec, const MultChar& chi, int r) {
    const std::size_t n = spec.dimension();
    if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "eta decomposition needs n >= 2");
    if (chi.principal()) throw Error(ErrorCode::PrincipalCharacter, "Holder step needs a nonprincipal character");
    if (r < 1) throw Error(ErrorCode::MomentOrderTooSmall, "moment order must be at least 1");
    require_gcd_one(spec);

    const auto eta0 =
        eta_distribution(spec.ctx, spec.box.slice(0, n - 1), spec.e.slice(0, n - 1), spec.weights.slice(0, n - 1));
    const CharacterTable table(chi);
    const LastCoordinateSum inner(spec, table);
    double moment = 0.0;
    for (residue_t u = 1; u < spec.ctx.p(); ++u) {
        const double sq = std::norm(inner(u));
        double term = 1.0;
        for (int i = 0; i < r; ++i) term *= sq;
        moment += term;
    }
    const double energy = eta0.energy();
    const double mass = eta0.mass();
    if (energy == 0.0 || mass == 0.0 || moment == 0.0) return 0.0;
    const double log_total = std::log(energy) + (2.0 * r - 2.0) * std::log(mass) + std::log(moment);
    return std::exp(log_total / (2.0 * r));
}

}  // namespace monosum
