#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "monosum/sums.hpp"
#include "oracles.hpp"

using namespace monosum;

namespace {

SumSpec unit_spec(std::uint64_t p, std::vector<std::int64_t> k, std::int64_t h, ExponentVector e, std::int64_t lambda) {
    const std::size_t n = k.size();
    return SumSpec(build_context(p), Box(std::move(k), h), std::move(e), WeightSystem::unit(n), lambda);
}

double distance(complex_t a, oracle::cplx b) { return std::abs(a - b); }

struct Drawn {
    std::vector<std::int64_t> k, e;
    std::int64_t lambda;
    std::vector<std::vector<complex_t>> weights;
};

Drawn draw(std::mt19937_64& gen, std::int64_t p, std::size_t n, std::int64_t h) {
    std::uniform_int_distribution<std::int64_t> corner(-p, 2 * p), lam(1, p - 1), pick(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    static constexpr std::int64_t choices[] = {-2, -1, 1, 2};
    Drawn d;
    d.lambda = lam(gen);
    for (std::size_t j = 0; j < n; ++j) {
        d.k.push_back(corner(gen));
        d.e.push_back(choices[pick(gen)]);
        std::vector<complex_t> row;
        for (std::int64_t i = 0; i < h; ++i) row.push_back(std::polar(unit(gen), 2.0 * std::numbers::pi * unit(gen)));
        d.weights.push_back(row);
    }
    return d;
}

}  // namespace

TEST(Box, Validation) {
    EXPECT_THROW(Box({}, 3), Error);
    EXPECT_THROW(Box({0}, 0), Error);
    const Box b({3, 5}, 4);
    EXPECT_EQ(b.dimension(), 2u);
    EXPECT_EQ(b.admissible(0, 5), 3);  // 4..7 contains 5
    EXPECT_EQ(b.admissible(1, 5), 4);  // 6..9
    EXPECT_EQ(b.slice(1, 1).k, std::vector<std::int64_t>{5});
}

TEST(SumSpec, Validation) {
    const PrimeContext ctx = build_context(7);
    EXPECT_THROW(SumSpec(ctx, Box({0, 0}, 7), ExponentVector{1, 1}, WeightSystem::unit(2), 1), Error);
    EXPECT_THROW(SumSpec(ctx, Box({0, 0}, 3), ExponentVector{1}, WeightSystem::unit(2), 1), Error);
    EXPECT_THROW(SumSpec(ctx, Box({0, 0}, 3), ExponentVector{1, 1}, WeightSystem::unit(3), 1), Error);
    EXPECT_THROW(SumSpec(ctx, Box({0}, 3), ExponentVector{1}, WeightSystem::table({{1.0, 1.0}}), 1), Error);
    EXPECT_THROW(WeightSystem::table({{complex_t(1.5, 0.0)}}), Error);
}

TEST(EtaDistribution, Examples) {
    const PrimeContext p7 = build_context(7), p5 = build_context(5);
    const auto a = eta_distribution(p7, Box({0}, 3), ExponentVector{1}, WeightSystem::unit(1));
    for (std::size_t u = 0; u < 7; ++u) EXPECT_EQ(a.values[u], complex_t(u >= 1 && u <= 3 ? 1.0 : 0.0));
    const auto b = eta_distribution(p5, Box({0}, 2), ExponentVector{-1}, WeightSystem::unit(1));
    const double expect_b[] = {0, 1, 0, 1, 0};
    for (std::size_t u = 0; u < 5; ++u) EXPECT_EQ(b.values[u], complex_t(expect_b[u]));
    const auto c = eta_distribution(p5, Box({0, 0}, 2), ExponentVector{1, 1}, WeightSystem::unit(2));
    const double expect_c[] = {0, 1, 2, 0, 1};
    for (std::size_t u = 0; u < 5; ++u) EXPECT_EQ(c.values[u], complex_t(expect_c[u]));
}

TEST(SumS, Examples) {
    const SumResult zero_phase = sum_S_naive(unit_spec(11, {0, 0, 0}, 4, ExponentVector{1, -1, 2}, 0));
    EXPECT_NEAR(std::abs(zero_phase.value - 64.0), 0.0, 1e-12);
    EXPECT_EQ(zero_phase.terms, 64u);

    const SumSpec spec = unit_spec(5, {0, 0}, 2, ExponentVector{1, 1}, 1);
    const SumResult naive = sum_S_naive(spec);
    EXPECT_NEAR(naive.value.real(), -1.0, 1e-12);
    EXPECT_NEAR(naive.value.imag(), 1.1755705045849463, 1e-12);
    EXPECT_NEAR(std::abs(sum_S_bilinear(spec).value - naive.value), 0.0, agreement_tolerance(naive.terms));

    const SumResult empty = sum_S_naive(unit_spec(5, {4, 0}, 1, ExponentVector{1, 1}, 1));
    EXPECT_EQ(empty.terms, 0u);
    EXPECT_EQ(empty.value, complex_t(0.0));
}

TEST(SumS, BilinearWithZeroLambdaFactors) {
    const SumSpec spec = unit_spec(13, {2, 9, 11}, 5, ExponentVector{2, -1, 3}, 0);
    const SumResult r = sum_S_bilinear(spec);
    EXPECT_NEAR(std::abs(r.value - static_cast<double>(spec.admissible_terms())), 0.0, 1e-9);
    EXPECT_EQ(r.method, SumMethod::Bilinear);
}

TEST(SumS, BilinearRejectsOneDimension) {
    EXPECT_THROW(sum_S_bilinear(unit_spec(7, {0}, 3, ExponentVector{1}, 1)), Error);
}

TEST(SumS, AgreesWithOracleWithWeights) {
    std::mt19937_64 gen(17);
    for (std::int64_t p : {5, 7, 11, 13}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        for (std::size_t n : {1u, 2u, 3u}) {
            for (int trial = 0; trial < 10; ++trial) {
                const std::int64_t h = 1 + trial % (p - 1);
                const Drawn d = draw(gen, p, n, h);
                const SumSpec spec(ctx, Box(d.k, h), ExponentVector(d.e), WeightSystem::table(d.weights), d.lambda);
                const SumResult naive = sum_S_naive(spec);
                EXPECT_LE(distance(naive.value, oracle::sum_S(p, d.k, h, d.e, d.lambda, d.weights)), 1e-10);
                if (n >= 2) EXPECT_LE(std::abs(sum_S_bilinear(spec).value - naive.value), agreement_tolerance(naive.terms));
            }
        }
    }
}

TEST(SumS, BilinearAgreesAtFourDimensions) {
    std::mt19937_64 gen(19);
    std::uniform_int_distribution<std::int64_t> corner(0, 30);
    for (int trial = 0; trial < 20; ++trial) {
        const SumSpec spec = unit_spec(11, {corner(gen), corner(gen), corner(gen), corner(gen)}, 2, ExponentVector::ones(4, 1), 1);
        const SumResult a = sum_S_naive(spec), b = sum_S_bilinear(spec);
        EXPECT_LE(std::abs(a.value - b.value), agreement_tolerance(a.terms));
    }
}

TEST(SumS, PhaseWeightsMatchTables) {
    const PrimeContext ctx = build_context(13);
    const Box box({3, 7}, 5);
    const SumSpec phase(ctx, box, ExponentVector{1, -2}, WeightSystem::additive_phase({4, 9}), 3);
    std::vector<std::vector<complex_t>> tables(2);
    for (std::int64_t x = 4; x <= 8; ++x) tables[0].push_back(oracle::e_p(4 * x, 13));
    for (std::int64_t x = 8; x <= 12; ++x) tables[1].push_back(oracle::e_p(9 * x, 13));
    const SumSpec table(ctx, box, ExponentVector{1, -2}, WeightSystem::table(tables), 3);
    EXPECT_LE(std::abs(sum_S_naive(phase).value - sum_S_naive(table).value), 1e-12);
}

TEST(SumK, Examples) {
    const PrimeContext p5 = build_context(5);
    EXPECT_NEAR(std::abs(sum_K(p5, Box({0}, 4), 1, {0}).value - (-1.0)), 0.0, 1e-12);

    const PrimeContext p7 = build_context(7);
    const SumResult k = sum_K(p7, Box({0, 0}, 3), 1, {1, 2});
    EXPECT_NEAR(k.value.real(), 1.246979603717472, 1e-12);
    EXPECT_NEAR(k.value.imag(), 0.0, 1e-12);
    const SumSpec phase(p7, Box({0, 0}, 3), ExponentVector{-1, -1}, WeightSystem::additive_phase({1, 2}), 1);
    EXPECT_LE(std::abs(k.value - sum_S_naive(phase).value), 1e-12);

    const SumResult zero = sum_K(p7, Box({2, 4, 1}, 4), 3, {0, 0, 0});
    const SumResult s = sum_S_naive(unit_spec(7, {2, 4, 1}, 4, ExponentVector::ones(3, -1), 3));
    EXPECT_EQ(zero.value, s.value);
}

TEST(SumK, BilinearMethod) {
    const PrimeContext ctx = build_context(31);
    const SumResult a = sum_K(ctx, Box({5, 11, 2}, 6), 7, {1, 2, 3});
    const SumResult b = sum_K(ctx, Box({5, 11, 2}, 6), 7, {1, 2, 3}, SumMethod::Bilinear);
    EXPECT_LE(std::abs(a.value - b.value), agreement_tolerance(a.terms));
}

TEST(SumT, Examples) {
    const PrimeContext p7 = build_context(7);
    const MultChar chi0(p7, 0);
    const SumSpec count = unit_spec(7, {0, 0}, 3, ExponentVector{1, 1}, 1);
    // Pairs from {1,2,3}^2 with xy ≡ -1 (mod 7): (2,3) and (3,2).
    EXPECT_NEAR(std::abs(sum_T_naive(count, chi0).value - 7.0), 0.0, 1e-12);

    const SumSpec full = unit_spec(7, {0}, 6, ExponentVector{1}, 0);
    EXPECT_NEAR(std::abs(sum_T_naive(full, MultChar(p7, 2)).value), 0.0, 1e-12);

    const SumSpec small = unit_spec(7, {0, 0}, 2, ExponentVector{1, -1}, 1);
    EXPECT_NEAR(std::abs(sum_T_naive(small, MultChar(p7, 3)).value), 0.0, 1e-12);

    const SumResult t2 = sum_T_naive(unit_spec(7, {0, 0}, 3, ExponentVector{1, 1}, 2), MultChar(p7, 1));
    EXPECT_NEAR(t2.value.real(), 1.0, 1e-12);
    EXPECT_NEAR(t2.value.imag(), -3.4641016151377535, 1e-12);
}

TEST(SumT, EtaAgreesWithOracle) {
    std::mt19937_64 gen(23);
    for (std::int64_t p : {5, 7, 11, 13}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        std::uniform_int_distribution<std::int64_t> index(0, p - 2);
        for (std::size_t n : {2u, 3u}) {
            for (int trial = 0; trial < 10; ++trial) {
                const std::int64_t h = 1 + trial % (p - 1);
                Drawn d = draw(gen, p, n, h);
                if (trial % 2) d.lambda = 0;
                const std::int64_t a = index(gen);
                const SumSpec spec(ctx, Box(d.k, h), ExponentVector(d.e), WeightSystem::table(d.weights), d.lambda);
                const MultChar chi(ctx, a);
                const SumResult naive = sum_T_naive(spec, chi);
                EXPECT_LE(distance(naive.value, oracle::sum_T(p, d.k, h, d.e, d.lambda, a, d.weights)), 1e-10);
                EXPECT_LE(std::abs(sum_T_eta(spec, chi).value - naive.value), agreement_tolerance(naive.terms));
            }
        }
    }
}

TEST(SumT, EtaAtFourDimensions) {
    std::mt19937_64 gen(29);
    std::uniform_int_distribution<std::int64_t> corner(0, 40);
    const PrimeContext ctx = build_context(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SumSpec spec(ctx, Box({corner(gen), corner(gen), corner(gen), corner(gen)}, 2), ExponentVector::ones(4, 1),
                           WeightSystem::unit(4), 3);
        const MultChar chi(ctx, 1);
        EXPECT_LE(std::abs(sum_T_eta(spec, chi).value - sum_T_naive(spec, chi).value), 1e-9 * 17);
    }
}

TEST(Majorants, CauchyExamples) {
    const SumSpec single = unit_spec(7, {0, 0}, 1, ExponentVector{1, 1}, 1);
    EXPECT_NEAR(cauchy_majorant(single), std::sqrt(7.0), 1e-12);
    const SumSpec spec = unit_spec(5, {0, 0}, 2, ExponentVector{1, 1}, 1);
    EXPECT_NEAR(cauchy_majorant(spec), std::sqrt(20.0), 1e-12);
    EXPECT_GE(cauchy_majorant(spec), std::abs(sum_S_naive(spec).value));
    EXPECT_THROW(cauchy_majorant(unit_spec(5, {0, 0}, 2, ExponentVector{1, 1}, 10)), Error);
}

TEST(Majorants, HolderExamples) {
    const PrimeContext p7 = build_context(7);
    const SumSpec spec = unit_spec(7, {0, 0}, 2, ExponentVector{1, 1}, 1);
    const MultChar chi(p7, 3);
    EXPECT_GE(holder_majorant(spec, chi, 2), std::abs(sum_T_naive(spec, chi).value));
    const SumSpec zero(p7, Box({0, 0}, 2), ExponentVector{1, 1}, WeightSystem::table({{0.0, 0.0}, {0.0, 0.0}}), 1);
    EXPECT_EQ(holder_majorant(zero, chi, 2), 0.0);
    EXPECT_THROW(holder_majorant(spec, MultChar(p7, 0), 2), Error);
}

TEST(Majorants, DominateOnRandomSpecs) {
    std::mt19937_64 gen(31);
    for (std::int64_t p : {7, 11, 31}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        std::uniform_int_distribution<std::int64_t> index(1, p - 2);
        for (std::size_t n : {2u, 3u}) {
            for (int trial = 0; trial < 15; ++trial) {
                const std::int64_t h = 1 + trial % std::min<std::int64_t>(p - 1, 6);
                const Drawn d = draw(gen, p, n, h);
                const SumSpec spec(ctx, Box(d.k, h), ExponentVector(d.e), WeightSystem::table(d.weights), d.lambda);
                const SumResult s = sum_S_naive(spec);
                EXPECT_GE(cauchy_majorant(spec) + agreement_tolerance(s.terms), std::abs(s.value));
                const MultChar chi(ctx, index(gen));
                const SumResult t = sum_T_naive(spec, chi);
                for (int r = 1; r <= 3; ++r)
                    EXPECT_GE(holder_majorant(spec, chi, r) + agreement_tolerance(t.terms), std::abs(t.value));
            }
        }
    }
}

TEST(Sums, ConjugationSymmetry) {
    std::mt19937_64 gen(37);
    std::uniform_int_distribution<std::int64_t> corner(0, 100), lam(1, 100);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::int64_t> k{corner(gen), corner(gen)};
        const std::int64_t l = lam(gen);
        const SumResult a = sum_S_naive(unit_spec(101, k, 7, ExponentVector{2, -1}, l));
        const SumResult b = sum_S_naive(unit_spec(101, k, 7, ExponentVector{2, -1}, 101 - l));
        EXPECT_LE(std::abs(a.value - std::conj(b.value)), 1e-10);
    }
}

TEST(Sums, TrivialBound) {
    std::mt19937_64 gen(41);
    const PrimeContext ctx = build_context(13);
    for (int trial = 0; trial < 30; ++trial) {
        const Drawn d = draw(gen, 13, 3, 5);
        const SumSpec spec(ctx, Box(d.k, 5), ExponentVector(d.e), WeightSystem::table(d.weights), d.lambda);
        const SumResult s = sum_S_naive(spec);
        EXPECT_LE(s.terms, 125u);
        EXPECT_LE(std::abs(s.value), static_cast<double>(s.terms) + 1e-12);
    }
}
