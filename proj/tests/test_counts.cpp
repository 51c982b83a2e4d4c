#include <gtest/gtest.h>

#include <numeric>

#include "monosum/counts.hpp"
#include "oracles.hpp"

using namespace monosum;

TEST(CountI, Examples) {
    EXPECT_EQ(count_I_brute(build_context(7), 1, 3, 0).value, 3u);
    EXPECT_EQ(count_I_brute(build_context(5), 1, 3, 2).value, 2u);
    EXPECT_EQ(count_I_brute(build_context(5), 2, 2, 0).value, 6u);
    EXPECT_EQ(count_I_brute(build_context(7), 2, 3, 0).value, 19u);
    EXPECT_EQ(count_I_brute(build_context(13), 3, 5, 1).value, 1433u);
}

TEST(CountI, SpectralExamples) {
    const CountResult a = count_I_spectral(build_context(5), 2, 2, 0);
    EXPECT_EQ(a.value, 6u);
    EXPECT_EQ(a.method, CountMethod::Spectral);
    EXPECT_LT(a.residual, 0.4);
    EXPECT_EQ(count_I_spectral(build_context(7), 1, 3, 0).value, 3u);
    for (std::uint64_t p : {5ull, 11ull, 31ull}) EXPECT_EQ(count_I_spectral(build_context(p), 1, p - 1, 0).value, p - 1);
}

TEST(CountI, BruteMatchesPairOracle) {
    for (std::int64_t p : {5, 7, 11, 13}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        for (int nu = 1; nu <= 3; ++nu)
            for (std::int64_t h = 1; h < std::min<std::int64_t>(p, 7); ++h)
                for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, p / 2})
                    EXPECT_EQ(count_I_brute(ctx, nu, h, k).value, oracle::count_I(p, nu, h, k));
    }
}

TEST(CountI, SpectralIdentityGrid) {
    for (std::int64_t p : {5, 7, 11, 13, 31}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        for (int nu = 1; nu <= 3; ++nu)
            for (std::int64_t h = 3; h <= std::min<std::int64_t>(8, p - 1); ++h)
                for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, p / 2}) {
                    const CountResult s = count_I_spectral(ctx, nu, h, k);
                    EXPECT_EQ(s.value, count_I_brute(ctx, nu, h, k).value);
                    EXPECT_LT(s.residual, 0.4);
                }
    }
}

TEST(CountI, Properties) {
    const PrimeContext ctx = build_context(31);
    for (int nu = 1; nu <= 3; ++nu) {
        for (std::int64_t k : {0, 5, 30}) {
            std::uint64_t prev = 0;
            for (std::int64_t h = 1; h <= 12; ++h) {
                const std::uint64_t v = count_I_brute(ctx, nu, h, k).value;
                std::int64_t delta = 0;
                for (std::int64_t x = 1; x <= h; ++x) delta += (x + k) % 31 == 0;
                EXPECT_GE(v, prev);
                EXPECT_GE(static_cast<double>(v), std::pow(static_cast<double>(h - delta), nu));
                prev = v;
            }
        }
    }
}

TEST(CountJ, Examples) {
    const PrimeContext p7 = build_context(7);
    EXPECT_EQ(count_J_brute(p7, CountSpec{1, {3}, {0}, ExponentVector{2}}).value, 3u);
    // Cubes over 1..6 mod 7 split 3/3 between 1 and 6, hence 3² + 3².
    EXPECT_EQ(count_J_brute(p7, CountSpec{1, {6}, {0}, ExponentVector{3}}).value, 18u);
    EXPECT_EQ(count_J_brute(p7, CountSpec{2, {3, 3}, {0, 0}, ExponentVector{1, -1}}).value, 19u);
    EXPECT_EQ(count_J_brute(build_context(11), CountSpec{2, {4, 5}, {1, 0}, ExponentVector{2, -3}}).value, 56u);
}

TEST(CountJ, SpecializesToI) {
    for (std::int64_t p : {7, 13}) {
        const PrimeContext ctx = build_context(static_cast<std::uint64_t>(p));
        for (std::int64_t h = 2; h <= 5; ++h) {
            CountSpec spec{3, {h, h, h}, {2, 2, 2}, ExponentVector::ones(3, 1)};
            EXPECT_EQ(count_J_brute(ctx, spec).value, count_I_brute(ctx, 3, h, 2).value);
        }
    }
}

TEST(CountJ, MatchesOracleOnRectangles) {
    const PrimeContext ctx = build_context(13);
    for (std::int64_t e1 : {-3, -1, 2})
        for (std::int64_t e2 : {-2, 1, 3})
            for (std::int64_t h1 : {2, 5})
                for (std::int64_t h2 : {3, 4}) {
                    CountSpec spec{2, {h1, h2}, {1, 7}, ExponentVector{e1, e2}};
                    EXPECT_EQ(count_J_brute(ctx, spec).value, oracle::count_J(13, {e1, e2}, {h1, h2}, {1, 7}));
                }
}

TEST(CountSpec, Validation) {
    const PrimeContext ctx = build_context(7);
    EXPECT_THROW(count_J_brute(ctx, CountSpec{2, {3}, {0, 0}, ExponentVector{1, 1}}), Error);
    EXPECT_THROW(count_J_brute(ctx, CountSpec{1, {7}, {0}, ExponentVector{1}}), Error);
    EXPECT_THROW(count_J_brute(ctx, CountSpec{1, {3}, {0}, std::nullopt}), Error);
    EXPECT_THROW(count_I_brute(ctx, 0, 3, 0), Error);
}

TEST(Lemma3, Examples) {
    const PrimeContext p7 = build_context(7);
    const Lemma3Report ones = lemma3_check(p7, CountSpec{2, {3, 3}, {0, 0}, ExponentVector{1, 1}});
    EXPECT_TRUE(ones.holds_plain);
    EXPECT_TRUE(ones.holds_gcd);
    EXPECT_NEAR(ones.rhs_plain, 19.0, 1e-9);

    const Lemma3Report mixed = lemma3_check(p7, CountSpec{2, {3, 3}, {0, 0}, ExponentVector{1, -1}});
    EXPECT_EQ(mixed.lhs, 19u);
    EXPECT_TRUE(mixed.holds_gcd);

    const Lemma3Report cubes = lemma3_check(p7, CountSpec{2, {3, 4}, {0, 1}, ExponentVector{3, 3}});
    EXPECT_GE(cubes.rhs_gcd, 3.0 * cubes.rhs_plain * (1.0 - 1e-12));
    EXPECT_TRUE(cubes.holds_gcd);
}

TEST(Lemma3, GcdFormExhaustive) {
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        const PrimeContext ctx = build_context(p);
        for (std::int64_t e1 = -3; e1 <= 3; ++e1)
            for (std::int64_t e2 = -3; e2 <= 3; ++e2) {
                if (e1 == 0 || e2 == 0) continue;
                for (std::int64_t h1 = 3; h1 <= 5; ++h1)
                    for (std::int64_t h2 = 3; h2 <= 5; ++h2) {
                        if (static_cast<std::uint64_t>(std::max(h1, h2)) >= p) continue;
                        for (std::int64_t k1 : {0, 1})
                            for (std::int64_t k2 : {0, 1}) {
                                const auto r = lemma3_check(ctx, CountSpec{2, {h1, h2}, {k1, k2}, ExponentVector{e1, e2}});
                                EXPECT_TRUE(r.holds_gcd) << p << ' ' << e1 << ' ' << e2 << ' ' << h1 << ' ' << h2;
                            }
                    }
            }
    }
}

TEST(Lemma3, PlainFormCanFail) {
    // J = 23 exceeds I(3,0)^{1/2} I(3,0)^{1/2} = 21 at p = 5.
    const auto r = lemma3_check(build_context(5), CountSpec{2, {3, 3}, {0, 0}, ExponentVector{-3, -2}});
    EXPECT_EQ(r.lhs, 23u);
    EXPECT_NEAR(r.rhs_plain, 21.0, 1e-9);
    EXPECT_FALSE(r.holds_plain);
    EXPECT_TRUE(r.holds_gcd);
}
