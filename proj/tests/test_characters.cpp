#include <gtest/gtest.h>

#include <random>

#include "monosum/characters.hpp"
#include "oracles.hpp"

using namespace monosum;

namespace {

std::vector<complex_t> unit_rho(std::int64_t h) { return std::vector<complex_t>(static_cast<std::size_t>(h), 1.0); }

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigInvalid;
}

}  // namespace

TEST(AdditiveChar, Examples) {
    const PrimeContext ctx = build_context(5);
    EXPECT_NEAR(std::abs(additive_char(ctx, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(additive_char(ctx, 5) - 1.0), 0.0, 1e-15);
    const complex_t z = additive_char(ctx, 1);
    EXPECT_NEAR(z.real(), 0.30901699437494745, 1e-12);
    EXPECT_NEAR(z.imag(), 0.95105651629515353, 1e-12);
    EXPECT_NEAR(std::abs(additive_char(ctx, -1) - std::conj(z)), 0.0, 1e-15);
}

TEST(AdditiveChar, TableMatchesOracle) {
    const PrimeContext ctx = build_context(31);
    const auto table = additive_char_table(ctx);
    ASSERT_EQ(table.size(), 31u);
    for (std::int64_t z = 0; z < 31; ++z) EXPECT_NEAR(std::abs(table[z] - oracle::e_p(z, 31)), 0.0, 1e-14);
}

TEST(MultChar, Examples) {
    const PrimeContext ctx = build_context(7);
    EXPECT_NEAR(std::abs(mult_char_eval(MultChar(ctx, 0), 4) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(mult_char_eval(MultChar(ctx, 3), 2) - 1.0), 0.0, 1e-12);
    EXPECT_EQ(mult_char_eval(MultChar(ctx, 1), 0), complex_t(0.0));
}

TEST(MultChar, QuadraticIsLegendre) {
    for (std::int64_t p : {7, 11, 13, 101}) {
        const MultChar chi(build_context(static_cast<std::uint64_t>(p)), (p - 1) / 2);
        for (std::int64_t x = 1; x < p; ++x) {
            const double legendre = oracle::power(x, (p - 1) / 2, p) == 1 ? 1.0 : -1.0;
            EXPECT_NEAR(std::abs(chi(x) - legendre), 0.0, 1e-12);
        }
    }
}

TEST(MultChar, AgreesWithOracleAndTable) {
    const PrimeContext ctx = build_context(13);
    for (std::int64_t a = 0; a < 12; ++a) {
        const MultChar chi(ctx, a);
        const CharacterTable table(chi);
        for (std::int64_t x = -13; x < 26; ++x) {
            EXPECT_NEAR(std::abs(chi(x) - oracle::chi(a, x, 13)), 0.0, 1e-12);
            EXPECT_NEAR(std::abs(table[oracle::mod(x, 13)] - chi(x)), 0.0, 1e-15);
        }
    }
}

TEST(CharPower, Examples) {
    const PrimeContext ctx = build_context(7);
    EXPECT_EQ(char_power(MultChar(ctx, 3), 2).index(), 0u);
    EXPECT_EQ(char_power(MultChar(ctx, 1), -1).index(), 5u);
    EXPECT_EQ(char_power(MultChar(ctx, 2), 2).index(), 4u);
}

TEST(CharPower, PowerOfValues) {
    const PrimeContext ctx = build_context(31);
    const MultChar chi(ctx, 7);
    for (std::int64_t e : {-4, -1, 2, 3}) {
        const MultChar pw = char_power(chi, e);
        for (std::int64_t x = 1; x < 31; ++x) EXPECT_NEAR(std::abs(pw(x) - std::pow(chi(x), static_cast<double>(e))), 0.0, 1e-10);
    }
}

TEST(Spectrum, Examples) {
    const PrimeContext ctx = build_context(5);
    ResidueDistribution point(ctx);
    point.values[0] = 1.0;
    for (const auto& v : additive_spectrum(point).values) EXPECT_NEAR(std::abs(v - 1.0), 0.0, 1e-14);

    ResidueDistribution uniform(ctx, std::vector<complex_t>(5, 1.0));
    const Spectrum s = additive_spectrum(uniform);
    EXPECT_NEAR(std::abs(s.values[0] - 5.0), 0.0, 1e-12);
    for (std::size_t w = 1; w < 5; ++w) EXPECT_NEAR(std::abs(s.values[w]), 0.0, 1e-12);

    ResidueDistribution one(ctx);
    one.values[1] = 1.0;
    const Spectrum t = additive_spectrum(one);
    for (std::int64_t w = 0; w < 5; ++w) EXPECT_NEAR(std::abs(t.values[w] - oracle::e_p(w, 5)), 0.0, 1e-14);
}

TEST(Spectrum, DistributionLengthChecked) {
    EXPECT_THROW(ResidueDistribution(build_context(5), std::vector<complex_t>(4)), Error);
}

TEST(Spectrum, FftMatchesDirectAcrossSizes) {
    std::mt19937_64 gen(3);
    std::normal_distribution<double> g;
    for (std::uint64_t p : {3ull, 5ull, 17ull, 101ull, 257ull, 1009ull, 4099ull}) {
        ResidueDistribution d(build_context(p));
        for (auto& v : d.values) v = {g(gen), g(gen)};
        const Spectrum a = additive_spectrum_direct(d), b = additive_spectrum_fft(d);
        double scale = 1.0, diff = 0.0;
        for (std::size_t w = 0; w < p; ++w) {
            scale = std::max(scale, std::abs(a.values[w]));
            diff = std::max(diff, std::abs(a.values[w] - b.values[w]));
        }
        EXPECT_LE(diff, 1e-9 * scale) << p;
    }
}

TEST(Spectrum, LargePrimeParseval) {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ResidueDistribution d(build_context(65537));
    for (auto& v : d.values) v = {u(gen), u(gen)};
    const Spectrum s = additive_spectrum(d);
    double lhs = 0.0;
    for (const auto& v : s.values) lhs += std::norm(v);
    EXPECT_NEAR(lhs / (65537.0 * d.energy()), 1.0, 1e-9);
}

TEST(CharIntervalSum, Examples) {
    const PrimeContext ctx = build_context(7);
    EXPECT_NEAR(std::abs(char_interval_sum(MultChar(ctx, 0), 0, 3, 1, 0, unit_rho(3)) - 3.0), 0.0, 1e-12);
    const std::vector<complex_t> zeros(4, 0.0);
    EXPECT_EQ(char_interval_sum(MultChar(ctx, 2), 0, 4, 1, 0, zeros), complex_t(0.0));
    EXPECT_NEAR(std::abs(char_interval_sum(MultChar(ctx, 3), 0, 6, 1, 0, unit_rho(6))), 0.0, 1e-12);
}

TEST(CharIntervalSum, TableOverloadAgrees) {
    const PrimeContext ctx = build_context(31);
    const MultChar chi(ctx, 4);
    const CharacterTable table(chi);
    for (std::int64_t u = 0; u < 31; ++u) {
        const complex_t a = char_interval_sum(chi, 17, 9, u, 5, unit_rho(9));
        const complex_t b = char_interval_sum(table, ctx, 17, 9, u, 5, unit_rho(9));
        EXPECT_NEAR(std::abs(a - b), 0.0, 1e-12);
    }
}

TEST(CharIntervalSum, RejectsBadInput) {
    const MultChar chi(build_context(7), 1);
    EXPECT_THROW(char_interval_sum(chi, 0, 7, 1, 0, unit_rho(7)), Error);
    EXPECT_THROW(char_interval_sum(chi, 0, 3, 1, 0, unit_rho(2)), Error);
}

TEST(CharMoment, Examples) {
    for (std::uint64_t p : {7ull, 11ull, 31ull}) {
        const MultChar chi(build_context(p), 1);
        EXPECT_NEAR(char_moment(chi, 4, 1, 3, unit_rho(1), 1), static_cast<double>(p - 2), 1e-9);
    }
    const MultChar chi(build_context(11), 3);
    EXPECT_EQ(char_moment(chi, 0, 3, 1, std::vector<complex_t>(3, 0.0), 2), 0.0);
}

TEST(CharMoment, FrozenValues) {
    // Brute force over u = 1..10 with independent Legendre and discrete-log oracles.
    const PrimeContext ctx = build_context(11);
    EXPECT_NEAR(char_moment(MultChar(ctx, 5), 0, 3, 1, unit_rho(3), 1), 23.0, 1e-9);
    EXPECT_NEAR(char_moment(MultChar(ctx, 1), 0, 3, 1, unit_rho(3), 1), 19.381966011250103, 1e-9);
}

TEST(CharMoment, HigherMomentAgainstOracle) {
    const std::int64_t p = 13;
    const PrimeContext ctx = build_context(p);
    for (std::int64_t a : {1, 4, 6}) {
        for (int r : {1, 2, 3}) {
            double expected = 0.0;
            for (std::int64_t u = 1; u < p; ++u) {
                oracle::cplx s = 0.0;
                for (std::int64_t x = 3; x <= 7; ++x) s += oracle::chi(a, u * x + 4, p);
                expected += std::pow(std::norm(s), r);
            }
            EXPECT_NEAR(char_moment(MultChar(ctx, a), 2, 5, 4, unit_rho(5), r), expected, 1e-9 * (1.0 + expected));
        }
    }
}

TEST(CharMoment, Errors) {
    const PrimeContext ctx = build_context(11);
    EXPECT_EQ(code_of([&] { char_moment(MultChar(ctx, 0), 0, 3, 1, unit_rho(3), 1); }), ErrorCode::PrincipalCharacter);
    EXPECT_EQ(code_of([&] { char_moment(MultChar(ctx, 1), 0, 3, 22, unit_rho(3), 1); }), ErrorCode::LambdaDivisible);
    EXPECT_EQ(code_of([&] { char_moment(MultChar(ctx, 1), 0, 3, 1, unit_rho(3), 0); }), ErrorCode::MomentOrderTooSmall);
}

TEST(Characters, OrthogonalityOverCharacters) {
    const PrimeContext ctx = build_context(13);
    for (std::int64_t x = 1; x < 13; ++x) {
        complex_t sum = 0.0;
        for (std::int64_t a = 0; a < 12; ++a) sum += MultChar(ctx, a)(x);
        EXPECT_NEAR(std::abs(sum - (x == 1 ? 12.0 : 0.0)), 0.0, 1e-10);
    }
    for (std::int64_t a = 1; a < 12; ++a) {
        complex_t sum = 0.0;
        for (std::int64_t x = 1; x < 13; ++x) sum += MultChar(ctx, a)(x);
        EXPECT_NEAR(std::abs(sum), 0.0, 1e-10);
    }
}
