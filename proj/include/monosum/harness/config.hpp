#pragma once

/**
 * @file config.hpp
 * @brief Experiment configuration.
 *
 * Line-oriented `key = value` text. Repeating a key appends to a list, `#`
 * starts a comment, keys are case-sensitive and unknown keys are errors.
 *
 *   mode = sweep
 *   theorem = T1
 *   prime = 101
 *   prime = 1009
 *   n = 4
 *   h_window = 0.05
 *   trials = 50
 *   seed = 0
 */

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monosum/bounds.hpp"

namespace monosum::harness {

enum class Mode { Verify, Sweep, Calibrate, PrimeSweep, Count, Sum };
enum class WeightKind { Unit, Phase, Table, Mixed };
enum class LambdaPolicy { Fixed, RandomCoprime };
enum class OutputFormat { Csv, Json };
enum class Fault { None, Spectrum };

/// What a sweep or calibration measures: one of the theorem bounds, or the
/// counting / moment lemmas (Lemma1, Lemma2 product counts; Lemma4 moments).
enum class Target { T1, T2, T3, T4, T5, T6, Lemma1, Lemma2, Lemma4 };

std::string_view to_string(Target t) noexcept;
Target parse_target(std::string_view s);
std::optional<Theorem> as_theorem(Target t) noexcept;

std::string_view to_string(WeightKind w) noexcept;

struct ExperimentConfig {
    std::optional<Mode> mode;
    std::vector<std::uint64_t> primes;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> prime_range;
    std::vector<int> n;
    std::vector<std::int64_t> h;
    std::optional<double> h_window;
    std::vector<std::vector<std::int64_t>> exponents;
    WeightKind weights = WeightKind::Mixed;
    LambdaPolicy lambda_policy = LambdaPolicy::RandomCoprime;
    std::int64_t lambda = 1;
    int trials = 20;
    std::optional<std::uint64_t> seed;
    std::optional<Target> target;
    std::vector<int> nu;
    std::vector<std::int64_t> k;
    std::vector<int> r;
    std::optional<std::int64_t> char_index;
    std::string out;
    OutputFormat format = OutputFormat::Csv;
    int threads = 1;
    std::string calibration;
    Fault fault = Fault::None;
    std::vector<double> ladder;
    bool require_verify = true;

    /// Explicit primes followed by every prime of prime_range, deduplicated
    /// and sorted. Throws ConfigInvalid for a listed non-prime.
    std::vector<std::uint64_t> resolved_primes() const;
    std::uint64_t seed_or_throw() const;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// The grid the verify suite uses when no configuration is given:
/// p ≤ 101, n ≤ 4, h ≤ 8, 20 seeds.
ExperimentConfig default_verify_config();

}  // namespace monosum::harness
