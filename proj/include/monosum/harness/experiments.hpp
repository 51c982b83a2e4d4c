#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monosum/characters.hpp"
#include "monosum/harness/calibration.hpp"
#include "monosum/harness/config.hpp"
#include "monosum/harness/records.hpp"
#include "monosum/harness/rng.hpp"
#include "monosum/sums.hpp"

namespace monosum::harness {

/// A randomly drawn sum instance; chi is set for character-sum targets.
struct Instance {
    SumSpec spec;
    std::optional<MultChar> chi;
};

struct DrawOptions {
    WeightKind weights = WeightKind::Mixed;
    LambdaPolicy lambda_policy = LambdaPolicy::RandomCoprime;
    std::int64_t lambda = 1;
    /// Cycled by trial index when nonempty; otherwise e_j ∈ {-2,-1,1,2}.
    std::vector<std::vector<std::int64_t>> exponents;
    std::optional<std::int64_t> char_index;
    bool character = false;
};

DrawOptions draw_options(const ExperimentConfig& cfg, bool character);

/// Trial 0 uses the origin box k = 0; later trials draw corners uniformly.
Instance draw_instance(const PrimeContext& ctx, int n, std::int64_t h, std::uint64_t trial, Rng& rng,
                       const DrawOptions& options);

/// h^n ≥ |value| re-check applied to every emitted record.
void check_trivial_bound(const SumResult& result, int n, std::int64_t h);

/// Side lengths of a sweep cell: the explicit list, or the integers from
/// ⌊p^{α-w}⌋ to ⌈p^{α+w}⌉ around the nontriviality exponent α. Always h < p.
std::vector<std::int64_t> cell_side_lengths(const ExperimentConfig& cfg, Theorem theorem, int n, std::uint64_t p);

struct SweepResult {
    std::vector<RatioRecord> records;
    std::vector<CellSummary> cells;
    std::vector<std::string> warnings;
};

SweepResult run_sweep(const ExperimentConfig& cfg);

struct PrimeSweepRow {
    std::uint64_t p = 0;
    std::uint64_t count = 0;
    double majorant = 0.0;
    double ratio = 0.0;
};

struct ViolationRow {
    double constant = 0.0;
    double overall_fraction = 0.0;
    /// (T, fraction of primes in (T/2, T] exceeding the constant).
    std::vector<std::pair<std::uint64_t, double>> windows;
};

struct PrimeSweepReport {
    int nu = 2;
    std::int64_t h = 6;
    std::int64_t k = 0;
    std::uint64_t seed = 0;
    double base_constant = 1.0;
    std::vector<PrimeSweepRow> rows;
    std::vector<ViolationRow> ladder;

    std::string to_text() const;
    std::string to_json() const;
};

PrimeSweepReport run_prime_sweep(const ExperimentConfig& cfg);

struct CalibrationUpdate {
    std::vector<CalibrationEntry> computed;
    std::size_t appended = 0;
};

/// Records the maximum observed ratio per (target, n, ν) into the store.
/// Throws VerifyNotGreen when the pre-flight verify suite fails.
CalibrationUpdate run_calibrate(const ExperimentConfig& cfg, CalibrationStore& store);

/// Ratio samples that feed a calibration without touching a store; used by
/// the acceptance regressions to replay a grid under another seed.
std::vector<CalibrationEntry> measure_max_ratios(const ExperimentConfig& cfg);

std::string grid_descriptor(const ExperimentConfig& cfg);

}  // namespace monosum::harness
