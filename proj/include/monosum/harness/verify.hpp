#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "monosum/harness/config.hpp"

namespace monosum::harness {

struct PropertyReport {
    std::string name;
    /// Report-only properties never fail the suite.
    bool hard = true;
    std::size_t instances = 0;
    std::size_t failures = 0;
    double max_residual = 0.0;
    std::string note;
};

struct VerifyReport {
    std::vector<PropertyReport> properties;
    /// Logged observations that are not failures (e.g. counterexamples to the
    /// gcd-free product inequality).
    std::vector<std::string> findings;

    bool ok() const noexcept;
    std::string to_text() const;
    std::string to_json() const;
};

/// Every property the suite must report; a missing one is a failure.
const std::vector<std::string>& required_properties();

/// Runs the invariant suite over the configured grid. Throws ConfigInvalid
/// for an empty prime list.
VerifyReport run_verify(const ExperimentConfig& cfg);

}  // namespace monosum::harness
