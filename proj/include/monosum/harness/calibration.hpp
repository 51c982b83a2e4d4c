#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "monosum/harness/config.hpp"

namespace monosum::harness {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct CalibrationEntry {
    std::string target;  // T1..T6, L1, L2, L4
    int n = 0;
    int nu = 0;          // ν for counts, r for moments, 0 otherwise
    double max_ratio = 0.0;
    std::string grid;
    std::uint64_t seed = 0;
    std::string version = kArtifactVersion;

    friend bool operator==(const CalibrationEntry&, const CalibrationEntry&) = default;
};

/// Append-only store of observed maximum ratios, one whitespace-separated
/// entry per line. Lookups take the maximum over every entry for a key.
class CalibrationStore {
public:
    /// A missing file yields an empty store.
    static CalibrationStore load(const std::string& path);
    void save(const std::string& path) const;

    /// Returns false (and stores nothing) if an identical entry exists.
    bool append(const CalibrationEntry& entry);

    std::optional<double> max_ratio(std::string_view target, int n, int nu) const;
    const std::vector<CalibrationEntry>& entries() const noexcept { return entries_; }

    std::string serialize() const;
    static CalibrationStore parse(const std::string& text);

private:
    std::vector<CalibrationEntry> entries_;
};

}  // namespace monosum::harness
