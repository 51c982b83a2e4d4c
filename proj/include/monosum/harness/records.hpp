#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace monosum::harness {

/// One sweep trial. Column order is the CSV schema; eval_ns is the only
/// nondeterministic column and always comes last.
struct RatioRecord {
    std::uint64_t p = 0;
    int n = 0;
    std::int64_t h = 0;
    std::vector<std::int64_t> e;
    std::vector<std::int64_t> k;
    std::int64_t lambda = 0;
    std::int64_t char_index = -1;  // -1 for additive sums
    double sum_re = 0.0;
    double sum_im = 0.0;
    double abs_sum = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    std::string branch;
    std::int64_t eval_ns = 0;
};

struct CellSummary {
    std::uint64_t p = 0;
    int n = 0;
    std::int64_t h = 0;
    std::size_t trials = 0;
    double max_ratio = 0.0;
    double mean_ratio = 0.0;
    std::string branch;
};

void write_records_csv(std::ostream& out, const std::vector<RatioRecord>& records);
void write_records_json(std::ostream& out, const std::vector<RatioRecord>& records,
                        const std::vector<CellSummary>& cells);
void write_cells_csv(std::ostream& out, const std::vector<CellSummary>& cells);

/// Seventeen significant digits, the text form used in every output file.
std::string format_double(double v);

}  // namespace monosum::harness
