#include "monosum/harness/calibration.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "monosum/error.hpp"

namespace monosum::harness {

std::string CalibrationStore::serialize() const {
    std::ostringstream out;
    out << "# target n nu max_ratio grid seed version\n";
    out << std::setprecision(17);
    for (const auto& e : entries_)
        out << e.target << ' ' << e.n << ' ' << e.nu << ' ' << e.max_ratio << ' ' << e.grid << ' ' << e.seed << ' '
            << e.version << '\n';
    return out.str();
}

CalibrationStore CalibrationStore::parse(const std::string& text) {
    CalibrationStore store;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        CalibrationEntry e;
        if (!(fields >> e.target >> e.n >> e.nu >> e.max_ratio >> e.grid >> e.seed >> e.version))
            throw Error(ErrorCode::ConfigInvalid, "malformed calibration line: " + line);
        store.entries_.push_back(std::move(e));
    }
    return store;
}

CalibrationStore CalibrationStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void CalibrationStore::save(const std::string& path) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorCode::ConfigInvalid, "cannot write calibration file '" + path + "'");
    out << serialize();
}

bool CalibrationStore::append(const CalibrationEntry& entry) {
    if (std::find(entries_.begin(), entries_.end(), entry) != entries_.end()) return false;
    entries_.push_back(entry);
    return true;
}

std::optional<double> CalibrationStore::max_ratio(std::string_view target, int n, int nu) const {
    std::optional<double> best;
    for (const auto& e : entries_)
        if (e.target == target && e.n == n && e.nu == nu) best = std::max(best.value_or(e.max_ratio), e.max_ratio);
    return best;
}

}  // namespace monosum::harness
