#include "monosum/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "monosum/error.hpp"
#include "monosum/modular.hpp"

namespace monosum::harness {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); }

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    T value{};
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end || text.empty())
        invalid("bad value '" + std::string(text) + "' for key '" + std::string(key) + "'");
    return value;
}

double parse_double(std::string_view key, std::string_view text) {
    const std::string s(trim(text));
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        invalid("bad value '" + s + "' for key '" + std::string(key) + "'");
    }
}

std::vector<std::int64_t> parse_int_list(std::string_view key, std::string_view text) {
    std::vector<std::int64_t> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        out.push_back(parse_number<std::int64_t>(key, piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    invalid("bad boolean '" + std::string(v) + "' for key '" + std::string(key) + "'");
}

Mode parse_mode(std::string_view v) {
    if (v == "verify") return Mode::Verify;
    if (v == "sweep") return Mode::Sweep;
    if (v == "calibrate") return Mode::Calibrate;
    if (v == "prime-sweep") return Mode::PrimeSweep;
    if (v == "count") return Mode::Count;
    if (v == "sum") return Mode::Sum;
    invalid("unknown mode '" + std::string(v) + "'");
}

WeightKind parse_weights(std::string_view v) {
    if (v == "unit") return WeightKind::Unit;
    if (v == "phase") return WeightKind::Phase;
    if (v == "table") return WeightKind::Table;
    if (v == "mixed") return WeightKind::Mixed;
    invalid("unknown weight kind '" + std::string(v) + "'");
}

}  // namespace

std::string_view to_string(Target t) noexcept {
    switch (t) {
        case Target::T1: return "T1";
        case Target::T2: return "T2";
        case Target::T3: return "T3";
        case Target::T4: return "T4";
        case Target::T5: return "T5";
        case Target::T6: return "T6";
        case Target::Lemma1: return "L1";
        case Target::Lemma2: return "L2";
        case Target::Lemma4: return "L4";
    }
    return "?";
}

Target parse_target(std::string_view s) {
    for (Target t : {Target::T1, Target::T2, Target::T3, Target::T4, Target::T5, Target::T6, Target::Lemma1,
                     Target::Lemma2, Target::Lemma4})
        if (s == to_string(t)) return t;
    invalid("unknown theorem selector '" + std::string(s) + "'");
}

std::optional<Theorem> as_theorem(Target t) noexcept {
    switch (t) {
        case Target::T1: return Theorem::T1;
        case Target::T2: return Theorem::T2;
        case Target::T3: return Theorem::T3;
        case Target::T4: return Theorem::T4;
        case Target::T5: return Theorem::T5;
        case Target::T6: return Theorem::T6;
        default: return std::nullopt;
    }
}

std::string_view to_string(WeightKind w) noexcept {
    switch (w) {
        case WeightKind::Unit: return "unit";
        case WeightKind::Phase: return "phase";
        case WeightKind::Table: return "table";
        case WeightKind::Mixed: return "mixed";
    }
    return "?";
}

std::vector<std::uint64_t> ExperimentConfig::resolved_primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : primes) {
        if (!is_prime(p) || p < 3) invalid(std::to_string(p) + " is not an odd prime");
        out.push_back(p);
    }
    if (prime_range) {
        for (std::uint64_t p = std::max<std::uint64_t>(prime_range->first, 3); p <= prime_range->second; ++p)
            if (is_prime(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t ExperimentConfig::seed_or_throw() const {
    if (!seed) invalid("a seed is required for randomized modes");
    return *seed;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) invalid("line " + std::to_string(line_no) + ": expected key = value");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "mode") cfg.mode = parse_mode(value);
        else if (key == "prime") cfg.primes.push_back(parse_number<std::uint64_t>(key, value));
        else if (key == "prime_range") {
            const auto v = parse_int_list(key, value);
            if (v.size() != 2 || v[0] < 0 || v[1] < v[0]) invalid("prime_range needs lo,hi with lo <= hi");
            cfg.prime_range = {static_cast<std::uint64_t>(v[0]), static_cast<std::uint64_t>(v[1])};
        } else if (key == "n") cfg.n.push_back(parse_number<int>(key, value));
        else if (key == "h") cfg.h.push_back(parse_number<std::int64_t>(key, value));
        else if (key == "h_window") cfg.h_window = parse_double(key, value);
        else if (key == "e") cfg.exponents.push_back(parse_int_list(key, value));
        else if (key == "weights") cfg.weights = parse_weights(value);
        else if (key == "lambda_policy") {
            if (value == "fixed") cfg.lambda_policy = LambdaPolicy::Fixed;
            else if (value == "random-coprime") cfg.lambda_policy = LambdaPolicy::RandomCoprime;
            else invalid("unknown lambda policy '" + std::string(value) + "'");
        } else if (key == "lambda") cfg.lambda = parse_number<std::int64_t>(key, value);
        else if (key == "trials") cfg.trials = parse_number<int>(key, value);
        else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
        else if (key == "theorem") cfg.target = parse_target(value);
        else if (key == "nu") cfg.nu.push_back(parse_number<int>(key, value));
        else if (key == "k") cfg.k.push_back(parse_number<std::int64_t>(key, value));
        else if (key == "r") cfg.r.push_back(parse_number<int>(key, value));
        else if (key == "char_index") cfg.char_index = parse_number<std::int64_t>(key, value);
        else if (key == "out") cfg.out = std::string(value);
        else if (key == "format") {
            if (value == "csv") cfg.format = OutputFormat::Csv;
            else if (value == "json") cfg.format = OutputFormat::Json;
            else invalid("unknown format '" + std::string(value) + "'");
        } else if (key == "threads") cfg.threads = parse_number<int>(key, value);
        else if (key == "calibration") cfg.calibration = std::string(value);
        else if (key == "inject_fault") {
            if (value == "none") cfg.fault = Fault::None;
            else if (value == "spectrum") cfg.fault = Fault::Spectrum;
            else invalid("unknown fault '" + std::string(value) + "'");
        } else if (key == "ladder") cfg.ladder.push_back(parse_double(key, value));
        else if (key == "require_verify") cfg.require_verify = parse_bool(key, value);
        else invalid("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    if (cfg.trials < 0) invalid("trials must be nonnegative");
    if (cfg.threads < 1) invalid("threads must be at least 1");
    for (int n : cfg.n)
        if (n < 1) invalid("n must be at least 1");
    for (std::int64_t h : cfg.h)
        if (h < 1) invalid("h must be at least 1");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) invalid("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ExperimentConfig default_verify_config() {
    ExperimentConfig cfg;
    cfg.mode = Mode::Verify;
    cfg.primes = {5, 7, 11, 13, 31, 101};
    cfg.n = {2, 3, 4};
    cfg.h = {1, 2, 3, 4, 5, 6, 7, 8};
    cfg.trials = 20;
    cfg.seed = 0;
    return cfg;
}

}  // namespace monosum::harness
