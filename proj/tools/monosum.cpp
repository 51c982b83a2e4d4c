// Command-line front end: verify, sweep, prime-sweep, calibrate, sum, count.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monosum/characters.hpp"
#include "monosum/counts.hpp"
#include "monosum/error.hpp"
#include "monosum/harness/calibration.hpp"
#include "monosum/harness/config.hpp"
#include "monosum/harness/experiments.hpp"
#include "monosum/harness/records.hpp"
#include "monosum/harness/verify.hpp"
#include "monosum/modular.hpp"
#include "monosum/sums.hpp"

using namespace monosum;
using namespace monosum::harness;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kConfigError = 2;
constexpr int kInternalError = 3;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::optional<int> threads;
    std::string calibration;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "Configuration file");
    app->add_option("--seed", c.seed, "Random seed");
    app->add_option("--out", c.out, "Output path (stdout when omitted)");
    app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
    app->add_option("--calibration", c.calibration, "Calibration store");
}

ExperimentConfig resolve(const Common& c, ExperimentConfig fallback) {
    ExperimentConfig cfg = c.config.empty() ? std::move(fallback) : load_config(c.config);
    if (c.seed) cfg.seed = c.seed;
    if (!c.out.empty()) cfg.out = c.out;
    if (c.format == "json") cfg.format = OutputFormat::Json;
    if (c.format == "csv") cfg.format = OutputFormat::Csv;
    if (c.threads) cfg.threads = *c.threads;
    if (!c.calibration.empty()) cfg.calibration = c.calibration;
    return cfg;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::ConfigInvalid, "cannot write " + path);
    file << text;
}

std::vector<std::vector<complex_t>> read_weights_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read weights file " + path);
    std::vector<std::vector<complex_t>> tables;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<complex_t> row;
        std::string entry;
        while (fields >> entry) {
            const auto colon = entry.find(':');
            try {
                const double re = std::stod(entry.substr(0, colon));
                const double im = colon == std::string::npos ? 0.0 : std::stod(entry.substr(colon + 1));
                row.emplace_back(re, im);
            } catch (const std::exception&) {
                throw Error(ErrorCode::InvalidWeights, "bad weight entry '" + entry + "'");
            }
        }
        if (!row.empty()) tables.push_back(std::move(row));
    }
    return tables;
}

struct SumArgs {
    std::uint64_t p = 0;
    int n = 0;
    std::int64_t h = 0;
    std::vector<std::int64_t> e;
    std::vector<std::int64_t> k;
    std::int64_t lambda = 1;
    std::optional<std::int64_t> char_index;
    std::string weights = "unit";
    std::vector<std::int64_t> phase;
    std::string weights_file;
    std::string kind = "S";
    std::string method = "naive";
    std::string format = "text";
};

int run_sum(const SumArgs& a) {
    const PrimeContext ctx = build_context(a.p);
    const auto n = static_cast<std::size_t>(a.n);
    std::vector<std::int64_t> k = a.k.empty() ? std::vector<std::int64_t>(n, 0) : a.k;
    const Box box(k, a.h);

    SumResult result;
    if (a.kind == "K") {
        std::vector<std::int64_t> phase = a.phase.empty() ? std::vector<std::int64_t>(n, 0) : a.phase;
        result = sum_K(ctx, box, a.lambda, phase, a.method == "bilinear" ? SumMethod::Bilinear : SumMethod::Naive);
    } else {
        std::vector<std::int64_t> e = a.e.empty() ? std::vector<std::int64_t>(n, 1) : a.e;
        WeightSystem weights = WeightSystem::unit(n);
        if (a.weights == "phase") weights = WeightSystem::additive_phase(a.phase);
        else if (a.weights == "file") weights = WeightSystem::table(read_weights_file(a.weights_file));
        const SumSpec spec(ctx, box, ExponentVector(e), weights, a.lambda);
        if (a.kind == "S") {
            if (a.method == "bilinear") result = sum_S_bilinear(spec);
            else if (a.method == "naive") result = sum_S_naive(spec);
            else throw Error(ErrorCode::ConfigInvalid, "method " + a.method + " does not apply to S");
        } else {
            if (!a.char_index) throw Error(ErrorCode::ConfigInvalid, "--char-index is required for T");
            const MultChar chi(ctx, *a.char_index);
            if (a.method == "eta") result = sum_T_eta(spec, chi);
            else if (a.method == "naive") result = sum_T_naive(spec, chi);
            else throw Error(ErrorCode::ConfigInvalid, "method " + a.method + " does not apply to T");
        }
    }

    if (a.format == "json") {
        nlohmann::ordered_json doc{{"kind", a.kind},
                                   {"p", a.p},
                                   {"re", result.value.real()},
                                   {"im", result.value.imag()},
                                   {"abs", std::abs(result.value)},
                                   {"terms", result.terms},
                                   {"method", std::string(to_string(result.method))}};
        std::cout << doc.dump(2) << '\n';
    } else {
        std::cout << "re " << format_double(result.value.real()) << "\nim " << format_double(result.value.imag())
                  << "\nabs " << format_double(std::abs(result.value)) << "\nterms " << result.terms << "\nmethod "
                  << to_string(result.method) << '\n';
    }
    return kOk;
}

struct CountArgs {
    std::uint64_t p = 0;
    int nu = 1;
    std::vector<std::int64_t> h;
    std::vector<std::int64_t> k;
    std::vector<std::int64_t> e;
    std::string method = "brute";
};

int run_count(const CountArgs& a) {
    const PrimeContext ctx = build_context(a.p);
    if (a.e.empty()) {
        if (a.h.size() != 1 || a.k.size() > 1)
            throw Error(ErrorCode::ConfigInvalid, "I takes a single --h and at most one --k");
        const std::int64_t k = a.k.empty() ? 0 : a.k[0];
        const CountResult r = a.method == "spectral" ? count_I_spectral(ctx, a.nu, a.h[0], k)
                                                     : count_I_brute(ctx, a.nu, a.h[0], k);
        std::cout << "I " << r.value << "\nmethod " << to_string(r.method);
        if (r.method == CountMethod::Spectral) std::cout << "\nresidual " << format_double(r.residual);
        std::cout << '\n';
        return kOk;
    }
    const auto nu = static_cast<std::size_t>(a.nu);
    CountSpec spec;
    spec.nu = a.nu;
    spec.h = a.h.size() == 1 ? std::vector<std::int64_t>(nu, a.h[0]) : a.h;
    spec.k = a.k.empty() ? std::vector<std::int64_t>(nu, 0) : (a.k.size() == 1 ? std::vector<std::int64_t>(nu, a.k[0]) : a.k);
    spec.e = ExponentVector(a.e);
    const Lemma3Report rep = lemma3_check(ctx, spec);
    std::cout << "J " << rep.lhs << "\nI";
    for (auto v : rep.i_counts) std::cout << ' ' << v;
    std::cout << "\nrhs_gcd " << format_double(rep.rhs_gcd) << (rep.holds_gcd ? " holds" : " violated")
              << "\nrhs_plain " << format_double(rep.rhs_plain) << (rep.holds_plain ? " holds" : " violated") << '\n';
    return kOk;
}

int run_verify_cmd(const Common& c) {
    ExperimentConfig cfg = resolve(c, default_verify_config());
    const VerifyReport report = run_verify(cfg);
    emit(cfg.out, cfg.format == OutputFormat::Json ? report.to_json() : report.to_text());
    return report.ok() ? kOk : kPropertyFailure;
}

int run_sweep_cmd(const Common& c) {
    if (c.config.empty()) throw Error(ErrorCode::ConfigInvalid, "sweep needs --config");
    ExperimentConfig cfg = resolve(c, {});
    const SweepResult result = run_sweep(cfg);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::ostringstream text;
    if (cfg.format == OutputFormat::Json) write_records_json(text, result.records, result.cells);
    else write_records_csv(text, result.records);
    emit(cfg.out, text.str());
    if (!cfg.out.empty() && cfg.format == OutputFormat::Csv) {
        std::ostringstream cells;
        write_cells_csv(cells, result.cells);
        emit(cfg.out + ".cells.csv", cells.str());
    }
    return kOk;
}

int run_prime_sweep_cmd(const Common& c) {
    ExperimentConfig fallback;
    fallback.prime_range = std::pair<std::uint64_t, std::uint64_t>{3, 2000};
    ExperimentConfig cfg = resolve(c, fallback);
    const PrimeSweepReport report = run_prime_sweep(cfg);
    emit(cfg.out, cfg.format == OutputFormat::Json ? report.to_json() : report.to_text());
    return kOk;
}

int run_calibrate_cmd(const Common& c) {
    if (c.config.empty()) throw Error(ErrorCode::ConfigInvalid, "calibrate needs --config");
    ExperimentConfig cfg = resolve(c, {});
    if (cfg.calibration.empty()) throw Error(ErrorCode::ConfigInvalid, "calibrate needs a calibration store path");
    CalibrationStore store = CalibrationStore::load(cfg.calibration);
    const CalibrationUpdate update = run_calibrate(cfg, store);
    store.save(cfg.calibration);
    for (const auto& e : update.computed)
        std::cout << e.target << " n=" << e.n << " nu=" << e.nu << " max_ratio=" << format_double(e.max_ratio) << '\n';
    std::cout << "appended " << update.appended << " of " << update.computed.size() << " entries\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiple exponential and character sums with monomials modulo a prime"};
    app.require_subcommand(1);

    Common verify_opts, sweep_opts, prime_opts, calib_opts;
    add_common(app.add_subcommand("verify", "Run the invariant suite"), verify_opts);
    add_common(app.add_subcommand("sweep", "Ratio sweep against a theorem bound"), sweep_opts);
    add_common(app.add_subcommand("prime-sweep", "Product counts across a prime range"), prime_opts);
    add_common(app.add_subcommand("calibrate", "Record maximal observed ratios"), calib_opts);

    SumArgs sum;
    auto* sum_cmd = app.add_subcommand("sum", "Evaluate one S, K or T sum");
    sum_cmd->set_help_flag("--help", "Print this help message and exit");
    sum_cmd->add_option("--p", sum.p, "Odd prime")->required();
    sum_cmd->add_option("--n", sum.n, "Dimension")->required()->check(CLI::PositiveNumber);
    sum_cmd->add_option("--h", sum.h, "Side length")->required();
    sum_cmd->add_option("--e", sum.e, "Exponents")->delimiter(',');
    sum_cmd->add_option("--k", sum.k, "Box corner")->delimiter(',');
    sum_cmd->add_option("--lambda", sum.lambda, "Coefficient");
    sum_cmd->add_option("--char-index", sum.char_index, "Character index a in chi(x) = exp(2 pi i a ind x/(p-1))");
    sum_cmd->add_option("--weights", sum.weights, "unit, phase or file")->check(CLI::IsMember({"unit", "phase", "file"}));
    sum_cmd->add_option("--phase", sum.phase, "Phase frequencies (also K parameters)")->delimiter(',');
    sum_cmd->add_option("--weights-file", sum.weights_file, "One line per coordinate of re[:im] entries");
    sum_cmd->add_option("--kind", sum.kind, "S, K or T")->check(CLI::IsMember({"S", "K", "T"}));
    sum_cmd->add_option("--method", sum.method, "naive, bilinear or eta")
        ->check(CLI::IsMember({"naive", "bilinear", "eta"}));
    sum_cmd->add_option("--format", sum.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    CountArgs count;
    auto* count_cmd = app.add_subcommand("count", "Product-congruence counts I and J");
    count_cmd->set_help_flag("--help", "Print this help message and exit");
    count_cmd->add_option("--p", count.p, "Odd prime")->required();
    count_cmd->add_option("--nu", count.nu, "Tuple length")->required()->check(CLI::PositiveNumber);
    count_cmd->add_option("--h", count.h, "Side length(s)")->required()->delimiter(',');
    count_cmd->add_option("--k", count.k, "Shift(s)")->delimiter(',');
    count_cmd->add_option("--e", count.e, "Exponents; selects J with the product-form report")->delimiter(',');
    count_cmd->add_option("--method", count.method, "brute or spectral")->check(CLI::IsMember({"brute", "spectral"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (app.got_subcommand("verify")) return run_verify_cmd(verify_opts);
        if (app.got_subcommand("sweep")) return run_sweep_cmd(sweep_opts);
        if (app.got_subcommand("prime-sweep")) return run_prime_sweep_cmd(prime_opts);
        if (app.got_subcommand("calibrate")) return run_calibrate_cmd(calib_opts);
        if (app.got_subcommand("sum")) return run_sum(sum);
        if (app.got_subcommand("count")) return run_count(count);
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return err.code() == ErrorCode::VerifyNotGreen ? kPropertyFailure : kConfigError;
    } catch (const std::logic_error& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return kInternalError;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << '\n';
        return kInternalError;
    }
    return kInternalError;
}
