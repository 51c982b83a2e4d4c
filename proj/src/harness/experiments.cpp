#include "monosum/harness/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "monosum/bounds.hpp"
#include "monosum/counts.hpp"
#include "monosum/harness/verify.hpp"

namespace monosum::harness {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ConfigInvalid, msg); }

template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<complex_t> random_table(std::int64_t h, Rng& rng) {
    std::vector<complex_t> t(static_cast<std::size_t>(h));
    for (auto& v : t) {
        const double radius = rng.unit();
        const double angle = 2.0 * std::numbers::pi * rng.unit();
        v = std::polar(radius, angle);
    }
    return t;
}

std::vector<std::int64_t> default_shifts(std::uint64_t p) {
    return {0, 1, -1, static_cast<std::int64_t>(p / 2)};
}

}  // namespace

DrawOptions draw_options(const ExperimentConfig& cfg, bool character) {
    DrawOptions o;
    o.weights = cfg.weights;
    o.lambda_policy = cfg.lambda_policy;
    o.lambda = cfg.lambda;
    o.exponents = cfg.exponents;
    o.char_index = cfg.char_index;
    o.character = character;
    return o;
}

Instance draw_instance(const PrimeContext& ctx, int n, std::int64_t h, std::uint64_t trial, Rng& rng,
                       const DrawOptions& options) {
    const auto p = static_cast<std::int64_t>(ctx.p());
    const auto dim = static_cast<std::size_t>(n);

    std::vector<std::int64_t> e(dim);
    if (!options.exponents.empty()) {
        e = options.exponents[trial % options.exponents.size()];
        if (e.size() != dim) invalid("exponent vector length differs from n=" + std::to_string(n));
    } else {
        static constexpr std::int64_t choices[] = {-2, -1, 1, 2};
        for (auto& v : e) v = choices[rng.uniform(0, 3)];
    }

    std::vector<std::int64_t> k(dim, 0);
    if (trial != 0)
        for (auto& v : k) v = rng.uniform(0, p - 1);

    const std::int64_t lambda =
        options.lambda_policy == LambdaPolicy::Fixed ? options.lambda : rng.uniform(1, p - 1);

    WeightKind kind = options.weights;
    if (kind == WeightKind::Mixed) {
        static constexpr WeightKind cycle[] = {WeightKind::Unit, WeightKind::Phase, WeightKind::Table};
        kind = cycle[trial % 3];
    }
    WeightSystem weights = WeightSystem::unit(dim);
    if (kind == WeightKind::Phase) {
        std::vector<std::int64_t> freqs(dim);
        for (auto& f : freqs) f = rng.uniform(0, p - 1);
        weights = WeightSystem::additive_phase(std::move(freqs));
    } else if (kind == WeightKind::Table) {
        std::vector<std::vector<complex_t>> tables;
        for (std::size_t j = 0; j < dim; ++j) tables.push_back(random_table(h, rng));
        weights = WeightSystem::table(std::move(tables));
    }

    std::optional<MultChar> chi;
    if (options.character) {
        const std::int64_t a = options.char_index ? *options.char_index : rng.uniform(1, std::max<std::int64_t>(1, p - 2));
        chi.emplace(ctx, a);
    }
    return {SumSpec(ctx, Box(std::move(k), h), ExponentVector(std::move(e)), std::move(weights), lambda),
            std::move(chi)};
}

void check_trivial_bound(const SumResult& result, int n, std::int64_t h) {
    const double trivial = std::pow(static_cast<double>(h), n);
    const double tol = agreement_tolerance(result.terms);
    if (static_cast<double>(result.terms) > trivial || std::abs(result.value) > static_cast<double>(result.terms) + tol)
        throw std::logic_error("trivial bound violated: |sum| = " + format_double(std::abs(result.value)) +
                               " with terms = " + std::to_string(result.terms));
}

std::vector<std::int64_t> cell_side_lengths(const ExperimentConfig& cfg, Theorem theorem, int n, std::uint64_t p) {
    if (!cfg.h.empty()) return cfg.h;
    if (!cfg.h_window) invalid("either h or h_window must be given");
    const double alpha = nontrivial_threshold(theorem, n);
    const double lp = static_cast<double>(p);
    const auto lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(lp, alpha - *cfg.h_window))));
    const auto hi = static_cast<std::int64_t>(std::ceil(std::pow(lp, alpha + *cfg.h_window)));
    std::vector<std::int64_t> out;
    for (std::int64_t h = lo; h <= hi; ++h) out.push_back(h);
    return out;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    if (!cfg.target) invalid("sweep needs a theorem selector");
    const auto theorem = as_theorem(*cfg.target);
    if (!theorem) invalid("sweep needs a theorem selector T1..T6");
    const auto primes = cfg.resolved_primes();
    if (primes.empty()) invalid("prime list is empty");
    if (cfg.n.empty()) invalid("sweep needs at least one n");
    const std::uint64_t seed = cfg.seed_or_throw();
    const int r = cfg.r.empty() ? 2 : cfg.r.front();
    for (int n : cfg.n) {
        try {
            nontrivial_threshold(*theorem, n);
            (void)evaluate_bound({*theorem, n, 1.0, 101.0, r});
        } catch (const Error& err) {
            if (err.code() != ErrorCode::OutOfRange) invalid(err.what());
        }
    }
    const bool character = bounds_character_sum(*theorem);
    const DrawOptions options = draw_options(cfg, character);

    SweepResult result;
    for (std::uint64_t p : primes) {
        const PrimeContext ctx = build_context(p);
        for (int n : cfg.n) {
            for (std::int64_t h : cell_side_lengths(cfg, *theorem, n, p)) {
                const std::string where = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " h=" + std::to_string(h);
                if (static_cast<std::uint64_t>(h) >= p) {
                    result.warnings.push_back("skipped " + where + ": side length must be below p");
                    continue;
                }
                BoundValue bound;
                try {
                    bound = evaluate_bound({*theorem, n, static_cast<double>(h), static_cast<double>(p), r});
                } catch (const Error& err) {
                    if (err.code() != ErrorCode::OutOfRange) throw;
                    result.warnings.push_back("skipped " + where + ": " + err.what());
                    continue;
                }
                std::vector<RatioRecord> cell(static_cast<std::size_t>(cfg.trials));
                parallel_for(cell.size(), cfg.threads, [&](std::size_t trial) {
                    Rng rng = substream(seed, p, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(h), trial);
                    const Instance inst = draw_instance(ctx, n, h, trial, rng, options);
                    const auto start = std::chrono::steady_clock::now();
                    SumResult sum = character ? (n >= 2 ? sum_T_eta(inst.spec, *inst.chi) : sum_T_naive(inst.spec, *inst.chi))
                                              : (n >= 2 ? sum_S_bilinear(inst.spec) : sum_S_naive(inst.spec));
                    const auto stop = std::chrono::steady_clock::now();
                    check_trivial_bound(sum, n, h);

                    RatioRecord& rec = cell[trial];
                    rec.p = p;
                    rec.n = n;
                    rec.h = h;
                    rec.e.assign(inst.spec.e.values().begin(), inst.spec.e.values().end());
                    rec.k = inst.spec.box.k;
                    rec.lambda = inst.spec.lambda;
                    rec.char_index = inst.chi ? static_cast<std::int64_t>(inst.chi->index()) : -1;
                    rec.sum_re = sum.value.real();
                    rec.sum_im = sum.value.imag();
                    rec.abs_sum = std::abs(sum.value);
                    rec.bound = bound.value;
                    rec.ratio = rec.abs_sum / bound.value;
                    rec.branch = bound.branch;
                    rec.eval_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
                });
                CellSummary summary{p, n, h, cell.size(), 0.0, 0.0, bound.branch};
                for (const auto& rec : cell) {
                    summary.max_ratio = std::max(summary.max_ratio, rec.ratio);
                    summary.mean_ratio += rec.ratio;
                }
                if (!cell.empty()) summary.mean_ratio /= static_cast<double>(cell.size());
                result.cells.push_back(std::move(summary));
                result.records.insert(result.records.end(), cell.begin(), cell.end());
            }
        }
    }
    return result;
}

std::string PrimeSweepReport::to_text() const {
    std::ostringstream out;
    out << "# product-count probe: nu=" << nu << " h=" << h << " k=" << k << " seed=" << seed
        << " base_constant=" << format_double(base_constant) << '\n';
    out << "p,count,majorant,ratio\n";
    for (const auto& row : rows)
        out << row.p << ',' << row.count << ',' << format_double(row.majorant) << ',' << format_double(row.ratio) << '\n';
    out << "\nconstant,overall_fraction";
    if (!ladder.empty())
        for (const auto& [t, frac] : ladder.front().windows) out << ",window_" << t / 2 << '_' << t;
    out << '\n';
    for (const auto& row : ladder) {
        out << format_double(row.constant) << ',' << format_double(row.overall_fraction);
        for (const auto& [t, frac] : row.windows) out << ',' << format_double(frac);
        out << '\n';
    }
    return out.str();
}

std::string PrimeSweepReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["nu"] = nu;
    doc["h"] = h;
    doc["k"] = k;
    doc["seed"] = seed;
    doc["base_constant"] = base_constant;
    doc["primes"] = nlohmann::ordered_json::array();
    for (const auto& row : rows)
        doc["primes"].push_back({{"p", row.p}, {"count", row.count}, {"majorant", row.majorant}, {"ratio", row.ratio}});
    doc["ladder"] = nlohmann::ordered_json::array();
    for (const auto& row : ladder) {
        nlohmann::ordered_json j;
        j["constant"] = row.constant;
        j["overall_fraction"] = row.overall_fraction;
        j["windows"] = nlohmann::ordered_json::array();
        for (const auto& [t, frac] : row.windows) j["windows"].push_back({{"T", t}, {"fraction", frac}});
        doc["ladder"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

PrimeSweepReport run_prime_sweep(const ExperimentConfig& cfg) {
    PrimeSweepReport report;
    report.nu = cfg.nu.empty() ? 2 : cfg.nu.front();
    report.h = cfg.h.empty() ? 6 : cfg.h.front();
    report.k = cfg.k.empty() ? 0 : cfg.k.front();
    report.seed = cfg.seed.value_or(0);
    if (report.nu < 1) invalid("nu must be at least 1");

    std::vector<std::uint64_t> primes;
    for (std::uint64_t p : cfg.resolved_primes())
        if (p > static_cast<std::uint64_t>(report.h)) primes.push_back(p);
    if (primes.empty()) invalid("prime range contains no prime above h");

    if (!cfg.calibration.empty()) {
        const auto store = CalibrationStore::load(cfg.calibration);
        if (auto c = store.max_ratio("L2", 0, report.nu)) report.base_constant = *c;
    }

    for (std::uint64_t p : primes) {
        const PrimeContext ctx = build_context(p);
        PrimeSweepRow row;
        row.p = p;
        row.count = count_I_brute(ctx, report.nu, report.h, report.k).value;
        row.majorant = product_count_majorant_almost_all(report.nu, static_cast<double>(report.h), static_cast<double>(p));
        row.ratio = static_cast<double>(row.count) / row.majorant;
        report.rows.push_back(row);
    }

    std::vector<std::uint64_t> windows;
    const std::uint64_t top = cfg.prime_range ? cfg.prime_range->second : primes.back();
    for (std::uint64_t t = top; t / 2 >= static_cast<std::uint64_t>(report.h) && t >= 2; t /= 2) windows.push_back(t);

    const std::vector<double> multipliers = cfg.ladder.empty() ? std::vector<double>{0.5, 1.0, 2.0, 4.0} : cfg.ladder;
    for (double m : multipliers) {
        ViolationRow vr;
        vr.constant = m * report.base_constant;
        std::size_t over = 0;
        for (const auto& row : report.rows) over += row.ratio > vr.constant;
        vr.overall_fraction = static_cast<double>(over) / static_cast<double>(report.rows.size());
        for (std::uint64_t t : windows) {
            std::size_t in = 0, bad = 0;
            for (const auto& row : report.rows) {
                if (row.p > t / 2 && row.p <= t) {
                    ++in;
                    bad += row.ratio > vr.constant;
                }
            }
            vr.windows.emplace_back(t, in == 0 ? 0.0 : static_cast<double>(bad) / static_cast<double>(in));
        }
        report.ladder.push_back(std::move(vr));
    }
    return report;
}

std::string grid_descriptor(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "p=";
    const auto primes = cfg.resolved_primes();
    if (cfg.prime_range) {
        out << cfg.prime_range->first << ".." << cfg.prime_range->second;
    } else {
        for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? "," : "") << primes[i];
    }
    out << ";h=";
    if (!cfg.h.empty()) {
        for (std::size_t i = 0; i < cfg.h.size(); ++i) out << (i ? "," : "") << cfg.h[i];
    } else if (cfg.h_window) {
        out << "window" << format_double(*cfg.h_window);
    }
    out << ";trials=" << cfg.trials << ";w=" << to_string(cfg.weights);
    return out.str();
}

std::vector<CalibrationEntry> measure_max_ratios(const ExperimentConfig& cfg) {
    if (!cfg.target) invalid("calibration needs a theorem selector");
    const std::string target(to_string(*cfg.target));
    const std::string grid = grid_descriptor(cfg);
    const std::uint64_t seed = cfg.seed_or_throw();
    std::map<std::pair<int, int>, double> maxima;  // (n, nu) -> max ratio

    if (as_theorem(*cfg.target)) {
        const auto sweep = run_sweep(cfg);
        for (const auto& rec : sweep.records) {
            auto [it, inserted] = maxima.try_emplace({rec.n, 0}, rec.ratio);
            if (!inserted) it->second = std::max(it->second, rec.ratio);
        }
    } else if (*cfg.target == Target::Lemma1 || *cfg.target == Target::Lemma2) {
        const auto nus = cfg.nu.empty() ? std::vector<int>{2, 3} : cfg.nu;
        for (std::uint64_t p : cfg.resolved_primes()) {
            const PrimeContext ctx = build_context(p);
            const auto shifts = cfg.k.empty() ? default_shifts(p) : cfg.k;
            for (int nu : nus) {
                for (std::int64_t h : cfg.h) {
                    if (static_cast<std::uint64_t>(h) >= p) continue;
                    const double hd = static_cast<double>(h), pd = static_cast<double>(p);
                    const double majorant = *cfg.target == Target::Lemma1 ? product_count_majorant(nu, hd, pd)
                                                                          : product_count_majorant_almost_all(nu, hd, pd);
                    for (std::int64_t k : shifts) {
                        const double ratio = static_cast<double>(count_I_brute(ctx, nu, h, k).value) / majorant;
                        auto [it, inserted] = maxima.try_emplace({0, nu}, ratio);
                        if (!inserted) it->second = std::max(it->second, ratio);
                    }
                }
            }
        }
    } else {
        const auto orders = cfg.r.empty() ? std::vector<int>{1, 2} : cfg.r;
        for (std::uint64_t p : cfg.resolved_primes()) {
            const PrimeContext ctx = build_context(p);
            const auto sp = static_cast<std::int64_t>(p);
            for (int r : orders) {
                for (std::int64_t h : cfg.h) {
                    if (static_cast<std::uint64_t>(h) >= p) continue;
                    std::vector<double> ratios(static_cast<std::size_t>(cfg.trials));
                    parallel_for(ratios.size(), cfg.threads, [&](std::size_t trial) {
                        Rng rng = substream(seed ^ 0x4C34ull, p, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(h), trial);
                        const MultChar chi(ctx, rng.uniform(1, std::max<std::int64_t>(1, sp - 2)));
                        const std::int64_t k = trial == 0 ? 0 : rng.uniform(0, sp - 1);
                        const std::int64_t lambda = rng.uniform(1, sp - 1);
                        const auto rho = trial == 0 ? std::vector<complex_t>(static_cast<std::size_t>(h), 1.0)
                                                    : random_table(h, rng);
                        ratios[trial] = char_moment(chi, k, h, lambda, rho, r) /
                                        char_moment_majorant(static_cast<double>(h), static_cast<double>(p), r);
                    });
                    for (double ratio : ratios) {
                        auto [it, inserted] = maxima.try_emplace({0, r}, ratio);
                        if (!inserted) it->second = std::max(it->second, ratio);
                    }
                }
            }
        }
    }

    std::vector<CalibrationEntry> out;
    for (const auto& [key, ratio] : maxima) {
        CalibrationEntry e;
        e.target = target;
        e.n = key.first;
        e.nu = key.second;
        e.max_ratio = ratio;
        e.grid = grid;
        e.seed = seed;
        out.push_back(std::move(e));
    }
    return out;
}

CalibrationUpdate run_calibrate(const ExperimentConfig& cfg, CalibrationStore& store) {
    if (cfg.require_verify) {
        ExperimentConfig quick;
        quick.primes = {5, 7, 11, 13};
        quick.n = {2, 3};
        quick.h = {1, 2, 3, 4};
        quick.trials = 3;
        quick.seed = 0;
        const auto report = run_verify(quick);
        if (!report.ok()) throw Error(ErrorCode::VerifyNotGreen, "verify suite must pass before calibration");
    }
    CalibrationUpdate update;
    update.computed = measure_max_ratios(cfg);
    for (const auto& e : update.computed) update.appended += store.append(e) ? 1 : 0;
    return update;
}

}  // namespace monosum::harness
