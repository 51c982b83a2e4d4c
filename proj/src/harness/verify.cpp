#include "monosum/harness/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "monosum/bounds.hpp"
#include "monosum/characters.hpp"
#include "monosum/counts.hpp"
#include "monosum/harness/calibration.hpp"
#include "monosum/harness/experiments.hpp"
#include "monosum/harness/rng.hpp"
#include "monosum/modular.hpp"
#include "monosum/sums.hpp"

namespace monosum::harness {

namespace {

constexpr std::uint64_t kStream = 0x7665726966790000ull;  // keeps verify draws apart from sweeps

class Suite {
public:
    explicit Suite(const ExperimentConfig& cfg) : cfg_(cfg), seed_(cfg.seed.value_or(0)) {
        if (!cfg.calibration.empty()) store_ = CalibrationStore::load(cfg.calibration);
        // prop() hands out references into this vector.
        report_.properties.reserve(required_properties().size());
    }

    PropertyReport& prop(const std::string& name, bool hard = true) {
        auto it = index_.find(name);
        if (it == index_.end()) {
            it = index_.emplace(name, report_.properties.size()).first;
            report_.properties.push_back({name, hard, 0, 0, 0.0, {}});
        }
        return report_.properties[it->second];
    }

    static void check(PropertyReport& pr, double residual, bool ok) {
        ++pr.instances;
        if (std::isfinite(residual)) pr.max_residual = std::max(pr.max_residual, residual);
        if (!ok) ++pr.failures;
    }

    Rng rng(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) const {
        return substream(seed_ ^ kStream, a, b, c, d);
    }

    Spectrum spectrum(const ResidueDistribution& d, SpectrumMethod m = SpectrumMethod::Automatic) const {
        Spectrum s = additive_spectrum(d, m);
        if (cfg_.fault == Fault::Spectrum) s.values[1 % s.values.size()] += 0.5;
        return s;
    }

    void modular(const PrimeContext& ctx);
    void characters(const PrimeContext& ctx);
    void sums(const PrimeContext& ctx);
    void counts(const PrimeContext& ctx);
    void lemma_probes(const std::vector<std::uint64_t>& primes);
    void bounds();
    void harness_checks();
    VerifyReport finish();

private:
    const ExperimentConfig& cfg_;
    std::uint64_t seed_;
    CalibrationStore store_;
    VerifyReport report_;
    std::map<std::string, std::size_t> index_;
};

void Suite::modular(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    auto& fermat = prop("modular.fermat_and_inverse");
    auto& symmetry = prop("modular.negative_power_symmetry");
    auto& bijection = prop("modular.index_bijection");
    auto& factorwise = prop("modular.monomial_factorwise");

    for (std::int64_t a = 1; a < static_cast<std::int64_t>(p); ++a) {
        const bool ok = pow_mod(a, static_cast<std::int64_t>(p - 1), p) == 1 &&
                        mul_mod(static_cast<residue_t>(a), inv_mod(a, p), p) == 1;
        check(fermat, ok ? 0.0 : 1.0, ok);
        for (std::int64_t e = -5; e <= 5; ++e) {
            const bool sym = mul_mod(pow_mod(a, e, p), pow_mod(a, -e, p), p) == 1;
            check(symmetry, sym ? 0.0 : 1.0, sym);
        }
    }
    for (std::uint64_t k = 0; k + 1 < p; ++k) {
        const bool ok = ctx.index(pow_mod(static_cast<std::int64_t>(ctx.g()), static_cast<std::int64_t>(k), p)) == k;
        check(bijection, ok ? 0.0 : 1.0, ok);
    }
    if (p > 13) return;
    static constexpr std::int64_t choices[] = {-2, -1, 1, 2};
    for (std::size_t n = 1; n <= 3; ++n) {
        std::size_t e_combos = 1, x_combos = 1;
        for (std::size_t j = 0; j < n; ++j) {
            e_combos *= 4;
            x_combos *= p - 1;
        }
        for (std::size_t ec = 0; ec < e_combos; ++ec) {
            std::vector<std::int64_t> ev(n);
            for (std::size_t j = 0, c = ec; j < n; ++j, c /= 4) ev[j] = choices[c % 4];
            const ExponentVector e(ev);
            for (std::size_t xc = 0; xc < x_combos; ++xc) {
                std::vector<std::int64_t> x(n);
                residue_t expected = 1;
                for (std::size_t j = 0, c = xc; j < n; ++j, c /= (p - 1)) {
                    x[j] = static_cast<std::int64_t>(c % (p - 1)) + 1;
                    expected = mul_mod(expected, pow_mod(x[j], ev[j], p), p);
                }
                const bool ok = monomial_eval(ctx, x, e) == expected;
                check(factorwise, ok ? 0.0 : 1.0, ok);
            }
        }
    }
}

void Suite::characters(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    const auto sp = static_cast<std::int64_t>(p);
    auto& additive = prop("characters.additive_unit_homomorphism");
    auto& mult = prop("characters.multiplicativity");
    auto& ortho = prop("characters.orthogonality");
    auto& parseval = prop("characters.parseval");
    auto& fft = prop("characters.fft_matches_direct");
    auto& moment = prop("characters.moment_r1_double_loop");

    Rng rng = this->rng(p, 1, 0, 0);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t z1 = rng.uniform(-3 * sp, 3 * sp), z2 = rng.uniform(-3 * sp, 3 * sp);
        const complex_t a = additive_char(ctx, z1), b = additive_char(ctx, z2);
        const double res = std::max(std::abs(std::abs(a) - 1.0), std::abs(additive_char(ctx, z1 + z2) - a * b));
        check(additive, res, res <= 1e-12);
    }

    std::vector<std::int64_t> indices{0, 1, sp - 2};
    for (int i = 0; i < 3; ++i) indices.push_back(rng.uniform(0, sp - 2));
    for (std::int64_t a : indices) {
        const MultChar chi(ctx, a);
        auto pair_check = [&](std::int64_t x, std::int64_t y) {
            const double res = std::abs(chi(x * y % sp) - chi(x) * chi(y));
            check(mult, res, res <= 1e-10);
        };
        if (p <= 31) {
            for (std::int64_t x = 1; x < sp; ++x)
                for (std::int64_t y = 1; y < sp; ++y) pair_check(x, y);
        } else {
            for (int i = 0; i < 400; ++i) pair_check(rng.uniform(1, sp - 1), rng.uniform(1, sp - 1));
        }
    }

    std::vector<complex_t> column(p);
    for (std::int64_t a = 0; a < sp - 1; ++a) {
        const CharacterTable table(MultChar(ctx, a));
        for (std::uint64_t x = 1; x < p; ++x) column[x] += table[x];
    }
    for (std::uint64_t x = 1; x < p; ++x) {
        const double expected = x == 1 ? static_cast<double>(p - 1) : 0.0;
        const double res = std::abs(column[x] - expected);
        check(ortho, res, res <= 1e-8 * static_cast<double>(p));
    }

    for (int trial = 0; trial < std::max(1, cfg_.trials / 4); ++trial) {
        ResidueDistribution dist(ctx);
        for (auto& v : dist.values) v = {2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
        const Spectrum s = spectrum(dist);
        double lhs = 0.0;
        for (const auto& v : s.values) lhs += std::norm(v);
        const double rhs = static_cast<double>(p) * dist.energy();
        const double rel = std::abs(lhs - rhs) / rhs;
        check(parseval, rel, rel <= 1e-9);

        const Spectrum direct = additive_spectrum_direct(dist);
        const Spectrum fast = spectrum(dist, SpectrumMethod::Fft);
        double diff = 0.0, scale = 1.0;
        for (std::uint64_t w = 0; w < p; ++w) {
            diff = std::max(diff, std::abs(direct.values[w] - fast.values[w]));
            scale = std::max(scale, std::abs(direct.values[w]));
        }
        check(fft, diff / scale, diff <= 1e-8 * scale);
    }

    for (int trial = 0; trial < std::max(1, cfg_.trials / 4); ++trial) {
        if (p < 3) break;
        const MultChar chi(ctx, rng.uniform(1, std::max<std::int64_t>(1, sp - 2)));
        const std::int64_t h = rng.uniform(1, std::min<std::int64_t>(8, sp - 1));
        const std::int64_t k = rng.uniform(-sp, sp);
        const std::int64_t lambda = rng.uniform(1, sp - 1);
        std::vector<complex_t> rho(static_cast<std::size_t>(h));
        for (auto& v : rho) v = std::polar(rng.unit(), 2.0 * std::numbers::pi * rng.unit());
        const double fast = char_moment(chi, k, h, lambda, rho, 1);
        double slow = 0.0;
        for (std::int64_t u = 1; u < sp; ++u) {
            complex_t acc{};
            for (std::int64_t x = 0; x < h; ++x)
                for (std::int64_t y = 0; y < h; ++y)
                    acc += rho[x] * std::conj(rho[y]) * chi(u * (k + 1 + x) + lambda) *
                           std::conj(chi(u * (k + 1 + y) + lambda));
            slow += acc.real();
        }
        const double res = std::abs(fast - slow);
        check(moment, res, res <= 1e-9 * (1.0 + static_cast<double>(p * h * h)));
    }
}

void Suite::sums(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    auto& bilinear = prop("sums.bilinear_matches_naive");
    auto& eta = prop("sums.eta_matches_naive");
    auto& trivial = prop("sums.trivial_bound");
    auto& conj = prop("sums.conjugation_symmetry");
    auto& cauchy = prop("sums.cauchy_step");
    auto& holder = prop("sums.holder_step");
    auto& kloost = prop("sums.kloosterman_specialization");

    DrawOptions options;
    options.character = true;
    for (int n : cfg_.n) {
        for (std::int64_t h : cfg_.h) {
            if (static_cast<std::uint64_t>(h) >= p) continue;
            for (int trial = 0; trial < cfg_.trials; ++trial) {
                Rng rng = this->rng(p, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(h), trial);
                const Instance inst = draw_instance(ctx, n, h, static_cast<std::uint64_t>(trial), rng, options);
                const SumSpec& spec = inst.spec;
                const MultChar& chi = *inst.chi;
                const SumResult s = sum_S_naive(spec);
                const SumResult t = sum_T_naive(spec, chi);
                const double tau = agreement_tolerance(s.terms);

                const double trivial_bound = std::pow(static_cast<double>(h), n);
                const double over = std::max(std::abs(s.value), std::abs(t.value)) - static_cast<double>(s.terms);
                check(trivial, std::max(0.0, over),
                      over <= tau && static_cast<double>(s.terms) <= trivial_bound);

                if (n >= 2) {
                    const SumResult sb = sum_S_bilinear(spec, [this](const ResidueDistribution& d) { return spectrum(d); });
                    const double rb = std::abs(sb.value - s.value);
                    check(bilinear, rb, rb <= tau);
                    const SumResult te = sum_T_eta(spec, chi);
                    const double re = std::abs(te.value - t.value);
                    check(eta, re, re <= tau);

                    const double cm = cauchy_majorant(spec);
                    check(cauchy, std::max(0.0, std::abs(s.value) - cm), cm + tau >= std::abs(s.value));
                    if (!chi.principal()) {
                        for (int r = 1; r <= 3; ++r) {
                            const double hm = holder_majorant(spec, chi, r);
                            check(holder, std::max(0.0, std::abs(t.value) - hm), hm + tau >= std::abs(t.value));
                        }
                    }
                }

                const SumSpec unit(ctx, spec.box, spec.e, WeightSystem::unit(spec.dimension()), spec.lambda);
                const SumSpec flipped(ctx, spec.box, spec.e, WeightSystem::unit(spec.dimension()),
                                      static_cast<std::int64_t>(p) - reduce(spec.lambda, p));
                const double rc = std::abs(sum_S_naive(flipped).value - std::conj(sum_S_naive(unit).value));
                check(conj, rc, rc <= tau);

                const SumResult k = sum_K(ctx, spec.box, spec.lambda, std::vector<std::int64_t>(spec.dimension(), 0));
                const SumSpec minus(ctx, spec.box, ExponentVector::ones(spec.dimension(), -1),
                                    WeightSystem::unit(spec.dimension()), spec.lambda);
                const SumResult direct = sum_S_naive(minus);
                check(kloost, std::abs(k.value - direct.value), k.value == direct.value);
            }
        }
    }
}

void Suite::counts(const PrimeContext& ctx) {
    const std::uint64_t p = ctx.p();
    const auto sp = static_cast<std::int64_t>(p);
    auto& identity = prop("counts.spectral_identity");
    auto& monotone = prop("counts.monotone_in_h");
    auto& diagonal = prop("counts.diagonal_lower_bound");
    auto& gcd_form = prop("counts.lemma3_gcd_form");
    auto& plain_form = prop("counts.lemma3_plain_form", false);
    const auto l1_stored = [&](int nu) { return store_.max_ratio("L1", 0, nu); };
    auto& lemma1 = prop("counts.lemma1_calibration", !store_.entries().empty());

    const std::int64_t h_max = std::min<std::int64_t>(8, sp - 1);
    for (int nu = 1; nu <= 3; ++nu) {
        for (std::int64_t k : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-1}, sp / 2}) {
            std::uint64_t previous = 0;
            for (std::int64_t h = 1; h <= h_max; ++h) {
                const std::uint64_t brute = count_I_brute(ctx, nu, h, k).value;
                check(monotone, brute < previous ? 1.0 : 0.0, brute >= previous);
                previous = brute;

                std::int64_t delta = 0;
                for (std::int64_t x = 1; x <= h; ++x) delta += reduce(x + k, p) == 0;
                const double floor_count = std::pow(static_cast<double>(h - delta), nu);
                check(diagonal, 0.0, static_cast<double>(brute) >= floor_count);

                if (h >= 3) {
                    const double raw = count_I_character_average(ctx, nu, h, k);
                    const double rounded = std::round(raw);
                    const double res = std::abs(raw - rounded);
                    check(identity, res, res < 0.4 && static_cast<std::uint64_t>(rounded) == brute);

                    if (nu >= 2) {
                        const double ratio =
                            static_cast<double>(brute) / product_count_majorant(nu, static_cast<double>(h), static_cast<double>(p));
                        const auto stored = l1_stored(nu);
                        check(lemma1, ratio, !stored || ratio <= 2.0 * *stored);
                    }
                }
            }
        }
    }

    if (p > 13) return;
    std::vector<std::int64_t> exps;
    for (std::int64_t e = -3; e <= 3; ++e)
        if (e != 0) exps.push_back(e);
    for (std::int64_t e1 : exps)
        for (std::int64_t e2 : exps)
            for (std::int64_t h1 = 3; h1 <= 5; ++h1)
                for (std::int64_t h2 = 3; h2 <= 5; ++h2)
                    for (std::int64_t k1 = 0; k1 <= 1; ++k1)
                        for (std::int64_t k2 = 0; k2 <= 1; ++k2) {
                            if (h1 >= sp || h2 >= sp) continue;
                            CountSpec spec{2, {h1, h2}, {k1, k2}, ExponentVector{e1, e2}};
                            const auto rep = lemma3_check(ctx, spec);
                            check(gcd_form, std::max(0.0, static_cast<double>(rep.lhs) - rep.rhs_gcd), rep.holds_gcd);
                            check(plain_form, std::max(0.0, static_cast<double>(rep.lhs) - rep.rhs_plain), rep.holds_plain);
                            if (!rep.holds_plain) {
                                std::ostringstream f;
                                f << "gcd-free product form exceeded: p=" << p << " e=(" << e1 << "," << e2 << ") h=(" << h1
                                  << "," << h2 << ") k=(" << k1 << "," << k2 << ") J=" << rep.lhs
                                  << " rhs_plain=" << format_double(rep.rhs_plain);
                                if (report_.findings.size() < 50) report_.findings.push_back(f.str());
                            }
                        }
}

void Suite::lemma_probes(const std::vector<std::uint64_t>&) {
    auto& probe = prop("counts.lemma2_probe", false);
    const double constant = store_.max_ratio("L2", 0, 2).value_or(1.0);
    std::ostringstream note;
    for (std::uint64_t top : {500u, 2000u}) {
        std::size_t primes = 0, over = 0;
        for (std::uint64_t p = top / 2 + 1; p <= top; ++p) {
            if (!is_prime(p)) continue;
            const PrimeContext ctx = build_context(p);
            const double ratio = static_cast<double>(count_I_brute(ctx, 2, 6, 0).value) /
                                 product_count_majorant_almost_all(2, 6.0, static_cast<double>(p));
            ++primes;
            over += ratio > constant;
            check(probe, ratio, true);
        }
        note << "T=" << top << ": " << over << "/" << primes << " primes above C=" << format_double(constant) << "; ";
    }
    probe.note = note.str();
}

void Suite::bounds() {
    auto& monotone = prop("bounds.monotone_in_h");
    auto& nontrivial = prop("bounds.nontriviality");
    auto& middle = prop("bounds.middle_term_never_dominates");

    struct Case {
        Theorem theorem;
        int n;
        int r;
    };
    std::vector<Case> cases;
    for (int n = 4; n <= 7; ++n) cases.push_back({Theorem::T1, n, 2}), cases.push_back({Theorem::T2, n, 2});
    cases.push_back({Theorem::T3, 3, 2});
    cases.push_back({Theorem::T3, 4, 2});
    for (int n = 2; n <= 6; ++n) {
        cases.push_back({Theorem::T4, n, 2});
        cases.push_back({Theorem::T5, n, 2});
        // The T6 threshold is reached only once r ≥ n - 1.
        cases.push_back({Theorem::T6, n, std::max(2, n - 1)});
        cases.push_back({Theorem::T6, n, std::max(2, n - 1) + 1});
    }

    std::size_t summed_exceptions = 0;
    for (double p : {101.0, 1009.0, 10007.0}) {
        std::set<std::int64_t> sample;
        for (int i = 0; i <= 48; ++i) sample.insert(static_cast<std::int64_t>(std::round(std::pow(p - 1.0, i / 48.0))));
        for (const Case& c : cases) {
            const double alpha = nontrivial_threshold(c.theorem, c.n);
            double previous = -1.0;
            for (std::int64_t hi : sample) {
                const auto h = static_cast<double>(hi);
                BoundValue v;
                try {
                    v = evaluate_bound({c.theorem, c.n, h, p, c.r});
                } catch (const Error& err) {
                    if (err.code() == ErrorCode::OutOfRange) continue;
                    throw;
                }
                if (previous >= 0.0) {
                    check(monotone, std::max(0.0, previous - v.value) / previous, v.value >= previous * (1.0 - 1e-12));
                }
                previous = v.value;
                if (h >= std::pow(p, alpha + 0.05)) {
                    const double trivial = std::pow(h, c.n);
                    double worst = 0.0;
                    for (double term : v.terms) worst = std::max(worst, term / trivial);
                    check(nontrivial, worst, worst < 1.0);
                    summed_exceptions += v.value >= trivial;
                }
            }
        }
        for (std::int64_t hi : sample) {
            const auto h = static_cast<double>(hi);
            for (int n : {4, 6}) {
                const auto t = all_primes_proof_terms(n, h, p);
                const double res = t[1] / std::max(t[0], t[2]);
                check(middle, res, res <= 1.0 + 1e-12);
            }
            for (int n : {2, 4, 6}) {
                const auto v = bound_S_almost_all(n, h, p);
                const double res = v.terms[1] / std::max(v.terms[0], v.terms[2]);
                check(middle, res, res <= 1.0 + 1e-12);
            }
        }
    }
    nontrivial.note = "summed form with unit constants reached the trivial bound in " +
                      std::to_string(summed_exceptions) + " cells";
}

void Suite::harness_checks() {
    auto& determinism = prop("harness.determinism");
    auto& emission = prop("harness.trivial_bound_at_emission");

    ExperimentConfig sweep;
    sweep.target = Target::T4;
    sweep.primes = {101};
    sweep.n = {2, 3};
    sweep.h = {3, 5};
    sweep.trials = 5;
    sweep.seed = seed_;
    auto strip = [](const SweepResult& r) {
        auto records = r.records;
        for (auto& rec : records) rec.eval_ns = 0;
        std::ostringstream out;
        write_records_csv(out, records);
        return out.str();
    };
    const std::string first = strip(run_sweep(sweep));
    sweep.threads = 3;
    const auto second_result = run_sweep(sweep);
    const std::string second = strip(second_result);
    check(determinism, first == second ? 0.0 : 1.0, first == second);
    for (const auto& rec : second_result.records) {
        const double trivial = std::pow(static_cast<double>(rec.h), rec.n);
        check(emission, std::max(0.0, rec.abs_sum - trivial), rec.abs_sum <= trivial * (1.0 + 1e-12));
    }
}

VerifyReport Suite::finish() {
    for (const auto& name : required_properties()) {
        if (index_.count(name) == 0) {
            auto& missing = prop(name);
            missing.failures = 1;
            missing.note = "property missing from the suite";
        }
    }
    return std::move(report_);
}

}  // namespace

bool VerifyReport::ok() const noexcept {
    return std::none_of(properties.begin(), properties.end(),
                        [](const PropertyReport& p) { return p.hard && p.failures > 0; });
}

std::string VerifyReport::to_text() const {
    std::ostringstream out;
    for (const auto& p : properties) {
        const char* status = !p.hard ? "INFO" : (p.failures == 0 ? "PASS" : "FAIL");
        out << status << ' ' << p.name << " instances=" << p.instances << " failures=" << p.failures
            << " max_residual=" << format_double(p.max_residual);
        if (!p.note.empty()) out << " (" << p.note << ')';
        out << '\n';
    }
    for (const auto& f : findings) out << "FINDING " << f << '\n';
    out << (ok() ? "verify: all hard properties hold\n" : "verify: FAILED\n");
    return out.str();
}

std::string VerifyReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["ok"] = ok();
    doc["properties"] = nlohmann::ordered_json::array();
    for (const auto& p : properties)
        doc["properties"].push_back({{"name", p.name},
                                     {"hard", p.hard},
                                     {"instances", p.instances},
                                     {"failures", p.failures},
                                     {"max_residual", p.max_residual},
                                     {"note", p.note}});
    doc["findings"] = findings;
    return doc.dump(2) + "\n";
}

const std::vector<std::string>& required_properties() {
    static const std::vector<std::string> names{
        "modular.fermat_and_inverse",
        "modular.negative_power_symmetry",
        "modular.index_bijection",
        "modular.monomial_factorwise",
        "characters.additive_unit_homomorphism",
        "characters.multiplicativity",
        "characters.orthogonality",
        "characters.parseval",
        "characters.fft_matches_direct",
        "characters.moment_r1_double_loop",
        "sums.bilinear_matches_naive",
        "sums.eta_matches_naive",
        "sums.trivial_bound",
        "sums.conjugation_symmetry",
        "sums.cauchy_step",
        "sums.holder_step",
        "sums.kloosterman_specialization",
        "counts.spectral_identity",
        "counts.monotone_in_h",
        "counts.diagonal_lower_bound",
        "counts.lemma3_gcd_form",
        "counts.lemma3_plain_form",
        "counts.lemma1_calibration",
        "counts.lemma2_probe",
        "bounds.monotone_in_h",
        "bounds.nontriviality",
        "bounds.middle_term_never_dominates",
        "harness.determinism",
        "harness.trivial_bound_at_emission",
    };
    return names;
}

VerifyReport run_verify(const ExperimentConfig& cfg) {
    const auto primes = cfg.resolved_primes();
    if (primes.empty()) throw Error(ErrorCode::ConfigInvalid, "verify needs a nonempty prime list");
    if (cfg.n.empty() || cfg.h.empty()) throw Error(ErrorCode::ConfigInvalid, "verify needs n and h lists");

    Suite suite(cfg);
    for (std::uint64_t p : primes) {
        const PrimeContext ctx = build_context(p);
        suite.modular(ctx);
        suite.characters(ctx);
        suite.sums(ctx);
        suite.counts(ctx);
    }
    suite.lemma_probes(primes);
    suite.bounds();
    suite.harness_checks();
    return suite.finish();
}

}  // namespace monosum::harness
