#include "monosum/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "monosum/error.hpp"

namespace monosum {

namespace {

double pw(double base, double exponent) { return std::exp(exponent * std::log(base)); }

// h ≥ p^a, with values computed as p^a within rounding counting as equal.
bool at_least(double h, double p, double a) {
    const double rhs = a * std::log(p);
    return std::log(h) >= rhs - 1e-12 * std::max(1.0, std::abs(rhs));
}

void check_h(double h, double p) {
    if (!(h >= 1.0) || !(p >= 2.0)) throw Error(ErrorCode::OutOfRange, "bounds need h >= 1 and p >= 2");
}

BoundValue sum_of(std::vector<double> terms, std::string branch) {
    double total = 0.0;
    for (double t : terms) total += t;
    return {total, std::move(branch), std::move(terms)};
}

}  // namespace

std::string_view to_string(Theorem t) noexcept {
    switch (t) {
        case Theorem::T1: return "T1";
        case Theorem::T2: return "T2";
        case Theorem::T3: return "T3";
        case Theorem::T4: return "T4";
        case Theorem::T5: return "T5";
        case Theorem::T6: return "T6";
    }
    return "T?";
}

Theorem parse_theorem(std::string_view s) {
    for (Theorem t : {Theorem::T1, Theorem::T2, Theorem::T3, Theorem::T4, Theorem::T5, Theorem::T6})
        if (s == to_string(t)) return t;
    throw Error(ErrorCode::ConfigInvalid, "unknown theorem selector '" + std::string(s) + "'");
}

bool bounds_character_sum(Theorem t) noexcept { return t != Theorem::T1 && t != Theorem::T4; }

int d_nu(int nu) {
    if (nu < 2) throw Error(ErrorCode::UnsupportedDimension, "d_nu is defined for nu >= 2");
    if (nu == 2) return 2;
    return std::max(nu * nu - 2 * nu - 2, nu * nu - 3 * nu + 4);
}

BoundValue bound_S_all_primes(int n, double h, double p) {
    check_h(h, p);
    if (h > p) throw Error(ErrorCode::OutOfRange, "all-primes bound needs h <= p");
    const double sp = std::sqrt(p);
    switch (n) {
        case 4: return sum_of({h * h * sp, pw(h, 4) / sp}, "n=4");
        case 5: return sum_of({pw(h, 2.5) * sp, pw(h, 4) * pw(p, 0.125), pw(h, 5) * pw(p, -0.375)}, "n=5");
        case 6: return sum_of({pw(h, 3) * sp, pw(h, 6) * pw(p, -0.25)}, "n=6");
        case 7: return sum_of({pw(h, 5.5) * pw(p, 0.25), pw(h, 7) * pw(p, -0.125)}, "n=7");
        default: break;
    }
    throw Error(ErrorCode::UnsupportedDimension, "all-primes bound covers 4 <= n <= 7 only");
}

BoundValue bound_T_all_primes(int n, double h, double p) { return bound_S_all_primes(n, h, p); }

BoundValue bound_T_moment(int n, double h, double p) {
    check_h(h, p);
    if (n != 3 && n != 4) throw Error(ErrorCode::UnsupportedDimension, "moment bound covers n = 3 and n = 4 only");
    if (!(h < p)) throw Error(ErrorCode::OutOfRange, "moment bound needs h < p");
    if (n == 3) {
        if (at_least(h, p, 0.5)) return sum_of({pw(h, 2.5)}, "h>=p^1/2");
        if (at_least(h, p, 0.375)) return sum_of({pw(h, 1.5) * std::sqrt(p)}, "p^3/8<=h<p^1/2");
        if (at_least(h, p, 0.25)) return sum_of({pw(h, 2.5) * pw(p, 0.125)}, "p^1/4<=h<p^3/8");
        throw Error(ErrorCode::OutOfRange, "n=3 moment bound needs h >= p^1/4");
    }
    if (at_least(h, p, 0.5)) return sum_of({pw(h, 4) * pw(p, -0.25)}, "h>=p^1/2");
    if (at_least(h, p, 9.0 / 32.0)) return sum_of({h * h * std::sqrt(p)}, "p^9/32<=h<p^1/2");
    if (at_least(h, p, 0.25)) return sum_of({pw(h, 4) * pw(p, -1.0 / 16.0)}, "p^1/4<=h<p^9/32");
    if (at_least(h, p, 2.0 / 9.0)) return sum_of({pw(h, 2.75) * pw(p, 0.25)}, "p^2/9<=h<p^1/4");
    if (at_least(h, p, 1.0 / 6.0)) return sum_of({pw(h, 3.5) * pw(p, 1.0 / 12.0)}, "p^1/6<=h<p^2/9");
    throw Error(ErrorCode::OutOfRange, "n=4 moment bound needs h >= p^1/6");
}

BoundValue bound_S_almost_all(int n, double h, double p) {
    check_h(h, p);
    if (n < 2) throw Error(ErrorCode::UnsupportedDimension, "almost-all bound needs n >= 2");
    const double half = n / 2.0;
    const double ceil_half = static_cast<double>((n + 1) / 2);
    return sum_of({pw(h, half) * std::sqrt(p), pw(h, half + ceil_half / 2.0 - 0.25) * pw(p, 0.25), pw(h, n - 0.5)},
                  n % 2 == 0 ? "even-n" : "odd-n");
}

BoundValue bound_T_almost_all(int n, double h, double p) { return bound_S_almost_all(n, h, p); }

BoundValue bound_T_almost_all_moment(int n, double h, double p, int r) {
    check_h(h, p);
    if (n < 2) throw Error(ErrorCode::UnsupportedDimension, "almost-all moment bound needs n >= 2");
    if (r < 2) throw Error(ErrorCode::MomentOrderTooSmall, "moment order must be at least 2");
    const double two_r = 2.0 * r;
    const double four_r = 4.0 * r;
    return sum_of({pw(h, n - 0.5 - (n - 1) / two_r) * pw(p, 1.0 / two_r), pw(h, n - 0.5 - 1.0 / four_r) * pw(p, 1.0 / four_r),
                   pw(h, n - (n - 1) / two_r) * pw(p, 1.0 / four_r), pw(h, n - 1.0 / four_r)},
                  "r=" + std::to_string(r));
}

double almost_all_even_simplified(int n, double h, double p) {
    return pw(h, n / 2.0) * std::sqrt(p) + pw(h, n - 0.5);
}

std::vector<double> all_primes_proof_terms(int n, double h, double p) {
    if (n < 4) throw Error(ErrorCode::UnsupportedDimension, "proof terms need n >= 4");
    const int s = n / 2;
    const int t = n - s;
    const double ratio_s = static_cast<double>(s) / d_nu(s);
    const double ratio_t = static_cast<double>(t) / d_nu(t);
    return {pw(h, n), pw(h, n + t) * pw(p, -ratio_t), pw(h, 2 * n) * pw(p, -ratio_s - ratio_t)};
}

BoundValue evaluate_bound(const BoundRequest& q) {
    switch (q.theorem) {
        case Theorem::T1: return bound_S_all_primes(q.n, q.h, q.p);
        case Theorem::T2: return bound_T_all_primes(q.n, q.h, q.p);
        case Theorem::T3: return bound_T_moment(q.n, q.h, q.p);
        case Theorem::T4: return bound_S_almost_all(q.n, q.h, q.p);
        case Theorem::T5: return bound_T_almost_all(q.n, q.h, q.p);
        case Theorem::T6: return bound_T_almost_all_moment(q.n, q.h, q.p, q.r);
    }
    throw Error(ErrorCode::UnsupportedDimension, "unknown theorem");
}

double nontrivial_threshold(Theorem theorem, int n) {
    switch (theorem) {
        case Theorem::T1:
        case Theorem::T2:
            switch (n) {
                case 4: return 1.0 / 4.0;
                case 5: return 1.0 / 5.0;
                case 6: return 1.0 / 6.0;
                case 7: return 1.0 / 6.0;
                default: break;
            }
            break;
        case Theorem::T3:
            if (n == 3) return 1.0 / 4.0;
            if (n == 4) return 1.0 / 6.0;
            break;
        case Theorem::T4:
        case Theorem::T5:
            if (n >= 2) return 1.0 / n;
            break;
        case Theorem::T6:
            if (n >= 2) return 1.0 / (2.0 * (n - 1));
            break;
    }
    throw Error(ErrorCode::UnsupportedDimension,
                std::string(to_string(theorem)) + " has no threshold for n=" + std::to_string(n));
}

double product_count_majorant(int nu, double h, double p) {
    return pw(h, nu) + pw(h, 2 * nu) * pw(p, -static_cast<double>(nu) / d_nu(nu));
}

double product_count_majorant_almost_all(int nu, double h, double p) {
    return pw(h, nu) + pw(h, 2 * nu - 0.5) / std::sqrt(p);
}

double char_moment_majorant(double h, double p, int r) {
    if (r < 1) throw Error(ErrorCode::MomentOrderTooSmall, "moment order must be at least 1");
    if (r == 1) return h * p;
    return pw(h, r) * p + pw(h, 2 * r) * std::sqrt(p);
}

}  // namespace monosum
