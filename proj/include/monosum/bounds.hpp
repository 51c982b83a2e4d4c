#pragma once

/**
 * @file bounds.hpp
 * @brief Explicit right-hand sides of the monomial-sum bounds.
 *
 * Every bound is evaluated with its implied constant and h^{o(1)} factor set
 * to 1; calibration against observed sums happens in the harness. Side
 * lengths are real so that formulas can be probed at h = p^α exactly.
 */

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "monosum/error.hpp"

namespace monosum {

/// T1: all primes, S sums, 4 ≤ n ≤ 7.  T2: same display for T sums.
/// T3: T sums via moments, n ∈ {3,4}.  T4/T5: almost all primes, S/T sums.
/// T6: almost all primes, T sums via the 2r-th moment.
enum class Theorem { T1, T2, T3, T4, T5, T6 };

std::string_view to_string(Theorem t) noexcept;
/// Parses "T1".."T6"; throws ConfigInvalid.
Theorem parse_theorem(std::string_view s);
/// T1 and T4 bound S sums, the rest bound T sums.
bool bounds_character_sum(Theorem t) noexcept;

struct BoundRequest {
    Theorem theorem = Theorem::T1;
    int n = 4;
    double h = 1.0;
    double p = 3.0;
    int r = 2;
};

struct BoundValue {
    double value = 0.0;
    std::string branch;
    /// The summands of the displayed formula, in printed order.
    std::vector<double> terms;
};

/// d_2 = 2, d_ν = max{ν²-2ν-2, ν²-3ν+4} for ν ≥ 3.
int d_nu(int nu);

BoundValue bound_S_all_primes(int n, double h, double p);
BoundValue bound_T_all_primes(int n, double h, double p);
/// Piecewise in h with half-open ranges; throws OutOfRange outside the table.
BoundValue bound_T_moment(int n, double h, double p);
BoundValue bound_S_almost_all(int n, double h, double p);
BoundValue bound_T_almost_all(int n, double h, double p);
/// Throws MomentOrderTooSmall for r < 2.
BoundValue bound_T_almost_all_moment(int n, double h, double p, int r);

/// Two-term form h^{n/2} p^{1/2} + h^{n-1/2} valid for even n.
double almost_all_even_simplified(int n, double h, double p);

/// The three terms under the square root in the all-primes proof:
/// h^n, h^{n+t} p^{-t/d_t}, h^{2n} p^{-s/d_s - t/d_t}.
std::vector<double> all_primes_proof_terms(int n, double h, double p);

BoundValue evaluate_bound(const BoundRequest& request);

/// α such that the bound is nontrivial once h ≥ p^{α+ε}.
double nontrivial_threshold(Theorem theorem, int n);

/// h^ν + h^{2ν} p^{-ν/d_ν}
double product_count_majorant(int nu, double h, double p);
/// h^ν + h^{2ν-1/2} p^{-1/2}
double product_count_majorant_almost_all(int nu, double h, double p);
/// h p for r = 1, h^r p + h^{2r} p^{1/2} for r ≥ 2.
double char_moment_majorant(double h, double p, int r);

}  // namespace monosum
