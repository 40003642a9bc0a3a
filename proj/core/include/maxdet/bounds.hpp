#pragma once

#include <optional>
#include <span>
#include <string>

#include "maxdet/exact.hpp"

namespace maxdet {

// Determinant bound for odd-order sign matrices:
//   B(m) = (m - 1)^((m-1)/2) * sqrt(2m - 1).
// Exact (an integer) precisely when 2m - 1 is a perfect square.
struct BarbaBound {
    int m = 0;
    ExactInt power_part;          // (m-1)^((m-1)/2)
    ExactInt radicand;            // 2m - 1
    bool exact = false;
    ExactInt exact_value;         // set when exact
    std::string approx;           // 12 significant digits
    double approx_double = 0.0;
};

BarbaBound barba(int m);

// Row sum level at which the two-level excess envelope peaks.  Always the
// midpoint of two adjacent admissible row-sum values for order n.
int rho_bar(int n);

// Excess bound for three-row normalized matrices of order n = 4k:
//   nu_star(n) = rho_bar * (n - 3) / 2 + (n - 4)(n - 12) / (2 * rho_bar).
ExactRational nu_star(int n);

// nu_star rounded down to the nearest value meeting the excess congruences:
//   n = 4 mod 8:   8 * floor(v/8 - 1/2) + 4
//   n = 8 mod 16: 16 * floor(v/16 - 1/2) + 8
//   n = 0 mod 16: 16 * floor(v/16)
ExactInt nu_star_sharp(int n);

// One row of the published reference table for orders n + 1 = 5, 9, ..., 101.
struct TableRow {
    int order_plus_one;        // n + 1
    int n_plus_nu_star;        // n + nu_star_sharp(n)
    int sigma_star;            // largest excess over the listed classes
    int n_plus_nu;             // best published n + excess
    int sigma;                 // largest published Hadamard excess
    const char* mu;            // scaled record determinant, exact mixed form
    double beta;               // scaled Barba bound, two decimals
    double ratio;              // mu / beta as published, two decimals
};

std::span<const TableRow> reference_table();
const TableRow* table_find(int n);          // keyed by n, nullptr if absent
const TableRow& table_at(int n);            // throws std::out_of_range

// Reconstructs a determinant from its scaled form: mu * 2^n * k^(2k-1) with
// k = n/4.  Throws VerificationError when the product is not an integer.
ExactInt mu_decode(int n, const ExactRational& mu);

// Exact comparisons of nu_star against its algebraic envelope, done by
// squaring (no floating point).
struct BoundComparison {
    int n = 0;
    ExactRational nu_star_value;
    bool lower_envelope = false;   // sqrt((n-3)(n-4)(n-12)) <= nu_star
    bool upper_envelope = false;   // nu_star <= n * sqrt(n-3)
    bool above_power_bound = false;  // nu_star + n > n^(3/2)
};

BoundComparison compare_bounds(int n);

// Everything the bounds subcommand prints for one order.
struct BoundReport {
    int n = 0;
    int k = 0;
    int rho = 0;
    ExactRational nu_star_value;
    ExactInt nu_star_sharp_value;
    BarbaBound barba_next;           // B(n + 1)
    ExactInt power_bound_floor;      // floor(n^(3/2))
    std::optional<BoundComparison> comparison;  // set when n >= 12
    const TableRow* table_row = nullptr;        // set when tabulated
};

BoundReport bound_report(int n);

// "a b/c" mixed-fraction formatting and parsing for exact rationals.
std::string format_mixed(const ExactRational& q);
ExactRational parse_mixed(const std::string& text);

}  // namespace maxdet
