#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "maxdet/sign_matrix.hpp"

namespace maxdet {

// A Hadamard matrix of order n = 4k in three-row normal form: the first three
// rows are, blockwise over the four column quarters,
//   row 0:  + - - +
//   row 1:  + - + -
//   row 2:  + + - -
// and every row sum is nonnegative.
struct NormalizedHadamard {
    SignMatrix matrix;
    int excess = 0;
    std::vector<int> row_sums;
    int k = 0;

    int order() const { return matrix.order(); }

    // Validates an arbitrary matrix and wraps it; throws VerificationError
    // listing every failed check when it is not in three-row normal form.
    static NormalizedHadamard certify(const SignMatrix& m);
};

// Moves the chosen rows to the top (ascending) and sorts columns into the
// four sign classes (+,+), (+,-), (-,+), (-,-) formed by rows two and three
// after all columns are flipped to make the first chosen row positive.
// Column order within a class is preserved.
SignMatrix standardize_top3(const SignMatrix& h, std::array<int, 3> rows);

// Full normalization: standardize, negate the two middle column quarters to
// reach the fixed top-row pattern, then negate rows with negative sums.
// Rows with zero sum are left alone.
NormalizedHadamard three_normalize(const SignMatrix& h,
                                   std::array<int, 3> rows);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string summary() const;
};

// Re-derives every normal-form property from raw entries.  Shares no code
// with three_normalize, so the two act as independent witnesses.
ValidationReport validate_normalized(const SignMatrix& m);

// Row sums admissible for rows beyond the top three, in increasing order:
// congruent to n mod 8, within [0, n], and capped at n - 8 when
// n = 4 mod 8 (except n = 4, where the cap does not apply).
std::vector<int> admissible_row_sums(int order);

// Multiset of row sums over rows 4..n, keyed by sum value.
struct RowSumProfile {
    int order = 0;
    std::map<int, int> counts;

    int total_rows() const;
    long long weighted_sum() const;
    long long weighted_square_sum() const;
};

// Profile of a certified matrix.  Throws VerificationError if any row sum
// falls outside the admissible set or the counting identities fail, which
// signals a corrupted input.
RowSumProfile profile(const NormalizedHadamard& nh);

}  // namespace maxdet
