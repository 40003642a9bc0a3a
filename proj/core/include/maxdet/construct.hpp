#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxdet/exact.hpp"
#include "maxdet/normalize.hpp"
#include "maxdet/sign_matrix.hpp"

namespace maxdet {

// Extends A with a top row of +1 entries and a left column of -1 entries
// below a +1 corner.
SignMatrix bordered(const SignMatrix& a);

enum class Method { gamma, maximal_excess };

const char* method_name(Method m);

struct ConstructionResult {
    SignMatrix output;
    Method method = Method::gamma;
    int source_excess = 0;
    ExactInt predicted_det;   // magnitude from the closed form
    ExactInt verified_det;    // signed, recomputed from the output matrix
    // |verified_det| / B(n+1); absent only when the output order is even.
    std::optional<double> barba_ratio;
};

// The gamma construction: negate the first column quarter of N, flip the
// top-left 3 x k block back to +1, then border.  The output has order
// 4k + 1 and determinant magnitude n^(2k-1) * (2n + excess(N)).  A mismatch
// between the closed form and the recomputed determinant throws
// VerificationError carrying a full dump of the intermediate matrices.
ConstructionResult gamma(const NormalizedHadamard& n);

// Bordering an arbitrary Hadamard matrix directly multiplies its determinant
// by (n + excess(H)) / n.
ConstructionResult maximal_excess_construct(const SignMatrix& h);

// Exact worth of each intermediate step of gamma, checked on concrete data:
// statements about N' = N with the first quarter negated, and N'' = N' with
// the top-left 3 x k block flipped to +1.  All six must hold for every valid
// input; a report is returned so callers can show the evidence.
struct IdentityReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
    std::string summary() const;
};

IdentityReport intermediate_checks(const NormalizedHadamard& n);

// Which construction wins at order n for the given known excesses: compares
// 2n + nu (gamma route) against n + sigma (direct bordering route); both
// scale the same Hadamard determinant.
struct MethodComparison {
    int n = 0;
    long long gamma_score = 0;
    long long excess_score = 0;
    Method winner = Method::gamma;
    bool tie = false;
};

MethodComparison compare_methods(int n, int nu, int sigma);

}  // namespace maxdet
