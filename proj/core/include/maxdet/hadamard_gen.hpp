#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "maxdet/sign_matrix.hpp"

namespace maxdet {

inline constexpr int kDefaultOrderLimit = 256;

// Hadamard matrix of order 2^m (m >= 0), entry(i, j) = (-1)^popcount(i & j).
SignMatrix sylvester(int m, int order_limit = kDefaultOrderLimit);

// Quadratic-residue construction of order q + 1 for prime q with q % 4 == 3.
SignMatrix paley1(int q, int order_limit = kDefaultOrderLimit);

// Conference-matrix doubling of order 2(q + 1) for prime q with q % 4 == 1.
SignMatrix paley2(int q, int order_limit = kDefaultOrderLimit);

// Kronecker product; Hadamard whenever both factors are.
SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b,
                     int order_limit = kDefaultOrderLimit);

namespace detail {
class SpecParser;
}

// Parsed generator expression.  Grammar:
//   expr     := sylvester(M) | paley1(Q) | paley2(Q)
//             | kron(expr, expr) | file(PATH)
// with no whitespace; PATH may contain any character except ')'.
class GeneratorSpec {
public:
    enum class Kind { sylvester, paley1, paley2, kronecker, file };

    static GeneratorSpec parse(std::string_view text);

    Kind kind() const { return kind_; }
    int param() const { return param_; }
    const std::string& path() const { return path_; }
    const std::vector<GeneratorSpec>& children() const { return children_; }

    // Canonical round-trip form of the expression.
    std::string describe() const;

    // Builds the matrix and enforces that the result is Hadamard.
    SignMatrix build(int order_limit = kDefaultOrderLimit) const;

private:
    friend class detail::SpecParser;

    GeneratorSpec() = default;

    Kind kind_ = Kind::sylvester;
    int param_ = 0;
    std::string path_;
    std::vector<GeneratorSpec> children_;
};

}  // namespace maxdet
