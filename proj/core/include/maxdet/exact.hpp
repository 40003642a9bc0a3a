#pragma once

#include <gmpxx.h>

#include <span>
#include <vector>

#include "maxdet/sign_matrix.hpp"

namespace maxdet {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

// Dense matrix of arbitrary-precision integers.
class IntMatrix {
public:
    IntMatrix(int rows, int cols);
    static IntMatrix identity(int n);
    static IntMatrix from_sign(const SignMatrix& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    ExactInt& at(int i, int j) { return data_[index(i, j)]; }
    const ExactInt& at(int i, int j) const { return data_[index(i, j)]; }

    IntMatrix transposed() const;

    bool operator==(const IntMatrix& other) const = default;

private:
    std::size_t index(int i, int j) const;

    int rows_;
    int cols_;
    std::vector<ExactInt> data_;
};

// Exact determinant by fraction-free elimination.  Returns 0 for singular
// input.  The empty matrix has determinant 1.
ExactInt det_exact(const IntMatrix& a);

struct AdjugateResult {
    IntMatrix adjugate;
    ExactInt det;
};

// Adjugate and determinant together.  adj(A) * A = det(A) * I holds for every
// square A, including singular ones.
AdjugateResult adjugate_and_det(const IntMatrix& a);

// det(A + x y^T) computed as det(A) + y^T adj(A) x, without forming the
// updated matrix.
ExactInt det_rank1_update(const IntMatrix& a, std::span<const ExactInt> x,
                          std::span<const ExactInt> y);

// Sum of the entries of A^{-1}, as an exact rational.  Throws
// std::domain_error when A is singular.
ExactRational excess_of_inverse(const IntMatrix& a);

// Extends A with a top row of +1 entries and a left column whose entries are
// -1 below a +1 corner.
IntMatrix bordered(const IntMatrix& a);

// Determinant of bordered(A), equal to det(A) * (1 + excess(A^{-1})) for
// invertible A.
ExactInt det_of_bordered(const IntMatrix& a);

}  // namespace maxdet
