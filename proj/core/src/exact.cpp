#include "maxdet/exact.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace maxdet {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw std::invalid_argument("negative matrix dimension");
    data_.resize(static_cast<std::size_t>(rows) * cols);
}

std::size_t IntMatrix::index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") out of range");
    return static_cast<std::size_t>(i) * cols_ + j;
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_sign(const SignMatrix& s) {
    int n = s.order();
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = s.entry(i, j);
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

namespace {

void require_square(const IntMatrix& a, const char* op) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(op) +
                                    " requires a square matrix");
}

void swap_rows(IntMatrix& m, int a, int b) {
    for (int j = 0; j < m.cols(); ++j) mpz_swap(m.at(a, j).get_mpz_t(),
                                                m.at(b, j).get_mpz_t());
}

// adj(i, j) = (-1)^{i+j} det(A with row j and column i removed).  Cubic per
// entry; used only as the fallback for singular inputs.
IntMatrix cofactor_adjugate(const IntMatrix& a) {
    int n = a.rows();
    IntMatrix adj(n, n);
    if (n == 0) return adj;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int r = 0, mr = 0; r < n; ++r) {
                if (r == j) continue;
                for (int c = 0, mc = 0; c < n; ++c) {
                    if (c == i) continue;
                    minor.at(mr, mc) = a.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            ExactInt d = det_exact(minor);
            adj.at(i, j) = ((i + j) % 2 == 0) ? d : -d;
        }
    }
    return adj;
}

}  // namespace

ExactInt det_exact(const IntMatrix& input) {
    require_square(input, "det_exact");
    int n = input.rows();
    if (n == 0) return 1;

    IntMatrix m = input;
    ExactInt prev = 1;
    ExactInt t1, t2;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        int p = k;
        while (p < n && m.at(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            swap_rows(m, p, k);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_mul(t1.get_mpz_t(), m.at(k, k).get_mpz_t(),
                        m.at(i, j).get_mpz_t());
                mpz_mul(t2.get_mpz_t(), m.at(i, k).get_mpz_t(),
                        m.at(k, j).get_mpz_t());
                mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                mpz_divexact(m.at(i, j).get_mpz_t(), t1.get_mpz_t(),
                             prev.get_mpz_t());
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign == 1 ? m.at(n - 1, n - 1) : ExactInt(-m.at(n - 1, n - 1));
}

AdjugateResult adjugate_and_det(const IntMatrix& a) {
    require_square(a, "adjugate_and_det");
    int n = a.rows();
    if (n == 0) return {IntMatrix(0, 0), ExactInt(1)};

    // Fraction-free Gauss-Jordan on [A | I].  When it completes, the right
    // block is sign * adj(A) and the last pivot is sign * det(A).  Entries of
    // the left block at columns already eliminated are never read again, so
    // they are not kept up to date.
    IntMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }

    ExactInt prev = 1;
    ExactInt t1, t2;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && aug.at(p, k) == 0) ++p;
        if (p == n) {
            // Singular: determinant 0, adjugate via cofactors.
            return {cofactor_adjugate(a), ExactInt(0)};
        }
        if (p != k) {
            swap_rows(aug, p, k);
            sign = -sign;
        }
        const ExactInt pivot = aug.at(k, k);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            for (int j = k + 1; j < 2 * n; ++j) {
                mpz_mul(t1.get_mpz_t(), pivot.get_mpz_t(),
                        aug.at(i, j).get_mpz_t());
                mpz_mul(t2.get_mpz_t(), aug.at(i, k).get_mpz_t(),
                        aug.at(k, j).get_mpz_t());
                mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
                mpz_divexact(aug.at(i, j).get_mpz_t(), t1.get_mpz_t(),
                             prev.get_mpz_t());
            }
            aug.at(i, k) = 0;
        }
        prev = pivot;
    }

    IntMatrix adj(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            adj.at(i, j) = sign == 1 ? aug.at(i, n + j)
                                     : ExactInt(-aug.at(i, n + j));
    ExactInt det = sign == 1 ? prev : ExactInt(-prev);
    return {std::move(adj), std::move(det)};
}

ExactInt det_rank1_update(const IntMatrix& a, std::span<const ExactInt> x,
                          std::span<const ExactInt> y) {
    require_square(a, "det_rank1_update");
    int n = a.rows();
    if (x.size() != static_cast<std::size_t>(n) ||
        y.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("update vectors must have length n");
    AdjugateResult r = adjugate_and_det(a);
    ExactInt acc = r.det;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += y[i] * r.adjugate.at(i, j) * x[j];
    return acc;
}

ExactRational excess_of_inverse(const IntMatrix& a) {
    require_square(a, "excess_of_inverse");
    AdjugateResult r = adjugate_and_det(a);
    if (r.det == 0) throw std::domain_error("excess_of_inverse: singular matrix");
    ExactInt sum = 0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) sum += r.adjugate.at(i, j);
    ExactRational q(sum, r.det);
    q.canonicalize();
    return q;
}

IntMatrix bordered(const IntMatrix& a) {
    require_square(a, "bordered");
    int n = a.rows();
    IntMatrix e(n + 1, n + 1);
    e.at(0, 0) = 1;
    for (int j = 1; j <= n; ++j) e.at(0, j) = 1;
    for (int i = 1; i <= n; ++i) {
        e.at(i, 0) = -1;
        for (int j = 1; j <= n; ++j) e.at(i, j) = a.at(i - 1, j - 1);
    }
    return e;
}

ExactInt det_of_bordered(const IntMatrix& a) {
    return det_exact(bordered(a));
}

}  // namespace maxdet
