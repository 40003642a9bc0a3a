#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace maxdet {

// Vector with entries +1/-1, packed one bit per entry (set bit = +1).
class SignVector {
public:
    static SignVector filled(int length, int value);
    static SignVector from_entries(std::span<const int> entries);

    int length() const { return n_; }
    int entry(int i) const;
    int excess() const;

    bool operator==(const SignVector& other) const = default;

private:
    SignVector(int n, std::vector<std::uint64_t> bits)
        : n_(n), bits_(std::move(bits)) {}

    int n_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Square matrix with entries +1/-1, packed one bit per entry (set bit = +1),
// row-major, 64 entries per word, unused tail bits kept at zero.
//
// Instances are immutable; every transform returns a new matrix.  Rows and
// columns are 0-based.  Row/column permutations use the convention
// result(i, j) = source(perm[i], j), i.e. perm maps target index to source
// index.
class SignMatrix {
public:
    class Builder;

    static SignMatrix filled(int order, int value);
    static SignMatrix from_entries(int order, std::span<const int> entries);

    int order() const { return n_; }
    int entry(int i, int j) const;
    SignVector row(int i) const;

    int row_sum(int i) const;
    std::vector<int> row_sums() const;
    int excess() const;

    // Inner product of rows i and j.
    int dot_rows(int i, int j) const;

    // True iff all distinct rows are orthogonal (orders 1 and 2 included).
    bool is_hadamard() const;

    SignMatrix negate_rows(std::span<const int> rows) const;
    SignMatrix negate_cols(std::span<const int> cols) const;
    SignMatrix permute_rows(std::span<const int> perm) const;
    SignMatrix permute_cols(std::span<const int> perm) const;
    SignMatrix transpose() const;

    bool operator==(const SignMatrix& other) const = default;

    // Word-level row access for popcount-based kernels.
    int words_per_row() const { return wpr_; }
    std::span<const std::uint64_t> row_words(int i) const;

private:
    SignMatrix(int n, int wpr, std::vector<std::uint64_t> bits)
        : n_(n), wpr_(wpr), bits_(std::move(bits)) {}

    void check_row(int i) const;
    void check_col(int j) const;

    int n_ = 0;
    int wpr_ = 0;
    std::vector<std::uint64_t> bits_;
};

class SignMatrix::Builder {
public:
    explicit Builder(int order);
    explicit Builder(const SignMatrix& start);

    int order() const { return n_; }
    int entry(int i, int j) const;
    void set(int i, int j, int value);
    SignMatrix build() &&;

private:
    int n_;
    int wpr_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace maxdet
