#include "maxdet/sign_matrix.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace maxdet {
namespace {

constexpr int kMaxOrder = 32768;

int words_for(int n) { return (n + 63) / 64; }

std::uint64_t tail_mask(int n) {
    int rem = n % 64;
    return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

void check_order(int n) {
    if (n < 1 || n > kMaxOrder)
        throw std::invalid_argument("sign matrix order out of range: " +
                                    std::to_string(n));
}

void check_sign(int value) {
    if (value != 1 && value != -1)
        throw std::invalid_argument("sign entry must be +1 or -1, got " +
                                    std::to_string(value));
}

int popcount_words(std::span<const std::uint64_t> w) {
    int c = 0;
    for (std::uint64_t x : w) c += std::popcount(x);
    return c;
}

}  // namespace

SignVector SignVector::filled(int length, int value) {
    check_order(length);
    check_sign(value);
    std::vector<std::uint64_t> bits(words_for(length), 0);
    if (value == 1) {
        for (auto& w : bits) w = ~std::uint64_t{0};
        bits.back() &= tail_mask(length);
    }
    return SignVector(length, std::move(bits));
}

SignVector SignVector::from_entries(std::span<const int> entries) {
    int n = static_cast<int>(entries.size());
    check_order(n);
    std::vector<std::uint64_t> bits(words_for(n), 0);
    for (int i = 0; i < n; ++i) {
        check_sign(entries[i]);
        if (entries[i] == 1) bits[i / 64] |= std::uint64_t{1} << (i % 64);
    }
    return SignVector(n, std::move(bits));
}

int SignVector::entry(int i) const {
    if (i < 0 || i >= n_) throw std::out_of_range("sign vector index");
    return (bits_[i / 64] >> (i % 64)) & 1 ? 1 : -1;
}

int SignVector::excess() const { return 2 * popcount_words(bits_) - n_; }

SignMatrix SignMatrix::filled(int order, int value) {
    check_order(order);
    check_sign(value);
    int wpr = words_for(order);
    std::vector<std::uint64_t> bits(static_cast<std::size_t>(order) * wpr, 0);
    if (value == 1) {
        std::uint64_t tm = tail_mask(order);
        for (int i = 0; i < order; ++i) {
            for (int w = 0; w < wpr; ++w)
                bits[static_cast<std::size_t>(i) * wpr + w] =
                    (w == wpr - 1) ? tm : ~std::uint64_t{0};
        }
    }
    return SignMatrix(order, wpr, std::move(bits));
}

SignMatrix SignMatrix::from_entries(int order, std::span<const int> entries) {
    check_order(order);
    if (entries.size() != static_cast<std::size_t>(order) * order)
        throw std::invalid_argument("entry count does not match order");
    Builder b(order);
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) b.set(i, j, entries[i * order + j]);
    return std::move(b).build();
}

void SignMatrix::check_row(int i) const {
    if (i < 0 || i >= n_)
        throw std::out_of_range("row index " + std::to_string(i) +
                                " out of range for order " + std::to_string(n_));
}

void SignMatrix::check_col(int j) const {
    if (j < 0 || j >= n_)
        throw std::out_of_range("column index " + std::to_string(j) +
                                " out of range for order " + std::to_string(n_));
}

int SignMatrix::entry(int i, int j) const {
    check_row(i);
    check_col(j);
    std::uint64_t w = bits_[static_cast<std::size_t>(i) * wpr_ + j / 64];
    return (w >> (j % 64)) & 1 ? 1 : -1;
}

std::span<const std::uint64_t> SignMatrix::row_words(int i) const {
    check_row(i);
    return {bits_.data() + static_cast<std::size_t>(i) * wpr_,
            static_cast<std::size_t>(wpr_)};
}

SignVector SignMatrix::row(int i) const {
    check_row(i);
    std::vector<int> entries(n_);
    for (int j = 0; j < n_; ++j) entries[j] = entry(i, j);
    return SignVector::from_entries(entries);
}

int SignMatrix::row_sum(int i) const {
    return 2 * popcount_words(row_words(i)) - n_;
}

std::vector<int> SignMatrix::row_sums() const {
    std::vector<int> sums(n_);
    for (int i = 0; i < n_; ++i) sums[i] = row_sum(i);
    return sums;
}

int SignMatrix::excess() const {
    return 2 * popcount_words(bits_) - n_ * n_;
}

int SignMatrix::dot_rows(int i, int j) const {
    auto a = row_words(i);
    auto b = row_words(j);
    int diff = 0;
    for (int w = 0; w < wpr_; ++w) diff += std::popcount(a[w] ^ b[w]);
    return n_ - 2 * diff;
}

bool SignMatrix::is_hadamard() const {
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (dot_rows(i, j) != 0) return false;
    return true;
}

SignMatrix SignMatrix::negate_rows(std::span<const int> rows) const {
    std::vector<char> seen(n_, 0);
    for (int r : rows) {
        check_row(r);
        if (seen[r])
            throw std::invalid_argument("duplicate row " + std::to_string(r) +
                                        " in negation set");
        seen[r] = 1;
    }
    std::vector<std::uint64_t> bits = bits_;
    std::uint64_t tm = tail_mask(n_);
    for (int r : rows) {
        for (int w = 0; w < wpr_; ++w) {
            std::uint64_t& x = bits[static_cast<std::size_t>(r) * wpr_ + w];
            x = ~x;
            if (w == wpr_ - 1) x &= tm;
        }
    }
    return SignMatrix(n_, wpr_, std::move(bits));
}

SignMatrix SignMatrix::negate_cols(std::span<const int> cols) const {
    std::vector<char> seen(n_, 0);
    for (int c : cols) {
        check_col(c);
        if (seen[c])
            throw std::invalid_argument("duplicate column " + std::to_string(c) +
                                        " in negation set");
        seen[c] = 1;
    }
    std::vector<std::uint64_t> bits = bits_;
    for (int c : cols) {
        std::uint64_t mask = std::uint64_t{1} << (c % 64);
        int w = c / 64;
        for (int i = 0; i < n_; ++i)
            bits[static_cast<std::size_t>(i) * wpr_ + w] ^= mask;
    }
    return SignMatrix(n_, wpr_, std::move(bits));
}

namespace {

void check_permutation(std::span<const int> perm, int n) {
    if (perm.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("permutation length does not match order");
    std::vector<char> seen(n, 0);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p])
            throw std::invalid_argument("not a permutation of 0..n-1");
        seen[p] = 1;
    }
}

}  // namespace

SignMatrix SignMatrix::permute_rows(std::span<const int> perm) const {
    check_permutation(perm, n_);
    std::vector<std::uint64_t> bits(bits_.size());
    for (int i = 0; i < n_; ++i) {
        auto src = row_words(perm[i]);
        for (int w = 0; w < wpr_; ++w)
            bits[static_cast<std::size_t>(i) * wpr_ + w] = src[w];
    }
    return SignMatrix(n_, wpr_, std::move(bits));
}

SignMatrix SignMatrix::permute_cols(std::span<const int> perm) const {
    check_permutation(perm, n_);
    Builder b(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) b.set(i, j, entry(i, perm[j]));
    return std::move(b).build();
}

SignMatrix SignMatrix::transpose() const {
    Builder b(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) b.set(i, j, entry(j, i));
    return std::move(b).build();
}

SignMatrix::Builder::Builder(int order) : n_(order) {
    check_order(order);
    wpr_ = words_for(order);
    bits_.assign(static_cast<std::size_t>(order) * wpr_, 0);
}

SignMatrix::Builder::Builder(const SignMatrix& start)
    : n_(start.n_), wpr_(start.wpr_), bits_(start.bits_) {}

int SignMatrix::Builder::entry(int i, int j) const {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("builder index out of range");
    return (bits_[static_cast<std::size_t>(i) * wpr_ + j / 64] >> (j % 64)) & 1
               ? 1
               : -1;
}

void SignMatrix::Builder::set(int i, int j, int value) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
        throw std::out_of_range("builder index out of range");
    check_sign(value);
    std::uint64_t& w = bits_[static_cast<std::size_t>(i) * wpr_ + j / 64];
    std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (value == 1)
        w |= mask;
    else
        w &= ~mask;
}

SignMatrix SignMatrix::Builder::build() && {
    return SignMatrix(n_, wpr_, std::move(bits_));
}

}  // namespace maxdet
