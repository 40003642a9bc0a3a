#include "maxdet/normalize.hpp"

#include <numeric>
#include <stdexcept>

#include "maxdet/errors.hpp"

namespace maxdet {
namespace {

// Blockwise signs of the target top rows over the four column quarters.
constexpr int kTopPattern[3][4] = {
    {+1, -1, -1, +1},
    {+1, -1, +1, -1},
    {+1, +1, -1, -1},
};

std::array<int, 3> sorted_subset(const SignMatrix& h, std::array<int, 3> rows) {
    int n = h.order();
    for (int r : rows)
        if (r < 0 || r >= n)
            throw std::invalid_argument("row index " + std::to_string(r) +
                                        " out of range for order " +
                                        std::to_string(n));
    std::array<int, 3> s = rows;
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    if (s[1] > s[2]) std::swap(s[1], s[2]);
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    if (s[0] == s[1] || s[1] == s[2])
        throw std::invalid_argument("row indices must be distinct");
    return s;
}

void require_normalizable(const SignMatrix& h) {
    int n = h.order();
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("order must be a positive multiple of 4");
    if (!h.is_hadamard())
        throw std::invalid_argument("matrix is not Hadamard");
}

}  // namespace

SignMatrix standardize_top3(const SignMatrix& h, std::array<int, 3> rows) {
    require_normalizable(h);
    std::array<int, 3> s = sorted_subset(h, rows);
    int n = h.order();
    int k = n / 4;

    std::vector<int> row_order;
    row_order.reserve(n);
    row_order.insert(row_order.end(), s.begin(), s.end());
    for (int i = 0; i < n; ++i)
        if (i != s[0] && i != s[1] && i != s[2]) row_order.push_back(i);

    // Flip columns so the first chosen row is all +, then sort columns by the
    // sign pair of the other two chosen rows: (+,+), (+,-), (-,+), (-,-).
    std::vector<int> col_sign(n);
    std::array<std::vector<int>, 4> classes;
    for (auto& c : classes) c.reserve(k);
    for (int j = 0; j < n; ++j) {
        col_sign[j] = h.entry(s[0], j);
        int a = h.entry(s[1], j) * col_sign[j];
        int b = h.entry(s[2], j) * col_sign[j];
        int cls = (a == 1 ? 0 : 2) + (b == 1 ? 0 : 1);
        classes[cls].push_back(j);
    }
    for (const auto& c : classes)
        if (static_cast<int>(c.size()) != k)
            throw std::logic_error(
                "column sign classes of a Hadamard matrix must have size n/4");

    std::vector<int> col_order;
    col_order.reserve(n);
    for (const auto& c : classes)
        col_order.insert(col_order.end(), c.begin(), c.end());

    SignMatrix::Builder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.set(i, j, h.entry(row_order[i], col_order[j]) *
                            col_sign[col_order[j]]);
    return std::move(b).build();
}

NormalizedHadamard three_normalize(const SignMatrix& h,
                                   std::array<int, 3> rows) {
    SignMatrix m = standardize_top3(h, rows);
    int n = m.order();
    int k = n / 4;

    std::vector<int> middle(2 * k);
    std::iota(middle.begin(), middle.end(), k);
    m = m.negate_cols(middle);

    std::vector<int> negative;
    for (int i = 3; i < n; ++i)
        if (m.row_sum(i) < 0) negative.push_back(i);
    if (!negative.empty()) m = m.negate_rows(negative);

    NormalizedHadamard result{m, m.excess(), m.row_sums(), k};
    ValidationReport report = validate_normalized(result.matrix);
    if (!report.all_pass())
        throw std::logic_error("three_normalize produced an invalid result: " +
                               report.summary());
    return result;
}

NormalizedHadamard NormalizedHadamard::certify(const SignMatrix& m) {
    ValidationReport report = validate_normalized(m);
    if (!report.all_pass())
        throw VerificationError("matrix is not in three-row normal form: " +
                                report.summary());
    return NormalizedHadamard{m, m.excess(), m.row_sums(), m.order() / 4};
}

bool ValidationReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string ValidationReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.pass) continue;
        if (!out.empty()) out += "; ";
        out += c.name;
        if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
    return out.empty() ? "all checks passed" : out;
}

ValidationReport validate_normalized(const SignMatrix& m) {
    ValidationReport report;
    int n = m.order();
    bool order_ok = n >= 4 && n % 4 == 0;
    report.checks.push_back({"order_multiple_of_four", order_ok,
                             order_ok ? "" : "order " + std::to_string(n)});

    // Every check below recomputes from raw entries.
    std::vector<long long> sums(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) sums[i] += m.entry(i, j);

    {
        CheckResult c{"rows_orthogonal", true, ""};
        for (int i = 0; i < n && c.pass; ++i) {
            for (int j = i + 1; j < n; ++j) {
                long long dot = 0;
                for (int t = 0; t < n; ++t) dot += m.entry(i, t) * m.entry(j, t);
                if (dot != 0) {
                    c.pass = false;
                    c.detail = "rows " + std::to_string(i) + " and " +
                               std::to_string(j) + " have inner product " +
                               std::to_string(dot);
                    break;
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"top_rows_pattern", order_ok,
                      order_ok ? "" : "order not a multiple of four"};
        if (order_ok) {
            int k = n / 4;
            for (int i = 0; i < 3 && c.pass; ++i) {
                for (int j = 0; j < n; ++j) {
                    if (m.entry(i, j) != kTopPattern[i][j / k]) {
                        c.pass = false;
                        c.detail = "row " + std::to_string(i) + ", column " +
                                   std::to_string(j) +
                                   " deviates from the fixed pattern";
                        break;
                    }
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"top_rows_zero_sum", true, ""};
        for (int i = 0; i < std::min(n, 3); ++i) {
            if (sums[i] != 0) {
                c.pass = false;
                c.detail = "row " + std::to_string(i) + " has sum " +
                           std::to_string(sums[i]);
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"row_sums_nonnegative", true, ""};
        for (int i = 0; i < n; ++i) {
            if (sums[i] < 0) {
                c.pass = false;
                c.detail = "row " + std::to_string(i) + " has sum " +
                           std::to_string(sums[i]);
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"row_sums_congruent", true, ""};
        for (int i = 3; i < n; ++i) {
            if (((sums[i] - n) % 8 + 8) % 8 != 0) {
                c.pass = false;
                c.detail = "row " + std::to_string(i) + " has sum " +
                           std::to_string(sums[i]) + ", not congruent to " +
                           std::to_string(n) + " mod 8";
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    if (n % 8 == 4 && n > 4) {
        CheckResult c{"row_sum_cap", true, ""};
        for (int i = 3; i < n; ++i) {
            if (sums[i] > n - 8) {
                c.pass = false;
                c.detail = "row " + std::to_string(i) + " has sum " +
                           std::to_string(sums[i]) + " above the cap " +
                           std::to_string(n - 8);
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        CheckResult c{"quarter_sums_equal", order_ok,
                      order_ok ? "" : "order not a multiple of four"};
        if (order_ok) {
            int k = n / 4;
            for (int i = 3; i < n && c.pass; ++i) {
                long long q0 = 0;
                for (int j = 0; j < k; ++j) q0 += m.entry(i, j);
                for (int q = 1; q < 4; ++q) {
                    long long qs = 0;
                    for (int j = q * k; j < (q + 1) * k; ++j)
                        qs += m.entry(i, j);
                    if (qs != q0) {
                        c.pass = false;
                        c.detail = "row " + std::to_string(i) +
                                   " has unequal quarter sums " +
                                   std::to_string(q0) + " and " +
                                   std::to_string(qs);
                        break;
                    }
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        long long ex = 0;
        for (long long s : sums) ex += s;
        CheckResult c{"excess_congruent", true, ""};
        if (((ex - n) % 8 + 8) % 8 != 0 ||
            (n % 8 == 0 && ((ex - n) % 16 + 16) % 16 != 0)) {
            c.pass = false;
            c.detail = "excess " + std::to_string(ex) +
                       " violates its congruence for order " +
                       std::to_string(n);
        }
        report.checks.push_back(std::move(c));
    }

    {
        long long sq = 0;
        for (long long s : sums) sq += s * s;
        bool ok = sq == static_cast<long long>(n) * n;
        report.checks.push_back(
            {"square_sum_identity", ok,
             ok ? ""
                : "row sum squares total " + std::to_string(sq) +
                      ", expected " + std::to_string(static_cast<long long>(n) * n)});
    }

    return report;
}

std::vector<int> admissible_row_sums(int order) {
    if (order < 4 || order % 4 != 0)
        throw std::invalid_argument("order must be a positive multiple of 4");
    std::vector<int> sums;
    if (order % 8 == 0) {
        for (int r = 0; r <= order; r += 8) sums.push_back(r);
    } else if (order == 4) {
        sums.push_back(4);
    } else {
        for (int r = 4; r <= order - 8; r += 8) sums.push_back(r);
    }
    return sums;
}

int RowSumProfile::total_rows() const {
    int t = 0;
    for (const auto& [r, c] : counts) t += c;
    return t;
}

long long RowSumProfile::weighted_sum() const {
    long long t = 0;
    for (const auto& [r, c] : counts) t += static_cast<long long>(r) * c;
    return t;
}

long long RowSumProfile::weighted_square_sum() const {
    long long t = 0;
    for (const auto& [r, c] : counts)
        t += static_cast<long long>(r) * r * c;
    return t;
}

RowSumProfile profile(const NormalizedHadamard& nh) {
    const SignMatrix& m = nh.matrix;
    int n = m.order();
    std::vector<int> admissible = admissible_row_sums(n);

    RowSumProfile p;
    p.order = n;
    for (int i = 3; i < n; ++i) {
        int r = m.row_sum(i);
        bool ok = false;
        for (int a : admissible) ok = ok || a == r;
        if (!ok)
            throw VerificationError("row " + std::to_string(i) + " has sum " +
                                    std::to_string(r) +
                                    " outside the admissible set");
        ++p.counts[r];
    }

    if (p.total_rows() != n - 3)
        throw VerificationError("row sum profile does not cover n - 3 rows");
    if (p.weighted_sum() != m.excess())
        throw VerificationError(
            "row sum profile does not add up to the excess");
    if (p.weighted_square_sum() != static_cast<long long>(n) * n)
        throw VerificationError(
            "row sum profile violates the square sum identity");
    return p;
}

}  // namespace maxdet
