#include "maxdet/construct.hpp"

#include <numeric>
#include <stdexcept>

#include "maxdet/bounds.hpp"
#include "maxdet/errors.hpp"
#include "maxdet/matrix_io.hpp"

namespace maxdet {
namespace {

// Checked view of a NormalizedHadamard that may have been assembled by hand:
// the matrix must validate and the cached fields must agree with it.
void require_certified(const NormalizedHadamard& n) {
    ValidationReport report = validate_normalized(n.matrix);
    if (!report.all_pass())
        throw std::invalid_argument("input is not in three-row normal form: " +
                                    report.summary());
    if (n.excess != n.matrix.excess() || n.k * 4 != n.matrix.order())
        throw std::invalid_argument(
            "cached fields disagree with the stored matrix");
}

SignMatrix flip_top_left_block(const SignMatrix& np, int k) {
    SignMatrix::Builder b(np);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < k; ++j) {
            if (b.entry(i, j) != -1)
                throw std::logic_error(
                    "top-left block must be all -1 before the flip");
            b.set(i, j, 1);
        }
    }
    return std::move(b).build();
}

mpf_class barba_value(const BarbaBound& b) {
    mpf_class rad(0, 256);
    rad = b.radicand;
    mpf_class f(0, 256);
    mpf_sqrt(f.get_mpf_t(), rad.get_mpf_t());
    f *= mpf_class(b.power_part, 256);
    return f;
}

double ratio_against_barba(const ExactInt& det_abs, int order) {
    mpf_class num(det_abs, 256);
    mpf_class ratio = num / barba_value(barba(order));
    return ratio.get_d();
}

ExactRational make_ratio(const ExactInt& num, long den) {
    ExactRational q(num, ExactInt(den));
    q.canonicalize();
    return q;
}

std::string q_str(const ExactRational& q) { return format_mixed(q); }

}  // namespace

SignMatrix bordered(const SignMatrix& a) {
    int n = a.order();
    SignMatrix::Builder b(n + 1);
    b.set(0, 0, 1);
    for (int j = 1; j <= n; ++j) b.set(0, j, 1);
    for (int i = 1; i <= n; ++i) {
        b.set(i, 0, -1);
        for (int j = 1; j <= n; ++j) b.set(i, j, a.entry(i - 1, j - 1));
    }
    return std::move(b).build();
}

const char* method_name(Method m) {
    return m == Method::gamma ? "gamma" : "excess";
}

ConstructionResult gamma(const NormalizedHadamard& nh) {
    require_certified(nh);
    const SignMatrix& m = nh.matrix;
    int n = m.order();
    int k = n / 4;
    int ex = m.excess();

    std::vector<int> first_quarter(k);
    std::iota(first_quarter.begin(), first_quarter.end(), 0);
    SignMatrix np = m.negate_cols(first_quarter);
    SignMatrix npp = flip_top_left_block(np, k);
    SignMatrix out = bordered(npp);

    ExactInt predicted;
    mpz_ui_pow_ui(predicted.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(2 * k - 1));
    predicted *= 2 * n + ex;

    ExactInt verified = det_exact(IntMatrix::from_sign(out));
    if (abs(verified) != predicted)
        throw VerificationError(
            "construction determinant mismatch: got " + verified.get_str() +
            ", closed form says " + predicted.get_str() +
            " (order " + std::to_string(n) + ", excess " + std::to_string(ex) +
            ")\n--- normalized input ---\n" + serialize_matrix(m) +
            "--- first quarter negated ---\n" + serialize_matrix(np) +
            "--- top-left block flipped ---\n" + serialize_matrix(npp));

    double ratio = ratio_against_barba(abs(verified), n + 1);
    return ConstructionResult{std::move(out),      Method::gamma,
                              ex,                  std::move(predicted),
                              std::move(verified), ratio};
}

ConstructionResult maximal_excess_construct(const SignMatrix& h) {
    if (!h.is_hadamard())
        throw std::invalid_argument("matrix is not Hadamard");
    int n = h.order();
    int ex = h.excess();

    SignMatrix out = bordered(h);
    ExactInt det_h = det_exact(IntMatrix::from_sign(h));
    ExactRational scaled = ExactRational(det_h) *
                           make_ratio(ExactInt(n + ex), n);
    scaled.canonicalize();
    if (mpz_cmp_ui(mpq_denref(scaled.get_mpq_t()), 1) != 0)
        throw std::logic_error("bordered determinant must be an integer");
    ExactInt predicted_signed(mpq_numref(scaled.get_mpq_t()));

    ExactInt verified = det_exact(IntMatrix::from_sign(out));
    if (verified != predicted_signed)
        throw VerificationError(
            "bordering determinant mismatch: got " + verified.get_str() +
            ", closed form says " + predicted_signed.get_str() + " (order " +
            std::to_string(n) + ", excess " + std::to_string(ex) +
            ")\n--- input ---\n" + serialize_matrix(h));

    std::optional<double> ratio;
    if ((n + 1) % 2 == 1)
        ratio = ratio_against_barba(abs(verified), n + 1);
    return ConstructionResult{std::move(out),         Method::maximal_excess,
                              ex,                     abs(predicted_signed),
                              std::move(verified),    ratio};
}

bool IdentityReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string IdentityReport::summary() const {
    std::string out;
    for (const auto& c : checks) {
        if (c.pass) continue;
        if (!out.empty()) out += "; ";
        out += c.name;
        if (!c.detail.empty()) out += " (" + c.detail + ")";
    }
    return out.empty() ? "all identities passed" : out;
}

IdentityReport intermediate_checks(const NormalizedHadamard& nh) {
    require_certified(nh);
    const SignMatrix& m = nh.matrix;
    int n = m.order();
    int k = n / 4;
    int ex = m.excess();

    std::vector<int> first_quarter(k);
    std::iota(first_quarter.begin(), first_quarter.end(), 0);
    SignMatrix np_sign = m.negate_cols(first_quarter);
    IntMatrix np = IntMatrix::from_sign(np_sign);

    AdjugateResult adj = adjugate_and_det(np);
    const ExactInt& d = adj.det;
    IdentityReport report;

    if (d == 0) {
        report.checks.push_back(
            {"quarter_negated_invertible", false,
             "the quarter-negated matrix is singular"});
        return report;
    }

    // v = (N')^{-1} e3, scaled by det: v_num[i] = sum of the first three
    // columns of adj(N') in row i.
    std::vector<ExactInt> v_num(n);
    for (int i = 0; i < n; ++i)
        v_num[i] = adj.adjugate.at(i, 0) + adj.adjugate.at(i, 1) +
                   adj.adjugate.at(i, 2);

    {
        CheckResult c{"inverse_times_top_indicator", true, ""};
        ExactRational head = make_ratio(ExactInt(-3), n);
        ExactRational tail = make_ratio(ExactInt(-1), n);
        for (int i = 0; i < n; ++i) {
            ExactRational got(v_num[i], d);
            got.canonicalize();
            const ExactRational& want = i < k ? head : tail;
            if (got != want) {
                c.pass = false;
                c.detail = "entry " + std::to_string(i) + " is " + q_str(got) +
                           ", expected " + q_str(want);
                break;
            }
        }
        report.checks.push_back(std::move(c));
    }

    {
        ExactInt s = 0;
        for (int i = 0; i < k; ++i) s += v_num[i];
        ExactRational sv(s, d);
        sv.canonicalize();
        ExactRational got = 1 + 2 * sv;
        ExactRational want(-1, 2);
        report.checks.push_back(
            {"update_denominator", got == want,
             got == want ? "" : "got " + q_str(got) + ", expected -1/2"});
    }

    {
        SignMatrix npp_sign = flip_top_left_block(np_sign, k);
        ExactInt det_npp = det_exact(IntMatrix::from_sign(npp_sign));
        ExactInt det_n = det_exact(IntMatrix::from_sign(m));
        ExactInt want = (k % 2 == 0) ? ExactInt(-det_n) : det_n;
        bool ok = 2 * det_npp == want;
        report.checks.push_back(
            {"flip_halves_determinant", ok,
             ok ? ""
                : "det after flip is " + det_npp.get_str() +
                      ", base determinant " + det_n.get_str()});
    }

    {
        ExactInt total = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) total += adj.adjugate.at(i, j);
        ExactRational got(total, d);
        got.canonicalize();
        ExactRational want = make_ratio(ExactInt(ex), 2L * n) -
                             make_ratio(ExactInt(3), 2);
        bool ok = got == want;
        report.checks.push_back(
            {"inverse_excess_formula", ok,
             ok ? "" : "got " + q_str(got) + ", expected " + q_str(want)});
    }

    {
        ExactInt s = 0;
        for (int i = 0; i < n; ++i) s += v_num[i];
        ExactRational got(s, d);
        got.canonicalize();
        ExactRational want(-3, 2);
        bool ok = got == want;
        report.checks.push_back(
            {"inverse_image_column_sum", ok,
             ok ? "" : "got " + q_str(got) + ", expected -3/2"});
    }

    {
        // ((N')^T)^{-1} e_k summed: first k rows of adj(N'), all columns.
        ExactInt s = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < n; ++j) s += adj.adjugate.at(i, j);
        ExactRational got(s, d);
        got.canonicalize();
        ExactRational want = make_ratio(ExactInt(-ex), 4L * n) -
                             make_ratio(ExactInt(3), 4);
        bool ok = got == want;
        report.checks.push_back(
            {"transposed_inverse_row_sum", ok,
             ok ? "" : "got " + q_str(got) + ", expected " + q_str(want)});
    }

    return report;
}

MethodComparison compare_methods(int n, int nu, int sigma) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("order must be a positive multiple of 4");
    MethodComparison c;
    c.n = n;
    c.gamma_score = 2LL * n + nu;
    c.excess_score = static_cast<long long>(n) + sigma;
    if (c.gamma_score == c.excess_score) {
        c.tie = true;
        c.winner = Method::gamma;
    } else {
        c.winner = c.gamma_score > c.excess_score ? Method::gamma
                                                  : Method::maximal_excess;
    }
    return c;
}

}  // namespace maxdet
