#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "maxdet/bounds.hpp"
#include "maxdet/catalog.hpp"
#include "maxdet/construct.hpp"
#include "maxdet/errors.hpp"
#include "maxdet/excess_search.hpp"
#include "maxdet/hadamard_gen.hpp"
#include "maxdet/matrix_io.hpp"
#include "maxdet/normalize.hpp"

namespace {

using namespace maxdet;

// All user-facing row/column indices are 1-based; the library is 0-based.

std::array<int, 3> parse_subset_arg(const std::string& text) {
    int a = 0, b = 0, c = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d,%d,%d%c", &a, &b, &c, &extra) != 3)
        throw std::invalid_argument("--subset expects three indices i,j,k");
    if (a < 1 || b < 1 || c < 1)
        throw std::invalid_argument("--subset indices are 1-based");
    return {a - 1, b - 1, c - 1};
}

std::pair<int, int> parse_range_arg(const std::string& text) {
    int a = 0, b = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d..%d%c", &a, &b, &extra) != 2 || a > b)
        throw std::invalid_argument("--range expects a..b with a <= b");
    return {a, b};
}

// Returns true when the matrix went to stdout; reports then go to stderr.
bool emit_matrix(const SignMatrix& m, const std::string& path) {
    if (path.empty()) {
        std::cout << serialize_matrix(m);
        return true;
    }
    write_matrix_file(path, m);
    return false;
}

SignMatrix read_input(const std::string& path) { return read_matrix_file(path); }

ExactInt gamma_closed_form(int n, int excess) {
    ExactInt v;
    mpz_ui_pow_ui(v.get_mpz_t(), static_cast<unsigned long>(n),
                  static_cast<unsigned long>(2 * (n / 4) - 1));
    v *= 2 * n + excess;
    return v;
}

std::string scaled_form(int n, const ExactInt& det_abs) {
    ExactInt denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 2, static_cast<unsigned long>(n));
    ExactInt kpow;
    mpz_ui_pow_ui(kpow.get_mpz_t(), static_cast<unsigned long>(n / 4),
                  static_cast<unsigned long>(2 * (n / 4) - 1));
    denom *= kpow;
    ExactRational mu(det_abs, denom);
    mu.canonicalize();
    return format_mixed(mu);
}

int cmd_gen(const std::string& expr, const std::string& out, int limit) {
    GeneratorSpec spec = GeneratorSpec::parse(expr);
    SignMatrix m = spec.build(limit);
    std::ostream& rep = out.empty() ? std::cerr : std::cout;
    bool on_stdout = emit_matrix(m, out);
    rep << "generated " << spec.describe() << ": order " << m.order()
        << ", excess " << m.excess() << "\n";
    if (!on_stdout) rep << "written to " << out << "\n";
    return 0;
}

int cmd_normalize(const std::string& file, const std::string& subset_str,
                  const std::string& out) {
    SignMatrix h = read_input(file);
    if (!h.is_hadamard())
        throw VerificationError(file + ": matrix is not Hadamard");
    std::array<int, 3> subset = parse_subset_arg(subset_str);
    NormalizedHadamard nh = three_normalize(h, subset);
    std::ostream& rep = out.empty() ? std::cerr : std::cout;
    emit_matrix(nh.matrix, out);
    rep << "order " << nh.order() << ", rows " << subset[0] + 1 << ","
        << subset[1] + 1 << "," << subset[2] + 1 << ", excess " << nh.excess
        << "\n";
    RowSumProfile p = profile(nh);
    rep << "row sums beyond the top three:";
    for (const auto& [r, c] : p.counts) rep << " " << r << " (x" << c << ")";
    rep << "\n";
    return 0;
}

int cmd_search(const std::vector<std::string>& files, int threads, int limit,
               const std::string& catalog_dir, bool show_progress) {
    SearchOptions opt;
    opt.threads = threads;
    opt.order_limit = limit;
    std::uint64_t last_pct = ~std::uint64_t{0};
    if (show_progress) {
        opt.progress = [&last_pct](std::uint64_t done, std::uint64_t total) {
            std::uint64_t pct = total == 0 ? 100 : done * 100 / total;
            if (pct == last_pct) return;
            last_pct = pct;
            std::fprintf(stderr, "\rscanning %3" PRIu64 "%% (%" PRIu64 "/%" PRIu64 ")",
                         pct, done, total);
            if (done == total) std::fprintf(stderr, "\n");
            std::fflush(stderr);
        };
    }

    std::vector<SignMatrix> sources;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, std::string>> read_failures;
    for (const std::string& f : files) {
        try {
            sources.push_back(read_input(f));
            labels.push_back(f);
        } catch (const std::exception& e) {
            read_failures.emplace_back(f, e.what());
        }
    }

    MultiSearchResult mr = max_excess_multi(sources, labels, opt);

    std::optional<RecordsCatalog> catalog;
    if (!catalog_dir.empty()) catalog.emplace(catalog_dir);

    bool any_error = !read_failures.empty();
    for (const auto& [f, err] : read_failures)
        std::cout << "== " << f << " ==\nerror: " << err << "\n";

    for (const MultiSearchEntry& entry : mr.entries) {
        std::cout << "== " << entry.label << " ==\n";
        if (!entry.result) {
            std::cout << "error: " << entry.error << "\n";
            any_error = true;
            continue;
        }
        const SearchResult& r = *entry.result;
        int n = r.best_matrix.order();
        ExactInt predicted = gamma_closed_form(n, r.best_excess);
        std::cout << "order " << n << ", subsets evaluated "
                  << r.subsets_evaluated << "\n";
        std::cout << "best excess " << r.best_excess << " at rows "
                  << r.best_subset[0] + 1 << "," << r.best_subset[1] + 1 << ","
                  << r.best_subset[2] + 1 << "\n";
        std::cout << "order-" << n + 1
                  << " determinant via construction: " << predicted.get_str()
                  << "\n";
        std::cout << "histogram:\n";
        for (const auto& [e, c] : r.histogram)
            std::cout << "  " << e << ": " << c << "\n";
        if (catalog) {
            bool stored = catalog->offer(r.best_matrix, predicted, "gamma",
                                         entry.label);
            std::cout << "catalog: record "
                      << (stored ? "updated" : "kept") << " for order " << n
                      << "\n";
        }
    }

    if (mr.best_index) {
        const MultiSearchEntry& best = mr.entries[*mr.best_index];
        std::cout << "overall best: " << best.label << " with excess "
                  << best.result->best_excess << "\n";
    }
    return any_error ? 2 : 0;
}

int cmd_construct(const std::string& file, const std::string& method,
                  const std::string& out) {
    SignMatrix m = read_input(file);
    ConstructionResult res = [&]() -> ConstructionResult {
        if (method == "gamma") return gamma(NormalizedHadamard::certify(m));
        if (!m.is_hadamard())
            throw VerificationError(file + ": matrix is not Hadamard");
        return maximal_excess_construct(m);
    }();

    std::ostream& rep = out.empty() ? std::cerr : std::cout;
    emit_matrix(res.output, out);
    int n = m.order();
    rep << "method " << method_name(res.method) << ": order " << n << " -> "
        << res.output.order() << "\n";
    rep << "source excess " << res.source_excess << "\n";
    rep << "predicted |det| " << res.predicted_det.get_str() << "\n";
    rep << "verified det   " << res.verified_det.get_str() << "\n";
    if (n % 4 == 0)
        rep << "scaled form    " << scaled_form(n, res.predicted_det) << "\n";
    if (res.barba_ratio) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", *res.barba_ratio);
        rep << "fraction of the determinant bound: " << buf << "\n";
    }
    return 0;
}

int cmd_bounds(int n) {
    BoundReport r = bound_report(n);
    std::printf("order n = %d (k = %d)\n", r.n, r.k);
    std::printf("rho_bar             = %d\n", r.rho);
    std::printf("nu_star             = %s\n",
                format_mixed(r.nu_star_value).c_str());
    std::printf("nu_star_sharp       = %s\n",
                r.nu_star_sharp_value.get_str().c_str());
    ExactInt col = r.nu_star_sharp_value + n;
    std::printf("n + nu_star_sharp   = %s\n", col.get_str().c_str());
    std::printf("floor(n^(3/2))      = %s\n",
                r.power_bound_floor.get_str().c_str());
    std::string label = "B(" + std::to_string(n + 1) + ")";
    std::string exact_note =
        r.barba_next.exact
            ? " (exact: " + r.barba_next.exact_value.get_str() + ")"
            : "";
    std::printf("%-20s= %s%s\n", label.c_str(), r.barba_next.approx.c_str(),
                exact_note.c_str());
    if (r.comparison) {
        std::printf("envelope: lower %s, upper %s, exceeds n^(3/2): %s\n",
                    r.comparison->lower_envelope ? "holds" : "FAILS",
                    r.comparison->upper_envelope ? "holds" : "FAILS",
                    r.comparison->above_power_bound ? "yes" : "no");
    }
    if (r.table_row) {
        const TableRow& t = *r.table_row;
        std::printf("published: n+nu = %d, sigma = %d, sigma_star = %d, mu = %s\n",
                    t.n_plus_nu, t.sigma, t.sigma_star, t.mu);
    }
    return 0;
}

int cmd_verify(const std::string& file, bool normalized,
               std::optional<int> claim_excess, const std::string& claim_det,
               bool run_gamma) {
    SignMatrix m = read_input(file);
    int n = m.order();
    bool ok = true;
    std::printf("order %d\n", n);

    bool hadamard = m.is_hadamard();
    std::printf("%-24s %s\n", "rows_orthogonal", hadamard ? "PASS" : "FAIL");
    ok = ok && hadamard;

    bool need_normal = normalized || claim_excess.has_value() || run_gamma;
    if (need_normal) {
        ValidationReport report = validate_normalized(m);
        for (const CheckResult& c : report.checks) {
            std::printf("%-24s %s%s%s\n", c.name.c_str(),
                        c.pass ? "PASS" : "FAIL", c.detail.empty() ? "" : "  ",
                        c.detail.c_str());
        }
        ok = ok && report.all_pass();
    }

    if (claim_excess) {
        int ex = m.excess();
        bool match = ex == *claim_excess;
        std::printf("%-24s %s  (matrix has %d, claim %d)\n", "claimed_excess",
                    match ? "PASS" : "FAIL", ex, *claim_excess);
        ok = ok && match;
        if (n % 4 == 0 && n >= 4) {
            ExactInt cap = nu_star_sharp(n);
            bool below = ExactInt(*claim_excess) <= cap;
            std::printf("%-24s %s  (bound %s)\n", "excess_within_bound",
                        below ? "PASS" : "FAIL", cap.get_str().c_str());
            ok = ok && below;
        }
    }

    if (!claim_det.empty()) {
        ExactInt want;
        if (mpz_set_str(want.get_mpz_t(), claim_det.c_str(), 10) != 0)
            throw std::invalid_argument("--claim-det expects a decimal integer");
        ExactInt det = det_exact(IntMatrix::from_sign(m));
        bool match = det == want || abs(det) == want;
        std::printf("%-24s %s  (matrix determinant %s)\n", "claimed_det",
                    match ? "PASS" : "FAIL", det.get_str().c_str());
        ok = ok && match;
    }

    if (run_gamma && ok) {
        ConstructionResult res = gamma(NormalizedHadamard::certify(m));
        std::printf("%-24s PASS  (order %d, det %s)\n", "construction_det",
                    res.output.order(), res.verified_det.get_str().c_str());
    }

    std::printf("%s\n", ok ? "OK" : "verification failed");
    return ok ? 0 : 2;
}

int cmd_table(const std::string& range_str, const std::string& catalog_dir) {
    auto [lo, hi] = parse_range_arg(range_str);
    std::optional<RecordsCatalog> catalog;
    if (!catalog_dir.empty()) catalog.emplace(catalog_dir);

    bool any_flag = false;
    std::printf("%5s %7s %7s %7s %7s %7s %9s %9s %9s %8s %6s  %s\n", "n+1",
                "n+nu*", "sig*", "n+nu", "sigma", "found", "mu", "mu_gam",
                "mu_bor", "beta", "ratio", "flags");
    for (const TableRow& t : reference_table()) {
        if (t.order_plus_one < lo || t.order_plus_one > hi) continue;
        int n = t.order_plus_one - 1;
        std::string flags;

        ExactInt sharp_col = nu_star_sharp(n) + n;
        if (sharp_col != t.n_plus_nu_star) flags += " bound!";
        if (t.n_plus_nu > t.n_plus_nu_star) flags += " known>bound!";

        ExactRational mu = parse_mixed(t.mu);
        ExactInt decoded = mu_decode(n, mu);

        BarbaBound bb = barba(n + 1);
        mpf_class b_val(0, 256);
        {
            mpf_class rad(0, 256);
            rad = bb.radicand;
            mpf_sqrt(b_val.get_mpf_t(), rad.get_mpf_t());
            b_val *= mpf_class(bb.power_part, 256);
        }
        mpf_class denom(0, 256);
        {
            ExactInt d;
            mpz_ui_pow_ui(d.get_mpz_t(), 2, static_cast<unsigned long>(n));
            ExactInt kp;
            mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(n / 4),
                          static_cast<unsigned long>(2 * (n / 4) - 1));
            d *= kp;
            denom = mpf_class(d, 256);
        }
        double beta_c = mpf_class(b_val / denom).get_d();
        mpf_class mu_f(0, 256);
        mpf_set_q(mu_f.get_mpf_t(), mu.get_mpq_t());
        double ratio_c = mpf_class(mu_f * denom / b_val).get_d();
        if (std::abs(beta_c - t.beta) > 0.0051) flags += " beta!";
        // The published ratio column is rounded from a different intermediate
        // at one row (n = 80: 0.7724 printed as 0.78), so allow a little more
        // than half a unit in the last place; real typos are at least 0.01 off.
        if (std::abs(ratio_c - t.ratio) > 0.008) flags += " ratio!";
        (void)decoded;

        ExactRational mu_gamma(ExactInt(n + t.n_plus_nu), ExactInt(4));
        mu_gamma.canonicalize();
        ExactRational mu_border(ExactInt(n + t.sigma), ExactInt(4));
        mu_border.canonicalize();
        if (mu < mu_gamma || mu < mu_border) flags += " record<construction!";

        std::string found = "-";
        if (catalog) {
            if (const CatalogEntry* e = catalog->find(n))
                found = std::to_string(n + e->best_excess);
        }

        if (!flags.empty()) any_flag = true;
        std::printf("%5d %7d %7d %7d %7d %7s %9s %9s %9s %8.2f %6.2f %s\n",
                    t.order_plus_one, t.n_plus_nu_star, t.sigma_star,
                    t.n_plus_nu, t.sigma, found.c_str(), t.mu,
                    format_mixed(mu_gamma).c_str(),
                    format_mixed(mu_border).c_str(), beta_c, ratio_c,
                    flags.empty() ? "" : flags.c_str());
    }
    std::printf("%s\n", any_flag ? "MISMATCHES PRESENT" : "all rows consistent");
    return any_flag ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact constructions and bounds for maximal-determinant sign "
                 "matrices of order n+1 built from Hadamard matrices"};
    app.set_version_flag("--version", "maxdet 1.0.0");
    app.require_subcommand(1);

    std::string gen_expr, gen_out;
    int gen_limit = kDefaultOrderLimit;
    auto* gen = app.add_subcommand("gen", "Generate a Hadamard matrix");
    gen->add_option("expr", gen_expr,
                    "Generator expression, e.g. paley1(11) or "
                    "kron(sylvester(1),paley2(5)) or file(h.mat)")
        ->required();
    gen->add_option("-o,--output", gen_out, "Write the matrix to this file");
    gen->add_option("--limit", gen_limit, "Largest allowed order");

    std::string norm_file, norm_subset = "1,2,3", norm_out;
    auto* norm = app.add_subcommand(
        "normalize", "Put a Hadamard matrix into three-row normal form");
    norm->add_option("file", norm_file, "Matrix file")->required();
    norm->add_option("--subset", norm_subset, "Rows to move on top (1-based)");
    norm->add_option("-o,--output", norm_out, "Write the result to this file");

    std::vector<std::string> search_files;
    int search_threads = 0, search_limit = kDefaultOrderLimit;
    std::string search_catalog;
    bool search_progress = false;
    auto* search = app.add_subcommand(
        "search", "Scan all row triples for the maximum normalized excess");
    search->add_option("files", search_files, "Matrix files")->required();
    search->add_option("--threads", search_threads,
                       "Worker threads (0 = all cores)");
    search->add_option("--limit", search_limit, "Largest allowed order");
    search->add_option("--catalog", search_catalog,
                       "Record directory to update with results");
    search->add_flag("--progress", search_progress, "Progress on stderr");

    std::string cons_file, cons_method, cons_out;
    auto* cons = app.add_subcommand(
        "construct", "Build the order n+1 matrix from an order n input");
    cons->add_option("file", cons_file, "Matrix file")->required();
    cons->add_option("--method", cons_method, "gamma or excess")
        ->required()
        ->check(CLI::IsMember({"gamma", "excess"}));
    cons->add_option("-o,--output", cons_out, "Write the result to this file");

    int bounds_n = 0;
    auto* bounds = app.add_subcommand("bounds",
                                      "Excess and determinant bounds for one order");
    bounds->add_option("n", bounds_n, "Hadamard order (multiple of 4)")
        ->required();

    std::string verify_file, verify_det;
    std::optional<int> verify_excess;
    bool verify_normalized = false, verify_gamma = false;
    auto* verify = app.add_subcommand("verify", "Re-check a matrix file");
    verify->add_option("file", verify_file, "Matrix file")->required();
    verify->add_flag("--normalized", verify_normalized,
                     "Require three-row normal form");
    verify->add_option("--claim-excess", verify_excess,
                       "Fail unless the excess equals this value");
    verify->add_option("--claim-det", verify_det,
                       "Fail unless |det| (or det) equals this value");
    verify->add_flag("--gamma", verify_gamma,
                     "Run the construction and verify its determinant");

    std::string table_range = "5..101", table_catalog;
    auto* table = app.add_subcommand(
        "table", "Reproduce the published bound/record table and cross-check it");
    table->add_option("--range", table_range, "Orders n+1 to show, as a..b");
    table->add_option("--catalog", table_catalog,
                      "Show records from this catalog directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*gen) return cmd_gen(gen_expr, gen_out, gen_limit);
        if (*norm) return cmd_normalize(norm_file, norm_subset, norm_out);
        if (*search)
            return cmd_search(search_files, search_threads, search_limit,
                              search_catalog, search_progress);
        if (*cons) return cmd_construct(cons_file, cons_method, cons_out);
        if (*bounds) return cmd_bounds(bounds_n);
        if (*verify)
            return cmd_verify(verify_file, verify_normalized, verify_excess,
                              verify_det, verify_gamma);
        if (*table) return cmd_table(table_range, table_catalog);
    } catch (const VerificationError& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
