#include "maxdet/bounds.hpp"

#include <array>
#include <stdexcept>

#include "maxdet/errors.hpp"

namespace maxdet {
namespace {

void require_order(int n) {
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("order must be a positive multiple of 4");
}

ExactInt floor_rational(const ExactRational& q) {
    ExactInt out;
    mpz_fdiv_q(out.get_mpz_t(), mpq_numref(q.get_mpq_t()),
               mpq_denref(q.get_mpq_t()));
    return out;
}

// Value = 0.mantissa * 10^exp, printed with the requested significant digits.
std::string format_sig(const mpf_class& f, int digits) {
    if (f == 0) return "0";
    mp_exp_t exp;
    std::string s = f.get_str(exp, 10, digits);
    bool neg = !s.empty() && s[0] == '-';
    if (neg) s.erase(0, 1);
    std::string out;
    if (exp >= 1 && exp <= 15) {
        if (static_cast<mp_exp_t>(s.size()) <= exp)
            out = s + std::string(exp - s.size(), '0');
        else
            out = s.substr(0, exp) + "." + s.substr(exp);
    } else if (exp <= 0 && exp > -4) {
        out = "0." + std::string(-exp, '0') + s;
    } else {
        out = s.substr(0, 1);
        if (s.size() > 1) out += "." + s.substr(1);
        out += "e" + std::to_string(exp - 1);
    }
    return neg ? "-" + out : out;
}

constexpr std::array<TableRow, 25> kTable = {{
    {5, 8, 8, 8, 8, "3", 3.00, 1.00},
    {9, 16, 20, 16, 20, "7", 8.25, 0.85},
    {13, 48, 36, 48, 36, "15", 15.00, 1.00},
    {17, 48, 64, 48, 64, "20", 22.98, 0.87},
    {21, 96, 80, 96, 80, "29", 32.02, 0.91},
    {25, 96, 112, 96, 112, "42", 42.00, 1.00},
    {29, 152, 140, 152, 140, "45 5/7", 52.85, 0.87},
    {33, 160, 172, 160, 172, "55 1/8", 64.50, 0.85},
    {37, 216, 216, 216, 216, "72", 76.90, 0.94},
    {41, 240, 244, 240, 244, "90", 90.00, 1.00},
    {45, 288, 280, 288, 280, "83", 103.77, 0.80},
    {49, 336, 324, 336, 324, "96", 118.19, 0.81},
    {53, 368, 364, 368, 364, "105", 133.21, 0.79},
    {57, 448, 408, 384, 400, "114", 148.82, 0.77},
    {61, 456, 452, 456, 440, "165", 165.00, 1.00},
    {65, 560, 512, 528, 512, "148", 181.73, 0.81},
    {69, 552, 548, 552, 544, "155", 198.98, 0.78},
    {73, 656, 600, 624, 580, "174", 216.75, 0.80},
    {77, 656, 652, 656, 628, "183", 235.02, 0.78},
    {81, 752, 704, 704, 704, "196", 253.77, 0.78},
    {85, 768, 756, 768, 756, "213", 273.00, 0.78},
    {89, 864, 812, 768, 792, "220", 292.69, 0.75},
    {93, 888, 872, 864, 828, "239", 312.83, 0.76},
    {97, 976, 932, 928, 920, "256", 333.42, 0.77},
    {101, 1016, 1000, 984, 1000, "275", 354.44, 0.78},
}};

}  // namespace

BarbaBound barba(int m) {
    if (m < 1 || m % 2 == 0)
        throw std::invalid_argument("the determinant bound needs an odd order");
    BarbaBound b;
    b.m = m;
    mpz_ui_pow_ui(b.power_part.get_mpz_t(), static_cast<unsigned long>(m - 1),
                  static_cast<unsigned long>((m - 1) / 2));
    b.radicand = 2 * m - 1;
    b.exact = mpz_perfect_square_p(b.radicand.get_mpz_t()) != 0;
    if (b.exact) {
        ExactInt root;
        mpz_sqrt(root.get_mpz_t(), b.radicand.get_mpz_t());
        b.exact_value = b.power_part * root;
    }
    mpf_class f(0, 256);
    mpf_class rad(0, 256);
    rad = b.radicand;
    mpf_sqrt(f.get_mpf_t(), rad.get_mpf_t());
    f *= mpf_class(b.power_part, 256);
    b.approx = format_sig(f, 12);
    b.approx_double = f.get_d();
    return b;
}

int rho_bar(int n) {
    require_order(n);
    long long nn = static_cast<long long>(n) * n;
    long long m = n - 3;
    if (n % 8 == 0) {
        long long t = 1;
        while (64 * t * t * m < nn) ++t;
        return static_cast<int>(8 * t - 4);
    }
    long long t = 0;
    while (16 * (2 * t + 1) * (2 * t + 1) * m < nn) ++t;
    return static_cast<int>(8 * std::max(1LL, t));
}

ExactRational nu_star(int n) {
    int rho = rho_bar(n);
    ExactRational a(ExactInt(static_cast<long>(rho) * (n - 3)), ExactInt(2));
    a.canonicalize();
    ExactRational b(ExactInt(static_cast<long>(n - 4) * (n - 12)),
                    ExactInt(2L * rho));
    b.canonicalize();
    return a + b;
}

ExactInt nu_star_sharp(int n) {
    ExactRational v = nu_star(n);
    if (n % 8 == 4) {
        ExactRational shifted = (v - 4) / 8;
        shifted.canonicalize();
        return 8 * floor_rational(shifted) + 4;
    }
    if (n % 16 == 8) {
        ExactRational shifted = (v - 8) / 16;
        shifted.canonicalize();
        return 16 * floor_rational(shifted) + 8;
    }
    ExactRational shifted = v / 16;
    shifted.canonicalize();
    return 16 * floor_rational(shifted);
}

std::span<const TableRow> reference_table() { return kTable; }

const TableRow* table_find(int n) {
    for (const TableRow& row : kTable)
        if (row.order_plus_one == n + 1) return &row;
    return nullptr;
}

const TableRow& table_at(int n) {
    const TableRow* row = table_find(n);
    if (!row)
        throw std::out_of_range("order " + std::to_string(n) +
                                " is not in the reference table");
    return *row;
}

ExactInt mu_decode(int n, const ExactRational& mu) {
    require_order(n);
    int k = n / 4;
    ExactInt factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), 2, static_cast<unsigned long>(n));
    ExactInt kpow;
    mpz_ui_pow_ui(kpow.get_mpz_t(), static_cast<unsigned long>(k),
                  static_cast<unsigned long>(2 * k - 1));
    factor *= kpow;
    ExactRational value = mu;
    value.canonicalize();
    value *= ExactRational(factor);
    if (mpz_cmp_ui(mpq_denref(value.get_mpq_t()), 1) != 0)
        throw VerificationError("scaled determinant " + format_mixed(mu) +
                                " does not decode to an integer at order " +
                                std::to_string(n));
    return ExactInt(mpq_numref(value.get_mpq_t()));
}

BoundComparison compare_bounds(int n) {
    if (n < 12 || n % 4 != 0)
        throw std::invalid_argument(
            "envelope comparison needs a multiple of 4 that is at least 12");
    BoundComparison c;
    c.n = n;
    c.nu_star_value = nu_star(n);

    ExactInt p(mpq_numref(c.nu_star_value.get_mpq_t()));
    ExactInt q(mpq_denref(c.nu_star_value.get_mpq_t()));
    ExactInt nz(n);

    // All three comparisons are squared; every quantity involved is >= 0.
    c.lower_envelope = (nz - 3) * (nz - 4) * (nz - 12) * q * q <= p * p;
    c.upper_envelope = p * p <= nz * nz * (nz - 3) * q * q;
    ExactInt shifted = p + nz * q;
    c.above_power_bound = shifted * shifted > nz * nz * nz * q * q;
    return c;
}

BoundReport bound_report(int n) {
    require_order(n);
    BoundReport r;
    r.n = n;
    r.k = n / 4;
    r.rho = rho_bar(n);
    r.nu_star_value = nu_star(n);
    r.nu_star_sharp_value = nu_star_sharp(n);
    r.barba_next = barba(n + 1);
    ExactInt cube = ExactInt(n) * n * n;
    mpz_sqrt(r.power_bound_floor.get_mpz_t(), cube.get_mpz_t());
    if (n >= 12) r.comparison = compare_bounds(n);
    r.table_row = table_find(n);
    return r;
}

std::string format_mixed(const ExactRational& q) {
    ExactRational v = q;
    v.canonicalize();
    if (v < 0) return "-" + format_mixed(ExactRational(-v));
    ExactInt num(mpq_numref(v.get_mpq_t()));
    ExactInt den(mpq_denref(v.get_mpq_t()));
    if (den == 1) return num.get_str();
    ExactInt whole = num / den;
    ExactInt rem = num - whole * den;
    if (whole == 0) return rem.get_str() + "/" + den.get_str();
    return whole.get_str() + " " + rem.get_str() + "/" + den.get_str();
}

ExactRational parse_mixed(const std::string& text) {
    auto bad = [&]() -> ParseError {
        return ParseError("cannot parse rational '" + text + "'");
    };
    if (text.empty()) throw bad();
    std::string whole = text;
    std::string frac;
    std::size_t space = text.find(' ');
    if (space != std::string::npos) {
        whole = text.substr(0, space);
        frac = text.substr(space + 1);
        if (whole.empty() || frac.empty()) throw bad();
        if (frac.find(' ') != std::string::npos) throw bad();
        if (frac.find('/') == std::string::npos) throw bad();
    } else if (text.find('/') != std::string::npos) {
        whole.clear();
        frac = text;
    }

    ExactRational result;
    try {
        if (!whole.empty()) {
            result = ExactRational(whole);
            result.canonicalize();
        }
        if (!frac.empty()) {
            ExactRational f(frac);
            if (mpz_sgn(mpq_denref(f.get_mpq_t())) == 0) throw bad();
            f.canonicalize();
            if (f < 0) throw bad();
            if (result < 0)
                result -= f;
            else
                result += f;
        }
    } catch (const std::invalid_argument&) {
        throw bad();
    }
    return result;
}

}  // namespace maxdet
