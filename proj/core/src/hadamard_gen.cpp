#include "maxdet/hadamard_gen.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "maxdet/errors.hpp"
#include "maxdet/matrix_io.hpp"

namespace maxdet {
namespace {

void check_limit(long long order, int order_limit, const char* generator) {
    if (order_limit < 1) throw std::invalid_argument("order limit must be >= 1");
    if (order > order_limit)
        throw std::out_of_range(std::string(generator) + ": order " +
                                    std::to_string(order) +
                                    " exceeds limit " +
                                    std::to_string(order_limit));
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// chi[a] for a in 1..q-1: +1 if a is a nonzero square mod q, else -1.
std::vector<int> residue_character(int q) {
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (int a = 1; a < q; ++a)
        chi[static_cast<int>((static_cast<long long>(a) * a) % q)] = 1;
    return chi;
}

void enforce_hadamard(const SignMatrix& h, const char* generator) {
    if (!h.is_hadamard())
        throw std::logic_error(std::string(generator) +
                               ": output failed the orthogonality postcondition");
}

}  // namespace

SignMatrix sylvester(int m, int order_limit) {
    if (m < 0 || m > 30) throw std::invalid_argument("sylvester: bad exponent");
    long long order = 1LL << m;
    check_limit(order, order_limit, "sylvester");
    int n = static_cast<int>(order);
    SignMatrix::Builder b(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            b.set(i, j, std::popcount(static_cast<unsigned>(i & j)) % 2 ? -1 : 1);
    SignMatrix h = std::move(b).build();
    enforce_hadamard(h, "sylvester");
    return h;
}

SignMatrix paley1(int q, int order_limit) {
    if (!is_prime(q) || q % 4 != 3)
        throw std::invalid_argument(
            "paley1: modulus must be a prime congruent to 3 mod 4");
    check_limit(q + 1, order_limit, "paley1");
    std::vector<int> chi = residue_character(q);
    int n = q + 1;
    SignMatrix::Builder b(n);
    for (int j = 0; j < n; ++j) b.set(0, j, 1);
    for (int i = 1; i < n; ++i) {
        b.set(i, 0, -1);
        for (int j = 1; j < n; ++j) {
            if (i == j)
                b.set(i, j, 1);
            else
                b.set(i, j, chi[((j - i) % q + q) % q]);
        }
    }
    SignMatrix h = std::move(b).build();
    enforce_hadamard(h, "paley1");
    return h;
}

SignMatrix paley2(int q, int order_limit) {
    if (!is_prime(q) || q % 4 != 1)
        throw std::invalid_argument(
            "paley2: modulus must be a prime congruent to 1 mod 4");
    check_limit(2LL * (q + 1), order_limit, "paley2");
    std::vector<int> chi = residue_character(q);
    int m = q + 1;

    // Symmetric conference matrix of order q + 1.
    std::vector<int> c(static_cast<std::size_t>(m) * m, 0);
    for (int j = 1; j < m; ++j) {
        c[j] = 1;
        c[static_cast<std::size_t>(j) * m] = 1;
    }
    for (int i = 1; i < m; ++i)
        for (int j = 1; j < m; ++j)
            if (i != j)
                c[static_cast<std::size_t>(i) * m + j] = chi[((j - i) % q + q) % q];

    // Each conference entry expands to a 2x2 block:
    //   0 -> [[ 1, -1], [-1, -1]],  s -> s * [[1, 1], [1, -1]].
    int n = 2 * m;
    SignMatrix::Builder b(n);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            int s = c[static_cast<std::size_t>(i) * m + j];
            int r = 2 * i, cc = 2 * j;
            if (s == 0) {
                b.set(r, cc, 1);
                b.set(r, cc + 1, -1);
                b.set(r + 1, cc, -1);
                b.set(r + 1, cc + 1, -1);
            } else {
                b.set(r, cc, s);
                b.set(r, cc + 1, s);
                b.set(r + 1, cc, s);
                b.set(r + 1, cc + 1, -s);
            }
        }
    }
    SignMatrix h = std::move(b).build();
    enforce_hadamard(h, "paley2");
    return h;
}

SignMatrix kronecker(const SignMatrix& a, const SignMatrix& b,
                     int order_limit) {
    long long order = static_cast<long long>(a.order()) * b.order();
    check_limit(order, order_limit, "kronecker");
    int na = a.order(), nb = b.order();
    int n = static_cast<int>(order);
    SignMatrix::Builder out(n);
    for (int i1 = 0; i1 < na; ++i1)
        for (int i2 = 0; i2 < nb; ++i2)
            for (int j1 = 0; j1 < na; ++j1)
                for (int j2 = 0; j2 < nb; ++j2)
                    out.set(i1 * nb + i2, j1 * nb + j2,
                            a.entry(i1, j1) * b.entry(i2, j2));
    return std::move(out).build();
}

namespace detail {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    GeneratorSpec parse_full() {
        GeneratorSpec spec = parse_expr();
        if (pos_ != text_.size())
            fail("trailing characters after expression");
        return spec;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("generator expression '" + std::string(text_) +
                         "': " + why + " (at offset " + std::to_string(pos_) +
                         ")");
    }

    bool consume(std::string_view token) {
        if (text_.substr(pos_, token.size()) != token) return false;
        pos_ += token.size();
        return true;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int parse_int() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9')
            ++pos_;
        if (pos_ == start) fail("expected an integer");
        if (pos_ - start > 9) fail("integer too large");
        int value = 0;
        for (std::size_t i = start; i < pos_; ++i)
            value = value * 10 + (text_[i] - '0');
        return value;
    }

    GeneratorSpec parse_expr();

    std::string_view text_;
    std::size_t pos_ = 0;
};

GeneratorSpec SpecParser::parse_expr() {
    GeneratorSpec spec;
    if (consume("sylvester(")) {
        spec.kind_ = GeneratorSpec::Kind::sylvester;
        spec.param_ = parse_int();
        expect(')');
    } else if (consume("paley1(")) {
        spec.kind_ = GeneratorSpec::Kind::paley1;
        spec.param_ = parse_int();
        expect(')');
    } else if (consume("paley2(")) {
        spec.kind_ = GeneratorSpec::Kind::paley2;
        spec.param_ = parse_int();
        expect(')');
    } else if (consume("kron(")) {
        spec.kind_ = GeneratorSpec::Kind::kronecker;
        spec.children_.push_back(parse_expr());
        expect(',');
        spec.children_.push_back(parse_expr());
        expect(')');
    } else if (consume("file(")) {
        spec.kind_ = GeneratorSpec::Kind::file;
        std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ')') ++pos_;
        if (pos_ == start) fail("empty file path");
        spec.path_ = std::string(text_.substr(start, pos_ - start));
        expect(')');
    } else {
        fail("expected sylvester(, paley1(, paley2(, kron( or file(");
    }
    return spec;
}

}  // namespace detail

GeneratorSpec GeneratorSpec::parse(std::string_view text) {
    return detail::SpecParser(text).parse_full();
}

std::string GeneratorSpec::describe() const {
    switch (kind_) {
        case Kind::sylvester:
            return "sylvester(" + std::to_string(param_) + ")";
        case Kind::paley1:
            return "paley1(" + std::to_string(param_) + ")";
        case Kind::paley2:
            return "paley2(" + std::to_string(param_) + ")";
        case Kind::kronecker:
            return "kron(" + children_[0].describe() + "," +
                   children_[1].describe() + ")";
        case Kind::file:
            return "file(" + path_ + ")";
    }
    throw std::logic_error("unreachable generator kind");
}

SignMatrix GeneratorSpec::build(int order_limit) const {
    SignMatrix result = [&] {
        switch (kind_) {
            case Kind::sylvester:
                return sylvester(param_, order_limit);
            case Kind::paley1:
                return paley1(param_, order_limit);
            case Kind::paley2:
                return paley2(param_, order_limit);
            case Kind::kronecker:
                return kronecker(children_[0].build(order_limit),
                                 children_[1].build(order_limit), order_limit);
            case Kind::file: {
                SignMatrix m = read_matrix_file(path_);
                check_limit(m.order(), order_limit, "file");
                return m;
            }
        }
        throw std::logic_error("unreachable generator kind");
    }();
    if (!result.is_hadamard())
        throw VerificationError("generator '" + describe() +
                                "' produced a non-Hadamard matrix");
    return result;
}

}  // namespace maxdet
