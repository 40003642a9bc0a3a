#include "maxdet/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "maxdet/errors.hpp"

namespace maxdet {
namespace {

constexpr int kMaxParsedOrder = 4096;

}  // namespace

SignMatrix parse_matrix(std::string_view text) {
    std::size_t eol = text.find('\n');
    if (eol == std::string_view::npos)
        throw ParseError("missing newline after the dimension line");
    std::string_view dim = text.substr(0, eol);
    if (dim.empty()) throw ParseError("empty dimension line");
    long long n = 0;
    for (char c : dim) {
        if (c < '0' || c > '9')
            throw ParseError("dimension line must contain only digits");
        n = n * 10 + (c - '0');
        if (n > kMaxParsedOrder)
            throw ParseError("order exceeds the supported maximum of " +
                             std::to_string(kMaxParsedOrder));
    }
    if (n < 1) throw ParseError("order must be at least 1");

    int order = static_cast<int>(n);
    SignMatrix::Builder b(order);
    std::size_t pos = eol + 1;
    for (int i = 0; i < order; ++i) {
        if (pos + order > text.size())
            throw ParseError("row " + std::to_string(i + 1) +
                             " is missing or too short");
        for (int j = 0; j < order; ++j) {
            char c = text[pos + j];
            if (c == '+')
                b.set(i, j, 1);
            else if (c == '-')
                b.set(i, j, -1);
            else
                throw ParseError("row " + std::to_string(i + 1) + ", column " +
                                 std::to_string(j + 1) +
                                 ": expected '+' or '-'");
        }
        pos += order;
        if (pos >= text.size() || text[pos] != '\n')
            throw ParseError("row " + std::to_string(i + 1) +
                             " must end with a newline after " +
                             std::to_string(order) + " entries");
        ++pos;
    }
    if (pos != text.size())
        throw ParseError("unexpected content after row " +
                         std::to_string(order));
    return std::move(b).build();
}

std::string serialize_matrix(const SignMatrix& m) {
    int n = m.order();
    std::string out = std::to_string(n);
    out.reserve(out.size() + static_cast<std::size_t>(n) * (n + 1) + 1);
    out.push_back('\n');
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            out.push_back(m.entry(i, j) == 1 ? '+' : '-');
        out.push_back('\n');
    }
    return out;
}

SignMatrix read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open matrix file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw ParseError("error reading matrix file: " + path.string());
    try {
        return parse_matrix(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_matrix_file(const std::filesystem::path& path,
                       const SignMatrix& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open file for writing: " +
                                 path.string());
    out << serialize_matrix(m);
    out.flush();
    if (!out)
        throw std::runtime_error("error writing matrix file: " + path.string());
}

}  // namespace maxdet
