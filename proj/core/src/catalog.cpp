#include "maxdet/catalog.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "maxdet/bounds.hpp"
#include "maxdet/errors.hpp"
#include "maxdet/matrix_io.hpp"

namespace maxdet {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

int parse_int_field(const std::string& s, const char* what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("catalog index: bad ") + what + " '" + s +
                         "'");
    }
}

}  // namespace

RecordsCatalog::RecordsCatalog(std::filesystem::path dir)
    : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    load();
}

const CatalogEntry* RecordsCatalog::find(int order) const {
    auto it = entries_.find(order);
    return it == entries_.end() ? nullptr : &it->second;
}

void RecordsCatalog::load() {
    std::filesystem::path index = dir_ / kIndexName;
    std::ifstream in(index);
    if (!in) return;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = split_tabs(line);
        if (first && !f.empty() && f[0] == "order") {
            first = false;
            continue;
        }
        first = false;
        if (f.size() != 6)
            throw ParseError("catalog index: expected 6 tab-separated fields, "
                             "got " +
                             std::to_string(f.size()));
        CatalogEntry e;
        e.order = parse_int_field(f[0], "order");
        e.best_excess = parse_int_field(f[1], "excess");
        if (mpz_set_str(e.det_abs.get_mpz_t(), f[2].c_str(), 10) != 0 ||
            e.det_abs < 0)
            throw ParseError("catalog index: bad determinant '" + f[2] + "'");
        e.method = f[3];
        e.source = f[4];
        e.filename = f[5];
        entries_[e.order] = std::move(e);
    }
}

void RecordsCatalog::save() const {
    std::filesystem::path index = dir_ / kIndexName;
    std::ofstream out(index, std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write catalog index: " +
                                 index.string());
    out << "order\tbest_excess\tdet_abs\tmethod\tsource\tfilename\n";
    for (const auto& [order, e] : entries_) {
        out << e.order << '\t' << e.best_excess << '\t' << e.det_abs.get_str()
            << '\t' << e.method << '\t' << e.source << '\t' << e.filename
            << '\n';
    }
    out.flush();
    if (!out)
        throw std::runtime_error("error writing catalog index: " +
                                 index.string());
}

bool RecordsCatalog::offer(const NormalizedHadamard& matrix,
                           const ExactInt& det_abs, const std::string& method,
                           const std::string& source) {
    int order = matrix.order();
    const CatalogEntry* existing = find(order);
    if (existing && existing->best_excess >= matrix.excess) return false;

    char name[64];
    std::snprintf(name, sizeof(name), "n%04d_e%d.mat", order, matrix.excess);
    write_matrix_file(dir_ / name, matrix.matrix);

    CatalogEntry e;
    e.order = order;
    e.best_excess = matrix.excess;
    e.det_abs = det_abs;
    e.method = method;
    e.source = source;
    e.filename = name;
    entries_[order] = std::move(e);
    save();
    return true;
}

void RecordsCatalog::validate() const {
    for (const auto& [order, e] : entries_) {
        SignMatrix m = read_matrix_file(dir_ / e.filename);
        if (m.order() != e.order)
            throw VerificationError(e.filename + ": order " +
                                    std::to_string(m.order()) +
                                    " does not match the index entry " +
                                    std::to_string(e.order));
        NormalizedHadamard nh = NormalizedHadamard::certify(m);
        if (nh.excess != e.best_excess)
            throw VerificationError(
                e.filename + ": excess " + std::to_string(nh.excess) +
                " does not match the index entry " +
                std::to_string(e.best_excess));
        if (e.method == "gamma") {
            int n = e.order;
            ExactInt expected;
            mpz_ui_pow_ui(expected.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(2 * (n / 4) - 1));
            expected *= 2 * n + e.best_excess;
            if (expected != e.det_abs)
                throw VerificationError(
                    e.filename +
                    ": indexed determinant does not match the closed form");
        }
        ExactInt cap = nu_star_sharp(e.order);
        if (ExactInt(e.best_excess) > cap)
            throw VerificationError(e.filename +
                                    ": recorded excess exceeds the bound " +
                                    cap.get_str());
    }
}

}  // namespace maxdet
