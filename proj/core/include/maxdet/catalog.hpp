#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "maxdet/exact.hpp"
#include "maxdet/normalize.hpp"

namespace maxdet {

struct CatalogEntry {
    int order = 0;            // order of the source Hadamard matrix
    int best_excess = 0;
    ExactInt det_abs;         // |det| of the resulting order n+1 matrix
    std::string method;       // "gamma" or "excess"
    std::string source;       // how the source matrix was obtained
    std::string filename;     // stored normalized matrix, relative to the dir
};

// Directory of record matrices with a TSV index.  Columns:
//   order  best_excess  det_abs  method  source  filename
// Entries are keyed by order; offering a better excess replaces the record.
class RecordsCatalog {
public:
    static constexpr const char* kIndexName = "index.tsv";

    // Loads the index when present; creates the directory when absent.
    explicit RecordsCatalog(std::filesystem::path dir);

    const std::filesystem::path& directory() const { return dir_; }
    const std::map<int, CatalogEntry>& entries() const { return entries_; }
    const CatalogEntry* find(int order) const;

    // Stores the normalized matrix when it beats (or first sets) the record
    // for its order.  Returns true when the record was updated.
    bool offer(const NormalizedHadamard& matrix, const ExactInt& det_abs,
               const std::string& method, const std::string& source);

    // Re-reads every indexed matrix and re-derives its claims; throws
    // VerificationError on the first inconsistency.
    void validate() const;

private:
    void load();
    void save() const;

    std::filesystem::path dir_;
    std::map<int, CatalogEntry> entries_;
};

}  // namespace maxdet
