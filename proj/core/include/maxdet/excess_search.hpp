#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxdet/hadamard_gen.hpp"
#include "maxdet/normalize.hpp"
#include "maxdet/sign_matrix.hpp"

namespace maxdet {

// Number of 3-element subsets of {0, ..., n-1}.
std::uint64_t subset_count(int n);

// Visits all 3-subsets in lexicographic order.
void for_each_subset(int n,
                     const std::function<void(std::array<int, 3>)>& visit);

// Materialized list of all 3-subsets in lexicographic order.  One
// representative per equivalence class of the search; meant for moderate n.
std::vector<std::array<int, 3>> coset_representatives(int n);

// Excess the matrix would have after three-row normalization on the given
// subset, computed without building the normalized matrix: with
// s_j = H(p,j) H(q,j) H(r,j), the value is the sum over the remaining rows of
// |sum_j H(i,j) s_j|.
int normalized_excess(const SignMatrix& h, std::array<int, 3> subset);

struct SearchOptions {
    int threads = 0;  // 0 = hardware concurrency
    int order_limit = kDefaultOrderLimit;
    // Called as evaluation proceeds with (subsets done, subsets total).  May
    // be invoked from worker threads, one call at a time.
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

struct SearchResult {
    int best_excess = 0;
    std::array<int, 3> best_subset{};  // lexicographically least maximizer
    NormalizedHadamard best_matrix;
    std::map<int, std::uint64_t> histogram;  // excess -> subset count
    std::uint64_t subsets_evaluated = 0;
};

// Exhaustive scan over all 3-subsets.  Deterministic: the reported subset is
// the lexicographically least one attaining the maximum, regardless of
// thread count.
SearchResult max_excess(const SignMatrix& h, const SearchOptions& options = {});

struct MultiSearchEntry {
    std::string label;
    std::optional<SearchResult> result;  // empty on error
    std::string error;
};

struct MultiSearchResult {
    std::vector<MultiSearchEntry> entries;
    // Index of the entry with the largest best_excess; ties go to the
    // earliest entry.  Unset when every source failed.
    std::optional<std::size_t> best_index;
};

// Runs max_excess over several sources, collecting per-source errors instead
// of aborting the batch.
MultiSearchResult max_excess_multi(const std::vector<SignMatrix>& sources,
                                   const std::vector<std::string>& labels,
                                   const SearchOptions& options = {});

}  // namespace maxdet
