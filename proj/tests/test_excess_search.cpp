#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "maxdet/excess_search.hpp"
#include "maxdet/hadamard_gen.hpp"
#include "maxdet/normalize.hpp"
#include "oracles.hpp"

using maxdet::SearchOptions;
using maxdet::SearchResult;
using maxdet::SignMatrix;

namespace {

// Histogram built the slow way, one full normalization per subset.
std::map<int, std::uint64_t> histogram_by_normalization(const SignMatrix& h) {
    std::map<int, std::uint64_t> out;
    maxdet::for_each_subset(h.order(), [&](std::array<int, 3> s) {
        ++out[maxdet::three_normalize(h, s).excess];
    });
    return out;
}

}  // namespace

TEST_CASE("subset counting") {
    CHECK(maxdet::subset_count(0) == 0);
    CHECK(maxdet::subset_count(2) == 0);
    CHECK(maxdet::subset_count(3) == 1);
    CHECK(maxdet::subset_count(4) == 4);
    CHECK(maxdet::subset_count(12) == 220);
    CHECK(maxdet::subset_count(20) == 1140);
    CHECK(maxdet::subset_count(36) == 7140);
    CHECK(maxdet::subset_count(100) == 161700);
    CHECK_THROWS_AS(maxdet::subset_count(-1), std::invalid_argument);
}

TEST_CASE("subset enumeration is lexicographic and complete") {
    std::vector<std::array<int, 3>> seen;
    maxdet::for_each_subset(5, [&](std::array<int, 3> s) { seen.push_back(s); });
    REQUIRE(seen.size() == 10);
    CHECK(seen.front() == std::array<int, 3>{0, 1, 2});
    CHECK(seen.back() == std::array<int, 3>{2, 3, 4});
    for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
    for (auto [a, b, c] : seen) {
        CHECK(a < b);
        CHECK(b < c);
    }
    CHECK(maxdet::coset_representatives(5) == seen);
    CHECK(maxdet::coset_representatives(12).size() == 220);
}

TEST_CASE("fast excess agrees with full normalization") {
    std::mt19937 rng(51);
    std::vector<SignMatrix> pool;
    pool.push_back(maxdet::sylvester(2));
    pool.push_back(maxdet::paley1(11));
    pool.push_back(maxdet::paley2(5));
    pool.push_back(maxdet::paley1(19));
    pool.push_back(maxdet::kronecker(maxdet::sylvester(1), maxdet::paley1(7)));
    for (const SignMatrix& h : pool) {
        int n = h.order();
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int trial = 0; trial < 25; ++trial) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (a == b || a == c || b == c) continue;
            std::array<int, 3> s = {a, b, c};
            std::sort(s.begin(), s.end());
            CHECK(maxdet::normalized_excess(h, s) ==
                  maxdet::three_normalize(h, s).excess);
        }
    }
}

TEST_CASE("fast excess validates its subset") {
    SignMatrix h = maxdet::sylvester(2);
    CHECK_THROWS_AS(maxdet::normalized_excess(h, {0, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(maxdet::normalized_excess(h, {0, 1, 4}),
                    std::invalid_argument);
}

TEST_CASE("order four search") {
    SearchResult r = maxdet::max_excess(maxdet::sylvester(2));
    CHECK(r.best_excess == 4);
    CHECK(r.best_subset == std::array<int, 3>{0, 1, 2});
    CHECK(r.subsets_evaluated == 4);
    REQUIRE(r.histogram.size() == 1);
    CHECK(r.histogram.at(4) == 4);
    CHECK(r.best_matrix.excess == 4);
}

TEST_CASE("order twelve search finds the full-coset maximum") {
    SearchResult r = maxdet::max_excess(maxdet::paley1(11));
    CHECK(r.best_excess == 36);
    CHECK(r.subsets_evaluated == 220);
    // Every subset of the order-12 matrix reaches the same excess.
    REQUIRE(r.histogram.size() == 1);
    CHECK(r.histogram.at(36) == 220);
    CHECK(r.histogram == histogram_by_normalization(maxdet::paley1(11)));
}

TEST_CASE("order twenty search matches the slow route subset by subset") {
    SignMatrix h = maxdet::paley1(19);
    SearchResult r = maxdet::max_excess(h);
    CHECK(r.subsets_evaluated == 1140);
    CHECK(r.histogram == histogram_by_normalization(h));
    // The reported winner really is the lexicographically least maximizer.
    std::array<int, 3> least{};
    int best = -1;
    maxdet::for_each_subset(20, [&](std::array<int, 3> s) {
        int e = maxdet::normalized_excess(h, s);
        if (e > best) {
            best = e;
            least = s;
        }
    });
    CHECK(r.best_excess == best);
    CHECK(r.best_subset == least);
    CHECK(maxdet::validate_normalized(r.best_matrix.matrix).all_pass());
}

TEST_CASE("thread count does not change the outcome") {
    SignMatrix h = maxdet::paley1(23);
    SearchOptions one;
    one.threads = 1;
    SearchOptions four;
    four.threads = 4;
    SearchResult a = maxdet::max_excess(h, one);
    SearchResult b = maxdet::max_excess(h, four);
    CHECK(a.best_excess == b.best_excess);
    CHECK(a.best_subset == b.best_subset);
    CHECK(a.histogram == b.histogram);
    CHECK(a.subsets_evaluated == b.subsets_evaluated);
    CHECK(a.best_matrix.matrix == b.best_matrix.matrix);
}

TEST_CASE("progress reporting reaches the total") {
    SignMatrix h = maxdet::paley1(11);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> calls;
    SearchOptions opt;
    opt.threads = 1;
    opt.progress = [&](std::uint64_t done, std::uint64_t total) {
        calls.emplace_back(done, total);
    };
    maxdet::max_excess(h, opt);
    REQUIRE_FALSE(calls.empty());
    for (std::size_t i = 1; i < calls.size(); ++i)
        CHECK(calls[i - 1].first <= calls[i].first);
    CHECK(calls.back().first == maxdet::subset_count(12));
    for (auto [done, total] : calls) CHECK(total == maxdet::subset_count(12));
}

TEST_CASE("search preconditions") {
    CHECK_THROWS_AS(maxdet::max_excess(SignMatrix::filled(4, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(maxdet::max_excess(maxdet::sylvester(1)),
                    std::invalid_argument);
    SearchOptions opt;
    opt.order_limit = 8;
    CHECK_THROWS_AS(maxdet::max_excess(maxdet::paley1(11), opt),
                    std::out_of_range);
    SearchOptions bad;
    bad.threads = -2;
    CHECK_THROWS_AS(maxdet::max_excess(maxdet::sylvester(2), bad),
                    std::invalid_argument);
}

TEST_CASE("search outcome is invariant over the equivalence class") {
    std::mt19937 rng(52);
    for (SignMatrix h : {maxdet::paley1(11), maxdet::sylvester(4)}) {
        SearchResult base = maxdet::max_excess(h);
        for (int trial = 0; trial < 3; ++trial) {
            SignMatrix g = oracle::scramble_hadamard(h, rng);
            SearchResult r = maxdet::max_excess(g);
            CHECK(r.best_excess == base.best_excess);
            CHECK(r.histogram == base.histogram);
        }
    }
}

TEST_CASE("batch search isolates per-source failures") {
    std::vector<SignMatrix> sources;
    sources.push_back(maxdet::paley1(11));
    sources.push_back(SignMatrix::filled(4, 1));  // not Hadamard
    sources.push_back(maxdet::sylvester(2));
    std::vector<std::string> labels = {"twelve", "junk", "four"};
    maxdet::MultiSearchResult r = maxdet::max_excess_multi(sources, labels);
    REQUIRE(r.entries.size() == 3);
    CHECK(r.entries[0].result.has_value());
    CHECK_FALSE(r.entries[1].result.has_value());
    CHECK_FALSE(r.entries[1].error.empty());
    CHECK(r.entries[2].result.has_value());
    REQUIRE(r.best_index.has_value());
    CHECK(*r.best_index == 0);
    CHECK(r.entries[0].label == "twelve");

    maxdet::MultiSearchResult none = maxdet::max_excess_multi(
        {SignMatrix::filled(4, 1)}, {"junk"});
    CHECK_FALSE(none.best_index.has_value());

    CHECK_THROWS_AS(maxdet::max_excess_multi(sources, {"onlyone"}),
                    std::invalid_argument);
}

TEST_CASE("batch search ties go to the earliest source") {
    std::vector<SignMatrix> sources = {maxdet::sylvester(2),
                                       maxdet::sylvester(2)};
    maxdet::MultiSearchResult r = maxdet::max_excess_multi(sources, {"a", "b"});
    REQUIRE(r.best_index.has_value());
    CHECK(*r.best_index == 0);
}
