#include "maxdet/excess_search.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "maxdet/bounds.hpp"

namespace maxdet {

std::uint64_t subset_count(int n) {
    if (n < 0) throw std::invalid_argument("negative set size");
    std::uint64_t u = n;
    return u * (u - 1) / 2 * (u - 2) / 3;
}

void for_each_subset(int n,
                     const std::function<void(std::array<int, 3>)>& visit) {
    for (int a = 0; a + 2 < n; ++a)
        for (int b = a + 1; b + 1 < n; ++b)
            for (int c = b + 1; c < n; ++c) visit({a, b, c});
}

std::vector<std::array<int, 3>> coset_representatives(int n) {
    if (n < 4) throw std::invalid_argument("order must be at least 4");
    std::vector<std::array<int, 3>> out;
    out.reserve(subset_count(n));
    for_each_subset(n, [&](std::array<int, 3> s) { out.push_back(s); });
    return out;
}

int normalized_excess(const SignMatrix& h, std::array<int, 3> subset) {
    int n = h.order();
    auto [p, q, r] = subset;
    for (int idx : subset)
        if (idx < 0 || idx >= n)
            throw std::invalid_argument("subset index out of range");
    if (p == q || p == r || q == r)
        throw std::invalid_argument("subset indices must be distinct");

    int wpr = h.words_per_row();
    auto rp = h.row_words(p);
    auto rq = h.row_words(q);
    auto rr = h.row_words(r);
    std::uint64_t sw[64];
    if (wpr > 64) throw std::invalid_argument("order too large for the scan");
    for (int w = 0; w < wpr; ++w) sw[w] = rp[w] ^ rq[w] ^ rr[w];

    int total = 0;
    for (int i = 0; i < n; ++i) {
        if (i == p || i == q || i == r) continue;
        auto ri = h.row_words(i);
        int diff = 0;
        for (int w = 0; w < wpr; ++w) diff += std::popcount(ri[w] ^ sw[w]);
        total += std::abs(n - 2 * diff);
    }
    return total;
}

namespace {

struct ThreadLocalBest {
    int excess = -1;
    std::array<int, 3> subset{};
    std::map<int, std::uint64_t> histogram;
};

bool subset_less(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    return a < b;
}

}  // namespace

SearchResult max_excess(const SignMatrix& h, const SearchOptions& options) {
    int n = h.order();
    if (n < 4 || n % 4 != 0)
        throw std::invalid_argument("order must be a positive multiple of 4");
    if (n > options.order_limit)
        throw std::out_of_range("order " + std::to_string(n) +
                                " exceeds limit " +
                                std::to_string(options.order_limit));
    if (!h.is_hadamard())
        throw std::invalid_argument("matrix is not Hadamard");

    const std::uint64_t total = subset_count(n);
    int threads = options.threads;
    if (threads < 0) throw std::invalid_argument("negative thread count");
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<int>(threads, n - 2);

    std::vector<ThreadLocalBest> locals(threads);
    std::atomic<int> next_first{0};
    std::atomic<std::uint64_t> done{0};
    std::mutex progress_mutex;

    auto worker = [&](int t) {
        ThreadLocalBest& local = locals[t];
        for (;;) {
            int a = next_first.fetch_add(1, std::memory_order_relaxed);
            if (a + 2 >= n) break;
            for (int b = a + 1; b + 1 < n; ++b) {
                for (int c = b + 1; c < n; ++c) {
                    int e = normalized_excess(h, {a, b, c});
                    ++local.histogram[e];
                    // Subsets arrive in lexicographic order within a thread,
                    // so a strict improvement keeps the least maximizer.
                    if (e > local.excess) {
                        local.excess = e;
                        local.subset = {a, b, c};
                    }
                }
            }
            std::uint64_t chunk =
                static_cast<std::uint64_t>(n - 1 - a) * (n - 2 - a) / 2;
            std::uint64_t so_far =
                done.fetch_add(chunk, std::memory_order_relaxed) + chunk;
            if (options.progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                options.progress(so_far, total);
            }
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    // Order-independent merge: larger excess wins, ties go to the
    // lexicographically least subset.
    int best_excess = -1;
    std::array<int, 3> best_subset{};
    std::map<int, std::uint64_t> histogram;
    for (const ThreadLocalBest& local : locals) {
        for (const auto& [e, c] : local.histogram) histogram[e] += c;
        if (local.excess > best_excess ||
            (local.excess == best_excess &&
             subset_less(local.subset, best_subset))) {
            best_excess = local.excess;
            best_subset = local.subset;
        }
    }

    std::uint64_t counted = 0;
    for (const auto& [e, c] : histogram) counted += c;
    if (counted != total)
        throw std::logic_error("subset scan lost or duplicated work");

    NormalizedHadamard best = three_normalize(h, best_subset);
    if (best.excess != best_excess)
        throw std::logic_error(
            "fast excess evaluation disagrees with full normalization");
    ExactInt cap = nu_star_sharp(n);
    if (ExactInt(best_excess) > cap)
        throw std::logic_error("search exceeded the proven excess bound " +
                               cap.get_str());
    return SearchResult{best_excess, best_subset, std::move(best),
                        std::move(histogram), counted};
}

MultiSearchResult max_excess_multi(const std::vector<SignMatrix>& sources,
                                   const std::vector<std::string>& labels,
                                   const SearchOptions& options) {
    if (!labels.empty() && labels.size() != sources.size())
        throw std::invalid_argument("label count does not match source count");
    MultiSearchResult out;
    out.entries.reserve(sources.size());
    for (std::size_t i = 0; i < sources.size(); ++i) {
        MultiSearchEntry entry;
        entry.label =
            labels.empty() ? "source " + std::to_string(i + 1) : labels[i];
        try {
            entry.result = max_excess(sources[i], options);
        } catch (const std::exception& e) {
            entry.error = e.what();
        }
        out.entries.push_back(std::move(entry));
    }
    for (std::size_t i = 0; i < out.entries.size(); ++i) {
        const auto& e = out.entries[i];
        if (!e.result) continue;
        if (!out.best_index ||
            e.result->best_excess >
                out.entries[*out.best_index].result->best_excess)
            out.best_index = i;
    }
    return out;
}

}  // namespace maxdet
