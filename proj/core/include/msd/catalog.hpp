#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msd/canonical.hpp"
#include "msd/digraph.hpp"

namespace msd {

/// Counts keyed by (order, arc count).
struct CountTable {
    std::map<std::pair<int, int>, std::uint64_t> rows;

    std::uint64_t at(int n, int m) const {
        auto it = rows.find({n, m});
        return it == rows.end() ? 0 : it->second;
    }
    void add(int n, int m, std::uint64_t count) {
        if (count) rows[{n, m}] += count;
    }
    std::uint64_t order_total(int n) const {
        std::uint64_t total = 0;
        for (const auto& [key, count] : rows)
            if (key.first == n) total += count;
        return total;
    }
    friend bool operator==(const CountTable&, const CountTable&) = default;
};

/// The complete sorted set of canonical codes of the minimal strong digraphs
/// of one order. Codes all have the same length, so they live back-to-back
/// in one buffer.
class Catalog {
public:
    Catalog() = default;

    static Catalog seed();  // order 1: the single vertex
    /// blob must hold strictly increasing codes of the right length.
    static Catalog from_sorted_codes(int order, std::string blob);

    int order() const { return order_; }
    std::size_t size() const { return code_len_ ? blob_.size() / code_len_ : 0; }
    std::size_t code_length() const { return code_len_; }

    std::string_view code_view(std::size_t i) const {
        return std::string_view(blob_).substr(i * code_len_, code_len_);
    }
    CanonicalCode code(std::size_t i) const {
        return CanonicalCode(std::string(code_view(i)));
    }
    Digraph decode(std::size_t i) const;
    bool contains(std::string_view code) const;  // binary search

    /// Entries per arc count, keyed (order, m).
    const CountTable& counts() const { return counts_; }

private:
    int order_ = 0;
    std::size_t code_len_ = 0;
    std::string blob_;
    CountTable counts_;
};

struct EnumOptions {
    int jobs = 1;  // 0 = hardware concurrency
    /// Candidate codes held in memory before sorted runs spill to scratch.
    std::size_t spill_budget = std::size_t{1} << 22;
    std::filesystem::path scratch;  // empty = system temp directory
};

/// One generation step: every entry of the order-(n-1) catalog is expanded
/// by (a) an internal expansion on each arc, (b) an external expansion e_uu
/// on each vertex, and (c) an external expansion e_uw on each non-adjacent
/// ordered pair that keeps minimality; children are canonicalized and
/// deduplicated. Output is independent of sharding.
Catalog expand_catalog(const Catalog& prev, const EnumOptions& opts = {});

/// Catalogs of orders 1..n_max.
std::vector<Catalog> enumerate_to(int n_max, const EnumOptions& opts = {});

/// Independent oracle for 2 <= n <= 5: scan all 2^(n(n-1)) labeled digraphs,
/// keep the minimal strong ones, and deduplicate by the minimum adjacency
/// bitstring over all n! relabelings. Deliberately avoids canonical_form.
CountTable brute_force_msd_count(int n);

/// Count at m = 2n-2 (the directed trees) for each catalog of order >= 2.
std::vector<std::uint64_t> directed_tree_counts(std::span<const Catalog> catalogs);

}  // namespace msd
