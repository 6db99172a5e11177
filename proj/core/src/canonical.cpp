#include "msd/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

#include "msd/digraph6.hpp"

namespace msd {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Ordered partition in flat form: verts holds 0..n-1 grouped by cell,
// cells[i] = (start, len) into verts. Fixed-size storage, no allocation.
struct Partition {
    int n = 0;
    int ncells = 0;
    std::array<int, Digraph::kMaxOrder> verts{};
    std::array<std::pair<int, int>, Digraph::kMaxOrder> cells{};

    bool discrete() const { return ncells == n; }

    int first_non_singleton() const {
        for (int c = 0; c < ncells; ++c)
            if (cells[static_cast<std::size_t>(c)].second > 1) return c;
        return -1;
    }
};

struct Refiner {
    const Digraph& d;
    std::array<std::uint64_t, Digraph::kMaxOrder> cell_mask{};

    explicit Refiner(const Digraph& dig) : d(dig) {}

    void snapshot_masks(const Partition& p) {
        for (int c = 0; c < p.ncells; ++c) {
            std::uint64_t m = 0;
            auto [start, len] = p.cells[static_cast<std::size_t>(c)];
            for (int i = start; i < start + len; ++i)
                m |= bit(p.verts[static_cast<std::size_t>(i)]);
            cell_mask[static_cast<std::size_t>(c)] = m;
        }
    }

    // Lexicographic comparison of degree signatures against the snapshot:
    // out-degree vector across cells first, then in-degree vector.
    int sig_compare(int a, int b, int ncells) const {
        for (int c = 0; c < ncells; ++c) {
            const int da = std::popcount(d.out_bits(a) & cell_mask[static_cast<std::size_t>(c)]);
            const int db = std::popcount(d.out_bits(b) & cell_mask[static_cast<std::size_t>(c)]);
            if (da != db) return da < db ? -1 : 1;
        }
        for (int c = 0; c < ncells; ++c) {
            const int da = std::popcount(d.in_bits(a) & cell_mask[static_cast<std::size_t>(c)]);
            const int db = std::popcount(d.in_bits(b) & cell_mask[static_cast<std::size_t>(c)]);
            if (da != db) return da < db ? -1 : 1;
        }
        return 0;
    }

    // Refine to the coarsest equitable partition below p. Each round sorts
    // every cell by signature and splits between unequal neighbors; rounds
    // repeat until stable.
    void refine(Partition& p) {
        bool changed = true;
        while (changed && p.ncells < p.n) {
            changed = false;
            snapshot_masks(p);
            const int old_ncells = p.ncells;

            std::array<std::pair<int, int>, Digraph::kMaxOrder> next{};
            int next_count = 0;
            for (int c = 0; c < old_ncells; ++c) {
                auto [start, len] = p.cells[static_cast<std::size_t>(c)];
                if (len == 1) {
                    next[static_cast<std::size_t>(next_count++)] = {start, 1};
                    continue;
                }
                int* first = p.verts.data() + start;
                std::sort(first, first + len, [&](int a, int b) {
                    const int cmp = sig_compare(a, b, old_ncells);
                    return cmp != 0 ? cmp < 0 : a < b;
                });
                int frag_start = start;
                for (int i = 1; i < len; ++i) {
                    if (sig_compare(first[i - 1], first[i], old_ncells) != 0) {
                        next[static_cast<std::size_t>(next_count++)] = {frag_start,
                                                                        start + i - frag_start};
                        frag_start = start + i;
                    }
                }
                next[static_cast<std::size_t>(next_count++)] = {frag_start,
                                                                start + len - frag_start};
                if (frag_start != start) changed = true;
            }
            p.cells = next;
            p.ncells = next_count;
        }
    }
};

// Split cell c of p into ({v}, remainder), singleton first.
void individualize(Partition& p, int c, int v) {
    auto [start, len] = p.cells[static_cast<std::size_t>(c)];
    int* first = p.verts.data() + start;
    auto it = std::find(first, first + len, v);
    std::rotate(first, it, it + 1);  // move v to the front, keep the rest stable
    for (int i = p.ncells; i > c + 1; --i)
        p.cells[static_cast<std::size_t>(i)] = p.cells[static_cast<std::size_t>(i - 1)];
    p.cells[static_cast<std::size_t>(c)] = {start, 1};
    p.cells[static_cast<std::size_t>(c + 1)] = {start + 1, len - 1};
    ++p.ncells;
}

std::uint64_t swap_bits(std::uint64_t mask, int u, int v) {
    const std::uint64_t bu = (mask >> u) & 1;
    const std::uint64_t bv = (mask >> v) & 1;
    if (bu != bv) mask ^= bit(u) | bit(v);
    return mask;
}

// Whether exchanging just u and v maps the digraph onto itself. Used to
// skip sibling branches that would retrace an identical subtree.
bool is_swap_automorphism(const Digraph& d, int u, int v) {
    const int n = d.order();
    for (int x = 0; x < n; ++x) {
        const int y = x == u ? v : x == v ? u : x;
        if (swap_bits(d.out_bits(x), u, v) != d.out_bits(y)) return false;
    }
    return true;
}

struct CanonSearch {
    const Digraph& d;
    Refiner refiner;
    int n;
    int nwords;
    std::vector<std::uint64_t> best;
    std::vector<std::uint64_t> cand;
    std::array<int, Digraph::kMaxOrder> pos_of{};
    bool have_best = false;

    explicit CanonSearch(const Digraph& dig)
        : d(dig),
          refiner(dig),
          n(dig.order()),
          nwords(static_cast<int>((static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 63) / 64)),
          best(static_cast<std::size_t>(nwords)),
          cand(static_cast<std::size_t>(nwords)) {}

    // Adjacency bitstring of the relabeled digraph, row-major, MSB-first
    // per word so that word-wise unsigned comparison equals bitstring order.
    void encode_leaf(const Partition& p) {
        for (int i = 0; i < n; ++i)
            pos_of[static_cast<std::size_t>(p.verts[static_cast<std::size_t>(i)])] = i;
        std::fill(cand.begin(), cand.end(), 0);
        for (int i = 0; i < n; ++i) {
            std::uint64_t row = d.out_bits(p.verts[static_cast<std::size_t>(i)]);
            while (row) {
                const int x = std::countr_zero(row);
                row &= row - 1;
                const int posbit = i * n + pos_of[static_cast<std::size_t>(x)];
                cand[static_cast<std::size_t>(posbit >> 6)] |=
                    std::uint64_t{1} << (63 - (posbit & 63));
            }
        }
    }

    void visit_leaf(const Partition& p) {
        encode_leaf(p);
        if (!have_best || cand < best) {
            best = cand;
            have_best = true;
        }
    }

    void run(Partition p) {
        refiner.refine(p);
        const int target = p.first_non_singleton();
        if (target < 0) {
            visit_leaf(p);
            return;
        }
        const auto [start, len] = p.cells[static_cast<std::size_t>(target)];
        std::array<int, Digraph::kMaxOrder> members{};
        for (int i = 0; i < len; ++i)
            members[static_cast<std::size_t>(i)] = p.verts[static_cast<std::size_t>(start + i)];

        std::array<int, Digraph::kMaxOrder> tried{};
        int ntried = 0;
        for (int i = 0; i < len; ++i) {
            const int v = members[static_cast<std::size_t>(i)];
            bool redundant = false;
            for (int t = 0; t < ntried && !redundant; ++t)
                redundant = is_swap_automorphism(d, tried[static_cast<std::size_t>(t)], v);
            if (redundant) continue;
            tried[static_cast<std::size_t>(ntried++)] = v;

            Partition child = p;
            individualize(child, target, v);
            run(child);
        }
    }

    std::string code() const {
        std::string out;
        out.reserve(digraph6_code_length(n));
        out.push_back(static_cast<char>(63 + n));
        const int nbits = n * n;
        int group = 0;
        int used = 0;
        for (int posbit = 0; posbit < nbits; ++posbit) {
            const int b = static_cast<int>(
                (best[static_cast<std::size_t>(posbit >> 6)] >> (63 - (posbit & 63))) & 1);
            group = (group << 1) | b;
            if (++used == 6) {
                out.push_back(static_cast<char>(63 + group));
                group = 0;
                used = 0;
            }
        }
        if (used > 0) out.push_back(static_cast<char>(63 + (group << (6 - used))));
        return out;
    }
};

Partition to_partition(const Digraph& d, const OrderedPartition& initial) {
    Partition p;
    p.n = d.order();
    p.ncells = static_cast<int>(initial.cells.size());
    int at = 0;
    for (std::size_t c = 0; c < initial.cells.size(); ++c) {
        p.cells[c] = {at, static_cast<int>(initial.cells[c].size())};
        for (int v : initial.cells[c]) p.verts[static_cast<std::size_t>(at++)] = v;
    }
    return p;
}

}  // namespace

OrderedPartition OrderedPartition::unit(int n) {
    OrderedPartition p;
    p.cells.emplace_back();
    p.cells.back().reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) p.cells.back().push_back(v);
    return p;
}

bool OrderedPartition::valid_for(int n) const {
    std::uint64_t seen = 0;
    int count = 0;
    for (const auto& cell : cells) {
        if (cell.empty()) return false;
        for (int v : cell) {
            if (v < 0 || v >= n) return false;
            if (seen & bit(v)) return false;
            seen |= bit(v);
            ++count;
        }
    }
    return count == n;
}

OrderedPartition equitable_partition(const Digraph& d, const OrderedPartition& initial) {
    if (!initial.valid_for(d.order()))
        throw std::invalid_argument("initial partition does not cover the vertex set");
    Partition p = to_partition(d, initial);
    Refiner refiner(d);
    refiner.refine(p);

    OrderedPartition out;
    out.cells.reserve(static_cast<std::size_t>(p.ncells));
    for (int c = 0; c < p.ncells; ++c) {
        auto [start, len] = p.cells[static_cast<std::size_t>(c)];
        std::vector<int> cell(p.verts.begin() + start, p.verts.begin() + start + len);
        std::sort(cell.begin(), cell.end());
        out.cells.push_back(std::move(cell));
    }
    return out;
}

OrderedPartition equitable_partition(const Digraph& d) {
    return equitable_partition(d, OrderedPartition::unit(d.order()));
}

CanonicalCode canonical_form(const Digraph& d) {
    CanonSearch search(d);
    search.run(to_partition(d, OrderedPartition::unit(d.order())));
    return CanonicalCode(search.code());
}

bool are_isomorphic(const Digraph& a, const Digraph& b) {
    if (a.order() != b.order() || a.arc_count() != b.arc_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace msd
