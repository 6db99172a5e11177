#include "msd/digraph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace msd {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

}  // namespace

Digraph::Digraph(int order) : n_(order) {
    if (order < 1 || order > kMaxOrder)
        throw std::invalid_argument("digraph order must be in 1.." +
                                    std::to_string(kMaxOrder) + ", got " +
                                    std::to_string(order));
    rows_.assign(static_cast<std::size_t>(2 * n_), 0);
}

Digraph::Digraph(int order, std::span<const Arc> arcs) : Digraph(order) {
    for (const Arc& a : arcs) add_arc_checked(a.from, a.to);
}

Digraph::Digraph(int order, std::initializer_list<Arc> arcs)
    : Digraph(order, std::span<const Arc>(arcs.begin(), arcs.size())) {}

Digraph Digraph::cycle(int n) {
    if (n < 2) throw std::invalid_argument("cycle needs order >= 2");
    Digraph d(n);
    for (int i = 0; i < n; ++i) d.add_arc_checked(i, (i + 1) % n);
    return d;
}

Digraph Digraph::complete(int n) {
    Digraph d(n);
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w)
            if (u != w) d.add_arc_checked(u, w);
    return d;
}

void Digraph::check_vertex(int v) const {
    if (v < 0 || v >= n_)
        throw std::invalid_argument("vertex " + std::to_string(v) +
                                    " out of range 0.." + std::to_string(n_ - 1));
}

void Digraph::add_arc_checked(int u, int w) {
    check_vertex(u);
    check_vertex(w);
    if (u == w) throw std::invalid_argument("self-loops are not allowed");
    if (rows_[static_cast<std::size_t>(u)] & bit(w)) return;  // set semantics
    rows_[static_cast<std::size_t>(u)] |= bit(w);
    rows_[static_cast<std::size_t>(n_ + w)] |= bit(u);
    ++m_;
}

bool Digraph::has_arc(int u, int w) const {
    check_vertex(u);
    check_vertex(w);
    return (out_bits(u) & bit(w)) != 0;
}

int Digraph::out_degree(int v) const {
    check_vertex(v);
    return std::popcount(out_bits(v));
}

int Digraph::in_degree(int v) const {
    check_vertex(v);
    return std::popcount(in_bits(v));
}

std::uint64_t Digraph::vertex_mask() const {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
}

std::vector<Arc> Digraph::arcs() const {
    std::vector<Arc> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u) {
        std::uint64_t row = out_bits(u);
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            out.push_back({u, w});
        }
    }
    return out;
}

Digraph Digraph::with_arc(int u, int w) const {
    Digraph d = *this;
    d.add_arc_checked(u, w);
    return d;
}

Digraph Digraph::without_arc(int u, int w) const {
    check_vertex(u);
    check_vertex(w);
    Digraph d = *this;
    if (d.rows_[static_cast<std::size_t>(u)] & bit(w)) {
        d.rows_[static_cast<std::size_t>(u)] &= ~bit(w);
        d.rows_[static_cast<std::size_t>(n_ + w)] &= ~bit(u);
        --d.m_;
    }
    return d;
}

bool is_cycle_of(const Digraph& d, const VertexCycle& c) {
    const int q = c.length();
    if (q < 2) return false;
    std::uint64_t seen = 0;
    for (int v : c.vertices) {
        if (v < 0 || v >= d.order()) return false;
        if (seen & bit(v)) return false;  // vertices must be distinct
        seen |= bit(v);
    }
    for (int i = 0; i < q; ++i) {
        int u = c.vertices[static_cast<std::size_t>(i)];
        int w = c.vertices[static_cast<std::size_t>((i + 1) % q)];
        if (!(d.out_bits(u) & bit(w))) return false;
    }
    return true;
}

std::uint64_t reachable_set(const Digraph& d, int start) {
    std::uint64_t reach = bit(start);
    std::uint64_t frontier = reach;
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= d.out_bits(v);
        }
        frontier = next & ~reach;
        reach |= next;
    }
    return reach;
}

namespace {

// Reachability with one arc removed and/or one vertex masked out entirely.
std::uint64_t reach_restricted(const Digraph& d, int start, int banned_from,
                               int banned_to, std::uint64_t allowed) {
    std::uint64_t reach = bit(start) & allowed;
    if (!reach) return 0;
    std::uint64_t frontier = reach;
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint64_t row = d.out_bits(v);
            if (v == banned_from) row &= ~bit(banned_to);
            next |= row;
        }
        next &= allowed;
        frontier = next & ~reach;
        reach |= next;
    }
    return reach;
}

std::uint64_t backward_reachable_set(const Digraph& d, int start) {
    std::uint64_t reach = bit(start);
    std::uint64_t frontier = reach;
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= d.in_bits(v);
        }
        frontier = next & ~reach;
        reach |= next;
    }
    return reach;
}

}  // namespace

bool is_strongly_connected(const Digraph& d) {
    if (d.order() == 1) return true;
    const std::uint64_t all = d.vertex_mask();
    return reachable_set(d, 0) == all && backward_reachable_set(d, 0) == all;
}

std::vector<int> linear_vertices(const Digraph& d) {
    std::vector<int> out;
    for (int v = 0; v < d.order(); ++v)
        if (std::popcount(d.out_bits(v)) == 1 && std::popcount(d.in_bits(v)) == 1)
            out.push_back(v);
    return out;
}

bool is_transitive_arc(const Digraph& d, int u, int w) {
    if (!d.has_arc(u, w))
        throw std::invalid_argument("(" + std::to_string(u) + "," + std::to_string(w) +
                                    ") is not an arc");
    // A walk u -> w that avoids the arc itself yields a path of length >= 2.
    std::uint64_t reach = reach_restricted(d, u, u, w, d.vertex_mask());
    return (reach & bit(w)) != 0;
}

bool is_minimal_strong(const Digraph& d) {
    if (!is_strongly_connected(d)) return false;
    for (int u = 0; u < d.order(); ++u) {
        std::uint64_t row = d.out_bits(u);
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            std::uint64_t reach = reach_restricted(d, u, u, w, d.vertex_mask());
            if (reach & bit(w)) return false;
        }
    }
    return true;
}

Digraph contract_cycle(const Digraph& d, const VertexCycle& c) {
    if (!is_cycle_of(d, c))
        throw std::invalid_argument("argument is not a cycle of the digraph");
    const int n = d.order();
    const int q = c.length();
    std::uint64_t cyc = 0;
    for (int v : c.vertices) cyc |= bit(v);
    const int keep = std::countr_zero(cyc);

    std::vector<int> remap(static_cast<std::size_t>(n), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if ((cyc & bit(v)) && v != keep) continue;
        remap[static_cast<std::size_t>(v)] = next++;
    }

    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(d.arc_count()));
    for (int u = 0; u < n; ++u) {
        std::uint64_t row = d.out_bits(u);
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            int a = (cyc & bit(u)) ? keep : u;
            int b = (cyc & bit(w)) ? keep : w;
            if (a == b) continue;  // intra-cycle arc becomes a self-loop
            arcs.push_back({remap[static_cast<std::size_t>(a)],
                            remap[static_cast<std::size_t>(b)]});
        }
    }
    return Digraph(n - (q - 1), arcs);
}

int cyclomatic_number(const Digraph& d) {
    if (!is_strongly_connected(d))
        throw std::invalid_argument("cyclomatic number requires a strongly connected digraph");
    return d.arc_count() - d.order() + 1;
}

VertexCycle find_any_cycle(const Digraph& d) {
    const int n = d.order();
    std::vector<int> path;
    std::uint64_t on_path = 0;
    std::uint64_t done = 0;
    VertexCycle found;

    auto dfs = [&](auto&& self, int v) -> bool {
        path.push_back(v);
        on_path |= bit(v);
        std::uint64_t row = d.out_bits(v);
        while (row) {
            int w = std::countr_zero(row);
            row &= row - 1;
            if (on_path & bit(w)) {
                auto it = std::find(path.begin(), path.end(), w);
                found.vertices.assign(it, path.end());
                return true;
            }
            if (!(done & bit(w)) && self(self, w)) return true;
        }
        path.pop_back();
        on_path &= ~bit(v);
        done |= bit(v);
        return false;
    };

    for (int v = 0; v < n; ++v) {
        if (done & bit(v)) continue;
        if (dfs(dfs, v)) {
            auto& vs = found.vertices;
            auto min_it = std::min_element(vs.begin(), vs.end());
            std::rotate(vs.begin(), min_it, vs.end());
            return found;
        }
    }
    throw std::invalid_argument("digraph is acyclic");
}

}  // namespace msd
