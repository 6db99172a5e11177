#include "msd/expansion.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace msd {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

// Forward reachability over explicit rows, so callers can add or mask arcs
// without building a Digraph.
std::uint64_t reach_rows(const std::uint64_t* rows, int n, int start,
                         std::uint64_t allowed) {
    std::uint64_t reach = bit(start) & allowed;
    std::uint64_t frontier = reach;
    while (frontier) {
        std::uint64_t next = 0;
        while (frontier) {
            int v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            next |= rows[v];
        }
        next &= allowed;
        frontier = next & ~reach;
        reach |= next;
    }
    (void)n;
    return reach;
}

Digraph copy_with_fresh_vertex(const Digraph& d) {
    std::vector<Arc> arcs = d.arcs();
    return Digraph(d.order() + 1, arcs);
}

// Delete vertex v; indices above v shift down by one.
Digraph delete_vertex(const Digraph& d, int v) {
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<std::size_t>(d.arc_count()));
    for (const Arc& a : d.arcs()) {
        if (a.from == v || a.to == v) continue;
        arcs.push_back({a.from - (a.from > v), a.to - (a.to > v)});
    }
    return Digraph(d.order() - 1, arcs);
}

}  // namespace

Digraph internal_expansion(const Digraph& d, int u, int w) {
    if (!d.has_arc(u, w))
        throw std::invalid_argument("internal expansion needs an existing arc u->w");
    const int v = d.order();
    Digraph grown = copy_with_fresh_vertex(d).without_arc(u, w);
    return grown.with_arc(u, v).with_arc(v, w);
}

Digraph external_expansion(const Digraph& d, int u, int w) {
    if (u < 0 || u >= d.order() || w < 0 || w >= d.order())
        throw std::invalid_argument("external expansion endpoints out of range");
    const int v = d.order();
    return copy_with_fresh_vertex(d).with_arc(u, v).with_arc(v, w);
}

bool external_expansion_preserves_msc(const Digraph& d, int u, int w) {
    if (u == w)
        throw std::invalid_argument("external minimality test requires u != w");
    if (d.has_arc(u, w))
        throw std::invalid_argument("external minimality test requires uw not an arc");

    // Rows of d+uw on the stack; d itself stays untouched.
    const int n = d.order();
    std::uint64_t rows[Digraph::kMaxOrder];
    for (int v = 0; v < n; ++v) rows[v] = d.out_bits(v);
    rows[u] |= bit(w);
    const std::uint64_t all = d.vertex_mask();

    // Any arc xz other than uw that is transitive in d+uw kills minimality.
    for (int x = 0; x < n; ++x) {
        std::uint64_t row = rows[x];
        while (row) {
            const int z = std::countr_zero(row);
            row &= row - 1;
            if (x == u && z == w) continue;
            const std::uint64_t saved = rows[x];
            rows[x] &= ~bit(z);
            const bool transitive = (reach_rows(rows, n, x, all) & bit(z)) != 0;
            rows[x] = saved;
            if (transitive) return false;
        }
    }
    return true;
}

std::pair<Digraph, ExpansionStep> reduce_at_linear_vertex(const Digraph& d, int v) {
    if (d.order() < 3)
        throw std::invalid_argument("reduction needs order >= 3");
    if (v < 0 || v >= d.order() || std::popcount(d.out_bits(v)) != 1 ||
        std::popcount(d.in_bits(v)) != 1)
        throw std::invalid_argument("vertex " + std::to_string(v) + " is not linear");
    if (!is_minimal_strong(d))
        throw std::invalid_argument("reduction requires a minimal strong digraph");

    const int u = std::countr_zero(d.in_bits(v));   // unique in-neighbor
    const int w = std::countr_zero(d.out_bits(v));  // unique out-neighbor
    const auto shifted = [v](int x) { return x - (x > v); };

    ExpansionStep step;
    step.fresh = d.order() - 1;
    step.from = shifted(u);
    step.to = shifted(w);

    Digraph reduced = delete_vertex(d, v);
    if (u == w) {
        step.kind = ExpansionStep::Kind::external;
    } else {
        // Any u->w path other than u,v,w avoids v (v is linear), so probe
        // reachability in d - v, i.e. in the already reduced digraph.
        const bool other_path =
            (reachable_set(reduced, step.from) & bit(step.to)) != 0;
        if (other_path) {
            step.kind = ExpansionStep::Kind::external;
        } else {
            step.kind = ExpansionStep::Kind::internal;
            reduced = reduced.with_arc(step.from, step.to);
        }
    }

    if (!is_minimal_strong(reduced))
        throw std::logic_error("reduction produced a non-minimal digraph");
    return {std::move(reduced), step};
}

std::vector<ExpansionStep> reduce_to_c2(const Digraph& d) {
    if (!is_minimal_strong(d))
        throw std::invalid_argument("reduce_to_c2 requires a minimal strong digraph");
    if (d.order() < 2)
        throw std::invalid_argument("reduce_to_c2 requires order >= 2");

    std::vector<ExpansionStep> steps;
    Digraph cur = d;
    while (cur.order() > 2) {
        const std::vector<int> lin = linear_vertices(cur);
        if (lin.empty())
            throw std::logic_error("minimal strong digraph without linear vertices");
        auto [next, step] = reduce_at_linear_vertex(cur, lin.front());
        steps.push_back(step);
        cur = std::move(next);
    }
    return steps;
}

Digraph apply_step(const Digraph& d, const ExpansionStep& step) {
    if (step.fresh != d.order())
        throw std::invalid_argument("step fresh index does not match digraph order");
    if (step.kind == ExpansionStep::Kind::internal)
        return internal_expansion(d, step.from, step.to);
    return external_expansion(d, step.from, step.to);
}

}  // namespace msd
