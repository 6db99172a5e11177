#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace msd {

struct Arc {
    int from = 0;
    int to = 0;
    friend bool operator==(const Arc&, const Arc&) = default;
    friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Loop-free digraph on densely indexed vertices 0..n-1, n <= 62.
/// Adjacency is kept both ways (out- and in-neighbor bitmaps) so that
/// reachability and degree queries are single-word operations. Values are
/// immutable after construction; all operations on them are pure functions.
class Digraph {
public:
    static constexpr int kMaxOrder = 62;  // matches the digraph6 short form

    explicit Digraph(int order);
    Digraph(int order, std::span<const Arc> arcs);
    Digraph(int order, std::initializer_list<Arc> arcs);

    static Digraph cycle(int n);     // C_n: arcs i -> (i+1) mod n, n >= 2
    static Digraph complete(int n);  // K_n: all arcs u != w
    static Digraph single_vertex() { return Digraph(1); }

    int order() const { return n_; }
    int arc_count() const { return m_; }

    bool has_arc(int u, int w) const;
    std::uint64_t out_bits(int v) const { return rows_[static_cast<std::size_t>(v)]; }
    std::uint64_t in_bits(int v) const { return rows_[static_cast<std::size_t>(n_ + v)]; }
    int out_degree(int v) const;
    int in_degree(int v) const;
    std::uint64_t vertex_mask() const;  // low n bits set

    std::vector<Arc> arcs() const;  // sorted by (from, to)

    Digraph with_arc(int u, int w) const;
    Digraph without_arc(int u, int w) const;

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    void check_vertex(int v) const;
    void add_arc_checked(int u, int w);

    int n_ = 1;
    int m_ = 0;
    std::vector<std::uint64_t> rows_;  // out_0..out_{n-1}, in_0..in_{n-1}
};

/// A directed cycle given as its vertex sequence; every consecutive pair and
/// the wrap-around pair must be an arc of the host digraph.
struct VertexCycle {
    std::vector<int> vertices;
    int length() const { return static_cast<int>(vertices.size()); }
};

bool is_cycle_of(const Digraph& d, const VertexCycle& c);

/// Vertices reachable from start by directed walks, start included.
std::uint64_t reachable_set(const Digraph& d, int start);

bool is_strongly_connected(const Digraph& d);

/// Vertices with indegree 1 and outdegree 1, ascending.
std::vector<int> linear_vertices(const Digraph& d);

/// True iff a u->w path of length >= 2 exists besides the arc itself.
/// (u,w) must be an arc of d.
bool is_transitive_arc(const Digraph& d, int u, int w);

/// Strongly connected with no transitive arc; equivalently, deleting any
/// single arc destroys strong connectivity.
bool is_minimal_strong(const Digraph& d);

/// Merge all vertices of the cycle into its smallest member and re-index
/// densely. Parallel arcs created by the merge collapse to one; self-loops
/// are dropped.
Digraph contract_cycle(const Digraph& d, const VertexCycle& c);

/// m - n + 1 for a strongly connected digraph; the exact number of cycle
/// contractions needed to reach a single vertex.
int cyclomatic_number(const Digraph& d);

/// Some directed cycle of d, rotated to start at its smallest vertex.
/// Deterministic; throws if d is acyclic.
VertexCycle find_any_cycle(const Digraph& d);

}  // namespace msd
