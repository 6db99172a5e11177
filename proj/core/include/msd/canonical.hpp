#pragma once

#include <string>
#include <vector>

#include "msd/digraph.hpp"

namespace msd {

/// Ordered partition of the vertex set: cells are nonempty, disjoint, and
/// cover 0..n-1. Cell order is significant.
struct OrderedPartition {
    std::vector<std::vector<int>> cells;

    static OrderedPartition unit(int n);
    bool valid_for(int n) const;
};

/// Label-invariant identifier of an isomorphism class. The bytes are the
/// digraph6 code (sans '&' header) of the canonically relabeled digraph, so
/// codes are printable, diffable, and totally ordered; equal codes mean
/// isomorphic digraphs.
class CanonicalCode {
public:
    CanonicalCode() = default;
    explicit CanonicalCode(std::string bytes) : bytes_(std::move(bytes)) {}

    const std::string& str() const { return bytes_; }
    bool empty() const { return bytes_.empty(); }

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

private:
    std::string bytes_;
};

/// Coarsest refinement of `initial` in which, for every ordered pair of
/// cells (V_i, V_j), all vertices of V_i have the same number of out-arcs
/// into V_j and the same number of in-arcs from V_j. Split fragments are
/// ordered by degree signature (out-degree vector across cells, then
/// in-degree vector), ascending; members within a cell come out ascending.
OrderedPartition equitable_partition(const Digraph& d, const OrderedPartition& initial);
OrderedPartition equitable_partition(const Digraph& d);

/// Canonical form by individualization-refinement: the code is the
/// lexicographically smallest serialized adjacency over all discrete
/// partitions the search reaches.
CanonicalCode canonical_form(const Digraph& d);

bool are_isomorphic(const Digraph& a, const Digraph& b);

}  // namespace msd
