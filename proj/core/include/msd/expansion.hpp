#pragma once

#include <utility>
#include <vector>

#include "msd/digraph.hpp"

namespace msd {

/// One vertex-adding expansion, or the record left behind by its inverse
/// reduction. `fresh` is the index of the added vertex and always equals the
/// order of the digraph being expanded.
struct ExpansionStep {
    enum class Kind { internal, external };
    Kind kind = Kind::external;
    int from = 0;  // u
    int to = 0;    // w; may equal `from` only for an external step
    int fresh = 0;
    friend bool operator==(const ExpansionStep&, const ExpansionStep&) = default;
};

/// Subdivide the arc u->w with a fresh vertex v: arcs u->v, v->w replace
/// u->w. Order grows by 1, size by 1. Preserves minimal strong connectivity.
Digraph internal_expansion(const Digraph& d, int u, int w);

/// Attach a fresh vertex v with arcs u->v and v->w; u = w is allowed.
/// Order grows by 1, size by 2. Preserves strong connectivity, but not
/// necessarily minimality.
Digraph external_expansion(const Digraph& d, int u, int w);

/// For a minimal strong d with u != w and uw not an arc: true iff e_uw(d) is
/// again minimal strong, decided by scanning d+uw for a transitive arc other
/// than uw itself (the two conditions are equivalent).
bool external_expansion_preserves_msc(const Digraph& d, int u, int w);

/// Undo the expansion that introduced the linear vertex v of a minimal
/// strong digraph of order >= 3. Returns the reduced digraph together with
/// the step that re-creates d: applying the step yields a digraph identical
/// to d up to the deletion re-indexing (v removed, higher indices shifted
/// down, the fresh vertex appended last).
std::pair<Digraph, ExpansionStep> reduce_at_linear_vertex(const Digraph& d, int v);

/// Reduce a minimal strong digraph of order n >= 2 to C_2 with exactly n-2
/// reductions, always at the smallest-index linear vertex. Replaying the
/// steps in reverse order from C_2 rebuilds a digraph isomorphic to d.
std::vector<ExpansionStep> reduce_to_c2(const Digraph& d);

/// Apply one recorded step; step.fresh must equal d.order().
Digraph apply_step(const Digraph& d, const ExpansionStep& step);

}  // namespace msd
