// Near-linear embedding test for a single closed curve.
//
// The strands are inserted one index at a time into per-edge balanced
// orders.  When the next strand would be forced to cross a previous one at
// a shared corner, a switch reroutes its staircase to the other side of the
// quad; each index is switched at most twice.  The curve is simple exactly
// when the completed orders form an embedding.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "curvecross/immersion.hpp"
#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

// Side taken by each repeated traversal of the starting arc relative to the
// strand at index 0, decided by extending the shared run backward to its
// first divergence.  side = +1 puts the traversal right of index 0.
struct AnchorEntry {
    int64_t index = 0;
    int32_t side = 1;
};
std::vector<AnchorEntry> precompute_anchor_orders(const QuadSystem& q,
                                                  const Walk& c);

// switchable[i] is true when the path starting at arc [i,i+1] matches the
// rerouting pattern: turns 2^k 1 across indices that avoid arc [0,1].
std::vector<char> mark_switchable(const QuadSystem& q, const Walk& c);

struct UnzipState {
    const QuadSystem* quads = nullptr;
    Walk curve;
    std::vector<int32_t> turn;       // turn at each vertex index, maintained
    std::vector<char> switchable;    // per index, maintained across switches
    std::vector<int8_t> anchor_side; // 0 none, else +-1 relative to index 0
    std::vector<char> switched;      // indices rerouted at insertion time

    // Per-edge balanced orders over inserted occurrences.
    struct Node {
        int64_t occ = 0;  // curve index of the occurrence
        int8_t dir = 1;
        uint64_t pri = 0;
        int32_t left = -1, right = -1, parent = -1;
        int32_t count = 1;
    };
    std::vector<Node> pool;
    std::vector<int32_t> root;         // one per edge
    std::vector<int32_t> node_of;      // curve index -> pool slot, -1 unset
    int64_t next_index = 0;
    int64_t switch_count = 0;
};

UnzipState begin_unzip(const QuadSystem& q, const Walk& c);

// Reroutes the staircase starting at index i to the far side of its quads:
// turns t 2^k 1 u become (t-1) -1 -2^k (u-1).  Updates curve, turns and
// marks; the occurrences already inserted are untouched.
void apply_switch(UnzipState& st, int64_t i);

// Inserts the occurrence at st.next_index, switching first if the strand
// would otherwise be forced into a crossing at its source corner.
void insert_next(UnzipState& st);

// Runs the full insertion loop on the canonical curve and returns the final
// curve with its per-edge orders.  The orders are crossing-free iff the
// class of c is simple.
std::pair<Walk, Immersion> unzip(const QuadSystem& q, const Walk& c);

struct SimplicityResult {
    bool simple = false;
    // Embedding witness on the quad system, present when simple and the
    // class is non-trivial and hyperbolic.
    std::optional<ImmersionResult> embedding;
};

// Whether the free homotopy class of c contains a simple curve.
SimplicityResult is_simple(const Surface& s, const Walk& c);

}  // namespace curvecross
