// Geometric intersection and self-intersection numbers.
//
// On a hyperbolic surface the count is assembled from double paths of the
// two canonical forms against the annular diagram of the first curve; the
// sphere, disk, cylinder and torus are dispatched to closed formulas.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "curvecross/diagram.hpp"
#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

// Forward index paths <i, len> of c and <j, len> of d with the same image.
struct DoublePath {
    int64_t i = 0;
    int64_t j = 0;
    int64_t len = 0;
    bool maximal = false;
};

// All maximal double paths of two closed walks on the same surface,
// including length zero (shared vertices).  For self==true c and d must be
// the same walk and the diagonal i == j is skipped.
std::vector<DoublePath> maximal_double_paths(const Surface& s, const Walk& c,
                                             const Walk& d, bool self);

// Whether the strands along a double path cross at its tips: for len >= 1
// the two endpoint wedges must wind the same way; for len == 0 exactly one
// of the d-strand ends must lie in the clockwise wedge from the incoming to
// the outgoing c-arc.
bool classify_crossing(const Surface& s, const Walk& c, const Walk& d,
                       const DoublePath& p);

// The crossing double paths charged to a curve pair, bucketed by which side
// of the annular diagram of c carries them.
struct CrossingSets {
    std::vector<DoublePath> positive;  // against the right form, len >= 1
    std::vector<DoublePath> zero;      // against the right form, len == 0
    std::vector<DoublePath> negative;  // against the inverse left form
    int64_t total() const {
        return static_cast<int64_t>(positive.size() + zero.size() +
                                    negative.size());
    }
};

CrossingSets crossing_sets(const QuadSystem& q, const AnnularDiagram& dgm,
                           const Walk& d, bool self);

// Free homotopy class of a closed walk on a genus one surface, as the pair
// of signed traversal counts over the two loops of the reduced bouquet.
std::pair<int64_t, int64_t> torus_classes(const Surface& s, const Walk& c);

// Geometric intersection number of two closed walks (minimum number of
// transverse crossings over representatives in general position).
int64_t intersection_number(const Surface& s, const Walk& c, const Walk& d);

// Minimum number of self-crossings over representatives of c.
int64_t self_intersection_number(const Surface& s, const Walk& c);

}  // namespace curvecross
