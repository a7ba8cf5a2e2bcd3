// Annular diagrams: the ring of shared paths and quad staircases separating
// the rightmost canonical form of a closed curve from its leftmost form.
// Partial diagrams play the same role for two pieces of a single curve and
// drive the bigon search.
//
// Index alignment: right(i) and left(i) either coincide or sit diagonally
// opposite in a quad.  relation[i] stores the connecting path from right(i)
// to left(i): empty at a coincidence, else the corner path of two arcs with
// a +1 turn in the middle (the corner picks the quad).

#pragma once

#include <string>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

struct AnnularDiagram {
    Walk right;
    Walk left;  // rotated into index alignment with right
    std::vector<std::vector<Arc>> relation;

    // A spoke joins right(right_index) to left(left_index); the arc is
    // oriented from the right side to the left side.
    struct Spoke {
        int64_t right_index;
        int64_t left_index;
        Arc arc;
    };
    std::vector<Spoke> spokes;
    bool closed_staircase = false;

    int64_t size() const { return static_cast<int64_t>(right.size()); }
    bool coincident(int64_t i) const;
};

// Quad a two-arc corner relation path runs through, -1 for an empty path.
int32_t relation_quad(const Surface& s, const std::vector<Arc>& rel);

// Requires non-trivial canonical c.  The result satisfies verify_diagram.
AnnularDiagram annular_diagram(const QuadSystem& q, const Walk& c);

// Structural validation; collects human-readable violations when `why` is
// given.
bool verify_diagram(const QuadSystem& q, const AnnularDiagram& dgm,
                    std::vector<std::string>* why = nullptr);

// One line per index: "i: C" or "i: S quad=<face> spoke=<edge>".
std::string dump_diagram(const QuadSystem& q, const AnnularDiagram& dgm);

// Two index paths of the same curve, c<i, p> forward and c<j, eps*p>, whose
// image paths stay at distance <= 1: relation[p] connects c(i+p) to
// c(j+eps*p) under the same conventions as AnnularDiagram::relation.
struct PartialDiagram {
    int64_t i = 0;
    int64_t j = 0;
    int32_t eps = 1;
    std::vector<std::vector<Arc>> relation;

    int64_t steps() const { return static_cast<int64_t>(relation.size()) - 1; }
};

// All maximal partial diagrams of a primitive canonical closed walk, both
// orientations, deduplicated.  Every pair configuration appears at most
// once per orientation class; total size is O(|c|^2).
std::vector<PartialDiagram> maximal_partial_diagrams(const QuadSystem& q,
                                                     const Walk& c);

}  // namespace curvecross
