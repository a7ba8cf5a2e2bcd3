// Reduction of a surface to a system of quads: contract a spanning tree,
// delete one edge per dual-tree adjacency until a single face remains, star
// that face from a new center vertex, and drop the original edges.  Every
// non-perforated face of the result is a quadrilateral and the graph is
// bipartite between the collapsed vertex class and the center class.
//
// The transport maps each arc of the source surface to its image path in
// the quad system (empty for tree arcs, two arcs through the center for
// everything else), so a transported walk has at most twice the length.

#pragma once

#include <vector>

#include "curvecross/surface.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

struct QuadSystem {
    Surface surface;
    int32_t node_vertex = 0;    // image of every source vertex
    int32_t center_vertex = 1;  // the added face-center vertex

    const Surface& s() const { return surface; }
};

struct CurveTransport {
    int32_t source_arc_count = 0;
    int32_t target_vertex = 0;  // image of every source vertex
    // Image path of each source arc in the target surface.
    std::vector<std::vector<Arc>> arc_image;

    Walk apply(const Walk& w) const;
};

// Requires euler_characteristic() < 0.
std::pair<QuadSystem, CurveTransport> quadify(const Surface& s);

// Structural validation of a quad system (used by tests and quadify itself).
// Returns a list of violations, empty when valid.
std::vector<std::string> quad_system_violations(const QuadSystem& q);

namespace detail {

// Reduction to a single vertex and a single non-perforated face, without the
// starring step.  Exposed for the low-genus class computations.
struct Reduction {
    Surface reduced;
    CurveTransport transport;        // source walk -> walk on reduced
    std::vector<int32_t> loop_edges; // surviving edge indices, in id order
};
Reduction reduce_to_bouquet(const Surface& s);

// quadify without the negative-characteristic gate (torus fixtures).
std::pair<QuadSystem, CurveTransport> quadify_impl(const Surface& s);

// Net signed count of edge traversals of a closed walk, per edge id order of
// the bouquet obtained from reduce_to_bouquet.  Two closed walks on a sphere
// or torus are freely homotopic iff their classes match.
std::vector<int64_t> abelian_class(const Surface& s, const Walk& w);

// Winding number of a closed walk around an annulus (a surface with exactly
// two perforated faces and genus zero).  Counts signed crossings of a dual
// path joining the two perforations.
int64_t annulus_winding(const Surface& s, const Walk& w);

// Orientable double: two mirrored copies of the surface glued along a tube
// of quads at every perforated face.  Arc and vertex ids of the first copy
// are preserved, so walks on the source are valid on the double verbatim.
// The result has no perforations and twice the Euler characteristic.
Surface mirror_double(const Surface& s);

}  // namespace detail

}  // namespace curvecross
