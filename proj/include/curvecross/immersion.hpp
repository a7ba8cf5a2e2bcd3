// Immersions: closed walks together with a left-to-right order of the
// strands running along each edge.  The orders determine the crossings,
// and swapping the sides of singular bigons drives the count down to the
// geometric minimum.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

// One traversal of an edge: curve `curve` moves from vertex index `index`
// to index+1, in direction dir = +1 when that traversal uses the forward
// arc of the edge and -1 otherwise.
struct Occurrence {
    int32_t curve = 0;
    int64_t index = 0;
    int32_t dir = 1;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Orders are stored per undirected edge, left to right as seen along the
// forward arc; strands seen along the backward arc read the list reversed.
struct Immersion {
    std::vector<Walk> curves;
    std::vector<std::vector<Occurrence>> edge_order;  // one list per edge
};

// Immersion with all strands of each edge in input order (curves first by
// position in `curves`, then by index).  Deterministic.
Immersion initial_immersion(const QuadSystem& q, std::vector<Walk> curves);

// A crossing: the strands through vertex indices i of curve_a and j of
// curve_b are forced to intersect by the circular order of their four ends
// around the shared vertex.
struct CrossingPoint {
    int32_t curve_a = 0;
    int64_t i = 0;
    int32_t curve_b = 0;
    int64_t j = 0;

    friend bool operator==(const CrossingPoint&, const CrossingPoint&) = default;
    friend auto operator<=>(const CrossingPoint&, const CrossingPoint&) = default;
};

// All crossings, sorted.  Self-crossings of curve k appear once with
// curve_a == curve_b == k and i < j.
std::vector<CrossingPoint> crossings(const QuadSystem& q, const Immersion& im);

// True when no two strands cross: around every vertex the strand ends form
// a balanced parenthesization.
bool check_embedding(const QuadSystem& q, const Immersion& im);

// Index path <start, start+len> of curve 0 bounding a contractible loop
// whose single tip is a self-crossing, if one exists.
struct IndexPath {
    int64_t start = 0;
    int64_t len = 0;
};
std::optional<IndexPath> find_monogon(const QuadSystem& q, const Immersion& im);

// A bigon of curve 0: sides <i, len> forward and <j, eps*len>, homotopic
// image paths, both tips crossings.  Singular means the swap is possible:
// interiors disjoint and the tips stay transverse.
struct Bigon {
    int64_t i = 0;
    int64_t j = 0;
    int32_t eps = 1;
    int64_t len = 0;
};

std::optional<Bigon> find_singular_bigon(const QuadSystem& q,
                                         const Immersion& im);

// Exchanges the two sides of a singular bigon: the occurrences trade their
// positions slot by slot.  Removes at least the two tip crossings.
std::pair<Walk, Immersion> swap_bigon(const QuadSystem& q, const Immersion& im,
                                      const Bigon& b);

// Immersion of the canonical form of c with exactly
// self_intersection_number(c) crossings.  c must be canonical and closed.
std::pair<Walk, Immersion> minimal_immersion(const QuadSystem& q,
                                             const Walk& c);

// Surface-level wrapper: carries the quad system and the transported curve
// alongside the immersion so callers can render or inspect it.
struct ImmersionResult {
    QuadSystem quads;
    Walk curve;
    Immersion immersion;
};
ImmersionResult minimal_immersion(const Surface& s, const Walk& c);

// One line per edge: "edge <id>: (curve,index,dir) ...", left to right.
std::string format_immersion(const QuadSystem& q, const Immersion& im);

}  // namespace curvecross
