// Walks on a surface: closed curves and paths as arc sequences, their turn
// sequences, geodesic and canonical predicates, primitive roots, homotopy
// tests, and the elementary homotopy moves used by the oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvecross/surface.hpp"

namespace curvecross {

struct WalkError : std::runtime_error {
    explicit WalkError(const std::string& what) : std::runtime_error(what) {}
};

struct Walk {
    std::vector<Arc> arcs;
    bool closed = true;
    int32_t base = 0;  // vertex carrying an empty walk

    size_t size() const { return arcs.size(); }
    bool trivial() const { return arcs.empty(); }

    // Index access; closed walks index modulo size.
    Arc arc(int64_t i) const;
    // Vertex i of the walk (origin of arc i).
    int32_t vertex(const Surface& s, int64_t i) const;

    bool operator==(const Walk& o) const {
        return closed == o.closed && arcs == o.arcs &&
               (!arcs.empty() || base == o.base);
    }
};

Walk make_closed(const Surface& s, std::vector<Arc> arcs);
Walk make_path(const Surface& s, std::vector<Arc> arcs, int32_t base_if_empty = 0);
Walk trivial_closed(int32_t vertex);

// Throws WalkError if consecutive arcs are not incident (or the walk does
// not close up).
void validate_walk(const Surface& s, const Walk& w);

Walk inverse(const Walk& w);
Walk power(const Walk& w, int32_t k);          // closed walks only, k >= 1
Walk rotated(const Walk& w, int64_t r);        // closed walks only
// Subpath of j arcs starting at index i (closed walks may wrap).
Walk subpath(const Walk& w, int64_t i, int64_t j, const Surface& s);

struct TurnSequence {
    std::vector<std::pair<int32_t, int32_t>> runs;  // (turn value, multiplicity)
    bool cyclic = false;

    int64_t expanded_size() const;
    std::vector<int32_t> expand() const;
    static TurnSequence encode(const std::vector<int32_t>& turns, bool cyclic);
};

// Turns of w: cyclic (one turn per vertex) for closed walks, interior turns
// only for paths.
TurnSequence turn_sequence(const Surface& s, const Walk& w);
std::vector<int32_t> turns_of(const Surface& s, const Walk& w);

bool is_geodesic(const Surface& s, const Walk& w);
bool is_canonical(const Surface& s, const Walk& w);

// Smallest d with w = d^k as arc sequences; requires canonical input.
std::pair<Walk, int32_t> primitive_root(const Surface& s, const Walk& w);

// --- Elementary homotopy moves -------------------------------------------

struct ElementaryMove {
    enum Kind { InsertSpur, RemoveSpur, FaceExchange } kind;
    int64_t pos = 0;   // walk index where the move applies
    Arc arc = -1;      // InsertSpur: outgoing arc; FaceExchange: face-walk arc
                       // matched at pos (the start of the replaced segment)
    int32_t take = 0;  // FaceExchange: number of walk arcs replaced (>= 0)
    // FaceExchange only: the piece runs backward along the face, i.e. its
    // reversed twins read as the facial run from arc.  Swapping orientation
    // inverts the move, so the move set is closed under undoing.
    bool reverse = false;
};

Walk apply_move(const Surface& s, const Walk& w, const ElementaryMove& m);
// All applicable moves at desk scale (insertions enumerated per position).
std::vector<ElementaryMove> enumerate_moves(const Surface& s, const Walk& w,
                                            bool include_insertions = true);

// --- Canonical forms -------------------------------------------------------

// Rightmost canonical form.  Closed output is rotated to the
// lexicographically least arc sequence; contractible input collapses to the
// trivial walk at a reachable vertex.  Paths keep their endpoints.
Walk canonicalize(const Surface& s, const Walk& w);
Walk leftmost_canonical(const Surface& s, const Walk& w);

bool freely_homotopic(const Surface& s, const Walk& a, const Walk& b);
bool path_homotopic(const Surface& s, const Walk& a, const Walk& b);

// Lexicographically least rotation (Booth).  Exposed for tests.
std::vector<Arc> least_rotation(std::vector<Arc> v);

// --- Text format -----------------------------------------------------------

// Whitespace-separated signed edge ids; "@<vertex>" is the trivial walk.
// Paths are written with a leading "path" token.
Walk parse_walk(const Surface& s, const std::string& text);
std::string format_walk(const Surface& s, const Walk& w);

}  // namespace curvecross
