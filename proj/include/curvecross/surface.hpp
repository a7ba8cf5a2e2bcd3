// Combinatorial surfaces: a multigraph together with a clockwise cyclic
// order of the arcs around every vertex.  Faces, Euler characteristic and
// genus are derived.  Faces may be marked perforated (boundary components).
//
// Arc numbering: edge k owns arcs 2k (forward, from[k] -> to[k]) and 2k+1
// (backward).  twin(a) flips the low bit.  Face walks follow
// next_in_face(a) = next_around_vertex(twin(a)), which makes every face
// corner a single clockwise step in the rotation.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvecross {

using Arc = int32_t;

inline Arc twin(Arc a) { return a ^ 1; }
inline int32_t edge_of(Arc a) { return a >> 1; }
inline bool is_forward(Arc a) { return (a & 1) == 0; }

struct SurfaceError : std::runtime_error {
    explicit SurfaceError(const std::string& what) : std::runtime_error(what) {}
};

class Surface {
  public:
    // edges[k] = (from, to); rotations[v] = clockwise arc cycle at v.
    // Every arc must appear in exactly one rotation, at its origin vertex.
    Surface(std::vector<std::pair<int32_t, int32_t>> edges,
            std::vector<std::vector<Arc>> rotations,
            std::vector<Arc> perforated_marks = {},
            std::vector<int32_t> edge_ids = {});

    int32_t vertex_count() const { return static_cast<int32_t>(rotation_.size()); }
    int32_t edge_count() const { return static_cast<int32_t>(edge_from_.size()); }
    int32_t arc_count() const { return 2 * edge_count(); }
    int32_t face_count() const { return static_cast<int32_t>(face_size_.size()); }

    int32_t vertex_of(Arc a) const { return arc_vertex_[a]; }
    int32_t target_of(Arc a) const { return arc_vertex_[twin(a)]; }
    Arc next_around_vertex(Arc a) const { return sigma_[a]; }
    Arc prev_around_vertex(Arc a) const { return sigma_inv_[a]; }
    Arc next_in_face(Arc a) const { return sigma_[twin(a)]; }

    int32_t degree(int32_t v) const { return static_cast<int32_t>(rotation_[v].size()); }
    const std::vector<Arc>& rotation(int32_t v) const { return rotation_[v]; }
    // Rank of a within its vertex's clockwise cycle.
    int32_t rotation_rank(Arc a) const { return arc_rank_[a]; }

    int32_t face_of(Arc a) const { return arc_face_[a]; }
    int32_t face_size(int32_t f) const { return face_size_[f]; }
    // The face walk containing arc a, starting at a.
    std::vector<Arc> face_walk(Arc a) const;
    bool perforated(int32_t f) const { return perforated_[f]; }
    int32_t perforated_count() const { return perforated_count_; }

    // Perforated faces are boundary components, not faces.
    int32_t euler_characteristic() const {
        return vertex_count() - edge_count() + face_count() - perforated_count_;
    }
    // Characteristic of the closed surface obtained by capping perforations.
    int32_t euler_characteristic_closed() const {
        return vertex_count() - edge_count() + face_count();
    }
    int32_t genus() const { return (2 - euler_characteristic_closed()) / 2; }

    // Clockwise steps from a to b around their shared origin (0 <= r < deg).
    int32_t steps_between(Arc a, Arc b) const;
    // Signed turn representative in (-deg/2, deg/2].
    int32_t turn(Arc a, Arc b) const;

    // External edge ids as used in the text formats (defaults to 1..E).
    int32_t edge_id(int32_t index) const { return edge_id_[index]; }
    std::optional<int32_t> edge_index(int32_t id) const;

    bool operator==(const Surface& o) const;

  private:
    std::vector<int32_t> edge_from_, edge_to_;
    std::vector<int32_t> edge_id_;
    std::vector<std::vector<Arc>> rotation_;
    std::vector<Arc> sigma_, sigma_inv_;
    std::vector<int32_t> arc_vertex_, arc_rank_, arc_face_;
    std::vector<int32_t> face_size_;
    std::vector<bool> perforated_;
    int32_t perforated_count_ = 0;
};

// Text format, one declaration per line, '#' starts a comment:
//   edge <id> <v_from> <v_to>
//   rotation <vertex> <signed-edge-id>...
//   perforated <signed-edge-id>
// Edge ids are positive integers.  In a rotation, +e is the arc of e leaving
// this vertex toward to[e]; -e is the arc leaving via the twin.  A
// perforation mark names the face containing the arc it denotes.
Surface parse_surface(const std::string& text);
Surface load_surface(const std::string& path);
std::string format_surface(const Surface& s);

}  // namespace curvecross
