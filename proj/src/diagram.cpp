#include "curvecross/diagram.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>
#include <utility>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/surface.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

namespace {

int64_t imod(int64_t x, int64_t n) { return ((x % n) + n) % n; }

void internal(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

bool quad_face(const Surface& s, int32_t f) {
    return s.face_size(f) == 4 && !s.perforated(f);
}

// The four arcs of a quad's facial walk starting at a.  Callers check the
// face is a quad first.
std::array<Arc, 4> quad_walk(const Surface& s, Arc a) {
    std::array<Arc, 4> w;
    w[0] = a;
    for (int k = 1; k < 4; ++k) w[k] = s.next_in_face(w[k - 1]);
    return w;
}

void sort_spokes(std::vector<AnnularDiagram::Spoke>& spokes) {
    std::sort(spokes.begin(), spokes.end(), [](const auto& a, const auto& b) {
        return std::tie(a.right_index, a.left_index, a.arc) <
               std::tie(b.right_index, b.left_index, b.arc);
    });
}

}  // namespace

bool AnnularDiagram::coincident(int64_t i) const {
    return relation[imod(i, size())].empty();
}

int32_t relation_quad(const Surface& s, const std::vector<Arc>& rel) {
    return rel.empty() ? -1 : s.face_of(rel[0]);
}

namespace {

// One alignment attempt between the right boundary c and the leftmost form
// L.  Starting from a position (i0, j0) where both walks sit at a common
// vertex, one period of each boundary is consumed in lockstep: equal arcs
// advance together, and where the boundaries part, a staircase of quads is
// parsed cell by cell until they rejoin.  Every completed parse is handed
// to verify_diagram; only accepted diagrams are kept.
class OpenMarch {
  public:
    OpenMarch(const QuadSystem& q, const Walk& c, const Walk& L)
        : q_(q), s_(q.s()), c_(c), L_(L), n_(static_cast<int64_t>(c.size())) {}

    std::optional<AnnularDiagram> run(int64_t i0, int64_t j0) {
        i_end_ = i0 + n_;
        j_end_ = j0 + n_;
        delta_ = j0 - i0;
        budget_ = 64 * (n_ + 4);
        rel_.assign(n_, {});
        spokes_.clear();
        result_.reset();
        frontier(i0, j0);
        return result_;
    }

  private:
    const QuadSystem& q_;
    const Surface& s_;
    const Walk& c_;
    const Walk& L_;
    int64_t n_;
    int64_t i_end_ = 0;
    int64_t j_end_ = 0;
    int64_t delta_ = 0;
    int64_t budget_ = 0;
    std::vector<std::vector<Arc>> rel_;
    // (right index, left index in L coordinates, arc); reduced on success.
    std::vector<std::tuple<int64_t, int64_t, Arc>> spokes_;
    std::optional<AnnularDiagram> result_;

    bool pair_set(int64_t m, int64_t lam, Arc a, Arc b) {
        if (lam - m != delta_) return false;
        auto& r = rel_[imod(m, n_)];
        if (!r.empty()) return false;
        r = {a, b};
        return true;
    }

    void pair_clear(int64_t m) { rel_[imod(m, n_)].clear(); }

    bool done() {
        AnnularDiagram d;
        d.right = c_;
        d.left = rotated(L_, imod(delta_, n_));
        d.relation = rel_;
        for (const auto& [r, l, a] : spokes_)
            d.spokes.push_back({imod(r, n_), imod(l - delta_, n_), a});
        sort_spokes(d.spokes);
        d.closed_staircase = false;  // the start position stays coincident
        if (!verify_diagram(q_, d)) return false;
        result_ = std::move(d);
        return true;
    }

    bool frontier(int64_t i, int64_t j) {
        if (--budget_ < 0) return false;
        if (i == i_end_) return j == j_end_ && done();
        if (j >= j_end_) return false;
        if (c_.arc(i) == L_.arc(j)) return frontier(i + 1, j + 1);
        if (s_.vertex_of(c_.arc(i)) != s_.vertex_of(L_.arc(j))) return false;
        if (s_.next_around_vertex(L_.arc(j)) != c_.arc(i)) return false;
        return staircase(i, j);
    }

    // First cell of a staircase opening at (i, j).  Its facial walk starts
    // with c's arc and closes with the twin of L's arc; the split of the
    // remaining two sides among the boundaries is tried in every legal way.
    bool staircase(int64_t i, int64_t j) {
        if (--budget_ < 0) return false;
        const Arc r1 = c_.arc(i);
        if (!quad_face(s_, s_.face_of(r1))) return false;
        const auto w = quad_walk(s_, r1);
        if (w[3] != twin(L_.arc(j))) return false;
        // single cell: both boundaries contribute two arcs, no spokes
        if (i + 2 <= i_end_ && j + 2 <= j_end_ && w[1] == c_.arc(i + 1) &&
            w[2] == twin(L_.arc(j + 1))) {
            if (pair_set(i + 1, j + 1, w[1], w[2])) {
                if (frontier(i + 2, j + 2)) return true;
                pair_clear(i + 1);
            }
        }
        // two right arcs, spoke w[2] out
        if (i + 2 <= i_end_ && j + 1 <= j_end_ && w[1] == c_.arc(i + 1)) {
            if (pair_set(i + 1, j + 1, w[1], w[2])) {
                spokes_.emplace_back(i + 2, j + 1, w[2]);
                if (cells(i + 2, j + 1, w[2])) return true;
                spokes_.pop_back();
                pair_clear(i + 1);
            }
        }
        // one right arc, spoke w[1] out
        if (i + 1 <= i_end_ && j + 2 <= j_end_ && w[2] == twin(L_.arc(j + 1))) {
            if (pair_set(i + 1, j + 1, w[1], w[2])) {
                spokes_.emplace_back(i + 1, j + 2, w[1]);
                if (cells(i + 1, j + 2, w[1])) return true;
                spokes_.pop_back();
                pair_clear(i + 1);
            }
        }
        return false;
    }

    // Later staircase cells, entered through the previous cell's spoke.
    // ri / li point at the first boundary arcs not yet consumed.
    bool cells(int64_t ri, int64_t li, Arc s_out_prev) {
        if (--budget_ < 0) return false;
        const Arc e = twin(s_out_prev);
        if (!quad_face(s_, s_.face_of(e))) return false;
        const auto w = quad_walk(s_, e);
        // closing cell, two right arcs
        if (ri + 2 <= i_end_ && li + 1 <= j_end_ && w[1] == c_.arc(ri) &&
            w[2] == c_.arc(ri + 1) && w[3] == twin(L_.arc(li))) {
            if (pair_set(ri + 1, li, w[2], w[3])) {
                if (frontier(ri + 2, li + 1)) return true;
                pair_clear(ri + 1);
            }
        }
        // closing cell, two left arcs
        if (ri + 1 <= i_end_ && li + 2 <= j_end_ && w[1] == c_.arc(ri) &&
            w[2] == twin(L_.arc(li + 1)) && w[3] == twin(L_.arc(li))) {
            if (pair_set(ri, li + 1, w[1], w[2])) {
                if (frontier(ri + 1, li + 2)) return true;
                pair_clear(ri);
            }
        }
        // interior cell, two right arcs
        if (ri + 2 <= i_end_ && w[1] == c_.arc(ri) && w[2] == c_.arc(ri + 1)) {
            if (pair_set(ri + 1, li, w[2], w[3])) {
                spokes_.emplace_back(ri + 2, li, w[3]);
                if (cells(ri + 2, li, w[3])) return true;
                spokes_.pop_back();
                pair_clear(ri + 1);
            }
        }
        // interior cell, one arc each side
        if (ri + 1 <= i_end_ && li + 1 <= j_end_ && w[1] == c_.arc(ri) &&
            w[3] == twin(L_.arc(li))) {
            if (pair_set(ri, li + 1, w[1], w[2])) {
                spokes_.emplace_back(ri + 1, li + 1, w[2]);
                if (cells(ri + 1, li + 1, w[2])) return true;
                spokes_.pop_back();
                pair_clear(ri);
            }
        }
        // interior cell, two left arcs
        if (li + 2 <= j_end_ && w[2] == twin(L_.arc(li + 1)) &&
            w[3] == twin(L_.arc(li))) {
            if (pair_set(ri, li + 1, w[1], w[2])) {
                spokes_.emplace_back(ri, li + 2, w[1]);
                if (cells(ri, li + 2, w[1])) return true;
                spokes_.pop_back();
                pair_clear(ri);
            }
        }
        return false;
    }
};

// Parse attempt for boundaries sharing no position at all: one staircase
// wraps around the whole annulus.  The left boundary is unanchored while
// parsing; every surviving rotation of L is tracked alongside, and the
// alignment offset falls out of the collected twins at the end.
class ClosedMarch {
  public:
    ClosedMarch(const QuadSystem& q, const Walk& c, const Walk& L)
        : q_(q), s_(q.s()), c_(c), L_(L), n_(static_cast<int64_t>(c.size())) {}

    // b: first index of the start cell's right run; x: its length (1 or 2).
    std::optional<AnnularDiagram> run(int64_t b, int x) {
        budget_ = 64 * (n_ + 4);
        rel_.assign(n_, {});
        spokes_.clear();
        assembled_.clear();
        lcands_.clear();
        result_.reset();
        b_ = b;

        const Arc r1 = c_.arc(b);
        if (!quad_face(s_, s_.face_of(r1))) return result_;
        const auto w = quad_walk(s_, r1);
        sin_start_ = w[3];
        if (x == 2) {
            if (n_ < 2 || w[1] != c_.arc(b + 1)) return result_;
            k_ = -(b + 1);
            rel_[imod(b + 1, n_)] = {w[1], w[2]};
            spokes_.emplace_back(b + 2, 0, w[2]);
            cell(b + 2, 0, w[2]);
        } else {
            k_ = 1 - b;
            rel_[imod(b, n_)] = {r1, w[1]};
            if (push_left(twin(w[2]))) {
                spokes_.emplace_back(b + 1, 1, w[1]);
                cell(b + 1, 1, w[1]);
            }
        }
        return result_;
    }

  private:
    const QuadSystem& q_;
    const Surface& s_;
    const Walk& c_;
    const Walk& L_;
    int64_t n_;
    int64_t b_ = 0;
    int64_t k_ = 0;  // left minus right pair offset, fixed by the start cell
    int64_t budget_ = 0;
    Arc sin_start_ = -1;
    std::vector<std::vector<Arc>> rel_;
    // (right index, left position from the parse start, arc)
    std::vector<std::tuple<int64_t, int64_t, Arc>> spokes_;
    std::vector<Arc> assembled_;    // left boundary arcs in parse order
    std::vector<int64_t> lcands_;   // rotations of L matching assembled_
    std::optional<AnnularDiagram> result_;

    bool pair_set(int64_t m, int64_t lam, Arc a, Arc b) {
        if (lam - m != k_) return false;
        auto& r = rel_[imod(m, n_)];
        if (!r.empty()) return false;
        r = {a, b};
        return true;
    }

    void pair_clear(int64_t m) { rel_[imod(m, n_)].clear(); }

    bool push_left(Arc a) {
        const int64_t t = static_cast<int64_t>(assembled_.size());
        if (t >= n_) return false;
        if (t == 0) {
            for (int64_t p = 0; p < n_; ++p)
                if (L_.arc(p) == a) lcands_.push_back(p);
        } else {
            std::vector<int64_t> keep;
            for (int64_t p : lcands_)
                if (L_.arc(p + t) == a) keep.push_back(p);
            lcands_ = std::move(keep);
        }
        assembled_.push_back(a);
        return !lcands_.empty();
    }

    void finish(Arc s_out_last) {
        if (twin(s_out_last) != sin_start_) return;
        for (int64_t p : lcands_) {
            const int64_t delta = p + k_;
            AnnularDiagram d;
            d.right = c_;
            d.left = rotated(L_, imod(delta, n_));
            d.relation = rel_;
            for (const auto& [r, lam, a] : spokes_)
                d.spokes.push_back({imod(r, n_), imod(lam - k_, n_), a});
            sort_spokes(d.spokes);
            d.closed_staircase = true;
            if (verify_diagram(q_, d)) {
                result_ = std::move(d);
                return;
            }
        }
    }

    void cell(int64_t ri, int64_t lcount, Arc s_out_prev) {
        if (result_ || --budget_ < 0) return;
        const int64_t rdone = ri - b_;
        if (rdone == n_ && lcount == n_) {
            finish(s_out_prev);
            return;
        }
        const Arc e = twin(s_out_prev);
        if (!quad_face(s_, s_.face_of(e))) return;
        const auto w = quad_walk(s_, e);
        // two right arcs
        if (rdone + 2 <= n_ && w[1] == c_.arc(ri) && w[2] == c_.arc(ri + 1)) {
            if (pair_set(ri + 1, lcount, w[2], w[3])) {
                spokes_.emplace_back(ri + 2, lcount, w[3]);
                cell(ri + 2, lcount, w[3]);
                if (result_) return;
                spokes_.pop_back();
                pair_clear(ri + 1);
            }
        }
        // one arc each side
        if (rdone + 1 <= n_ && lcount + 1 <= n_ && w[1] == c_.arc(ri)) {
            if (pair_set(ri, lcount + 1, w[1], w[2])) {
                const auto save_a = assembled_.size();
                const auto save_l = lcands_;
                if (push_left(twin(w[3]))) {
                    spokes_.emplace_back(ri + 1, lcount + 1, w[2]);
                    cell(ri + 1, lcount + 1, w[2]);
                    if (result_) return;
                    spokes_.pop_back();
                }
                assembled_.resize(save_a);
                lcands_ = save_l;
                pair_clear(ri);
            }
        }
        // two left arcs
        if (lcount + 2 <= n_) {
            if (pair_set(ri, lcount + 1, w[1], w[2])) {
                const auto save_a = assembled_.size();
                const auto save_l = lcands_;
                if (push_left(twin(w[3])) && push_left(twin(w[2]))) {
                    spokes_.emplace_back(ri, lcount + 2, w[1]);
                    cell(ri, lcount + 2, w[1]);
                    if (result_) return;
                    spokes_.pop_back();
                }
                assembled_.resize(save_a);
                lcands_ = save_l;
                pair_clear(ri);
            }
        }
    }
};

}  // namespace

AnnularDiagram annular_diagram(const QuadSystem& q, const Walk& c) {
    const Surface& s = q.s();
    if (!c.closed) throw WalkError("annular diagram needs a closed walk");
    if (c.trivial()) throw WalkError("annular diagram of a trivial walk");
    validate_walk(s, c);
    if (!is_canonical(s, c)) throw WalkError("annular diagram needs a canonical walk");

    const int64_t n = static_cast<int64_t>(c.size());
    const Walk L = leftmost_canonical(s, c);
    internal(L.closed && static_cast<int64_t>(L.size()) == n,
             "leftmost form changed length");

    // Degenerate band: the boundaries are the same cyclic word.
    if (least_rotation(c.arcs) == least_rotation(L.arcs)) {
        for (int64_t r = 0; r < n; ++r) {
            if (rotated(L, r).arcs != c.arcs) continue;
            AnnularDiagram d;
            d.right = c;
            d.left = rotated(L, r);
            d.relation.assign(n, {});
            internal(verify_diagram(q, d), "degenerate band failed validation");
            return d;
        }
        internal(false, "equal cyclic words admit no rotation alignment");
    }

    OpenMarch open(q, c, L);
    // Shared-arc alignments first, then bare shared-vertex ones.
    for (int64_t i0 = 0; i0 < n; ++i0)
        for (int64_t j0 = 0; j0 < n; ++j0) {
            if (c.arc(i0) != L.arc(j0)) continue;
            if (auto d = open.run(i0, j0)) return *d;
        }
    for (int64_t i0 = 0; i0 < n; ++i0)
        for (int64_t j0 = 0; j0 < n; ++j0) {
            if (c.arc(i0) == L.arc(j0)) continue;
            if (s.vertex_of(c.arc(i0)) != s.vertex_of(L.arc(j0))) continue;
            if (s.next_around_vertex(L.arc(j0)) != c.arc(i0)) continue;
            if (auto d = open.run(i0, j0)) return *d;
        }

    ClosedMarch closed(q, c, L);
    // The right run holding index 0 starts at 0 (length 1 or 2) or at n-1.
    for (auto [b, x] : {std::pair<int64_t, int>{0, 2},
                        {0, 1},
                        {n - 1, 2}}) {
        if (auto d = closed.run(b, x)) return *d;
    }

    throw std::logic_error("no annular band found for a canonical walk");
}

bool verify_diagram(const QuadSystem& q, const AnnularDiagram& dgm,
                    std::vector<std::string>* why) {
    const Surface& s = q.s();
    bool ok = true;
    auto bad = [&](std::string m) {
        ok = false;
        if (why) why->push_back(std::move(m));
    };

    if (!dgm.right.closed || !dgm.left.closed) {
        bad("boundaries must be closed walks");
        return false;
    }
    const int64_t n = static_cast<int64_t>(dgm.right.size());
    if (n == 0) {
        bad("empty right boundary");
        return false;
    }
    if (static_cast<int64_t>(dgm.left.size()) != n) {
        bad("boundary lengths differ");
        return false;
    }
    if (static_cast<int64_t>(dgm.relation.size()) != n) {
        bad("relation table does not match the boundary length");
        return false;
    }
    try {
        validate_walk(s, dgm.right);
        validate_walk(s, dgm.left);
    } catch (const WalkError& e) {
        bad(std::string("boundary: ") + e.what());
        return false;
    }

    if (!is_canonical(s, dgm.right)) bad("right boundary is not canonical");
    if (!is_canonical(s, inverse(dgm.left)))
        bad("left boundary inverse is not canonical");

    for (int64_t i = 0; i < n; ++i) {
        const auto& r = dgm.relation[i];
        if (r.empty()) continue;
        if (r.size() != 2) {
            bad("relation entries carry zero or two arcs");
            return false;
        }
        for (Arc a : r)
            if (a < 0 || a >= s.arc_count()) {
                bad("relation arc out of range");
                return false;
            }
    }
    for (const auto& sp : dgm.spokes) {
        if (sp.arc < 0 || sp.arc >= s.arc_count()) {
            bad("spoke arc out of range");
            return false;
        }
        if (sp.right_index < 0 || sp.right_index >= n || sp.left_index < 0 ||
            sp.left_index >= n) {
            bad("spoke index out of range");
            return false;
        }
    }
    for (const auto& sp : dgm.spokes)
        if (s.vertex_of(sp.arc) != dgm.right.vertex(s, sp.right_index) ||
            s.target_of(sp.arc) != dgm.left.vertex(s, sp.left_index))
            bad("spoke endpoints do not lie on the boundaries");

    auto interior = [&](int64_t i) { return !dgm.relation[imod(i, n)].empty(); };

    // Each index either pins the boundaries to a common vertex or crosses a
    // quad corner to corner.
    bool cells_ok = true;
    for (int64_t i = 0; i < n; ++i) {
        const auto& r = dgm.relation[i];
        if (r.empty()) {
            if (dgm.right.vertex(s, i) != dgm.left.vertex(s, i)) {
                bad("coincident index with distinct boundary vertices");
                cells_ok = false;
            }
            continue;
        }
        const bool good = s.vertex_of(r[0]) == dgm.right.vertex(s, i) &&
                          s.next_in_face(r[0]) == r[1] &&
                          s.target_of(r[1]) == dgm.left.vertex(s, i) &&
                          quad_face(s, s.face_of(r[0]));
        if (!good) {
            bad("relation entry is not a quad corner-to-corner path");
            cells_ok = false;
        }
    }
    for (int64_t i = 0; i < n; ++i)
        if (!interior(i) && !interior(i + 1) &&
            dgm.right.arc(i) != dgm.left.arc(i))
            bad("coincident run with distinct boundary arcs");

    bool all_interior = true;
    for (int64_t i = 0; i < n; ++i) all_interior = all_interior && interior(i);
    if (dgm.closed_staircase != all_interior)
        bad(all_interior ? "staircase wraps around but is not flagged closed"
                         : "closed flag on a diagram with coincidences");

    if (!cells_ok) return ok;

    // Walk each cell's quad from its relation path and read off what the
    // two neighbouring index pairs must look like: a spoke when the
    // neighbour is interior, a boundary return when it is coincident.
    struct Want {
        bool set = false;
        int64_t r = 0;
        int64_t l = 0;
        Arc a = -1;
    };
    std::vector<Want> out_w(n), in_w(n);

    for (int64_t i = 0; i < n; ++i) {
        if (!interior(i)) continue;
        const Arc w0 = dgm.relation[i][0];
        const Arc w1 = dgm.relation[i][1];
        const Arc w2 = s.next_in_face(w1);
        const Arc w3 = s.next_in_face(w2);
        const int64_t p_out = i;
        const int64_t p_in = imod(i - 1, n);
        if (w0 == dgm.right.arc(i)) {
            if (interior(i + 1))
                out_w[p_out] = {true, imod(i + 1, n), i, w1};
            else if (w1 != twin(dgm.left.arc(i)))
                bad("cell does not rejoin the left boundary before a coincidence");
        } else {
            if (!interior(i + 1))
                bad("staircase cell borders a coincidence through a spoke");
            else if (w1 != twin(dgm.left.arc(i)))
                bad("cell matches neither boundary on its forward side");
            else
                out_w[p_out] = {true, i, imod(i + 1, n), w0};
        }
        if (w3 == dgm.right.arc(i - 1)) {
            if (interior(i - 1))
                in_w[p_in] = {true, p_in, i, twin(w2)};
            else if (w2 != twin(dgm.left.arc(i - 1)))
                bad("cell does not rejoin the left boundary after a coincidence");
        } else {
            if (!interior(i - 1))
                bad("staircase cell borders a coincidence through a spoke");
            else if (w2 != twin(dgm.left.arc(i - 1)))
                bad("cell matches neither boundary on its backward side");
            else
                in_w[p_in] = {true, i, p_in, twin(w3)};
        }
    }

    std::vector<std::tuple<int64_t, int64_t, Arc>> expect;
    for (int64_t p = 0; p < n; ++p) {
        if (!(interior(p) && interior(p + 1))) continue;
        if (!out_w[p].set || !in_w[p].set) continue;  // reported above
        if (out_w[p].r != in_w[p].r || out_w[p].l != in_w[p].l ||
            out_w[p].a != in_w[p].a) {
            bad("adjacent cells disagree about their shared spoke");
            continue;
        }
        expect.emplace_back(out_w[p].r, out_w[p].l, out_w[p].a);
    }
    std::vector<std::tuple<int64_t, int64_t, Arc>> got;
    for (const auto& sp : dgm.spokes)
        got.emplace_back(sp.right_index, sp.left_index, sp.arc);
    std::sort(expect.begin(), expect.end());
    std::sort(got.begin(), got.end());
    if (expect != got) bad("spoke list does not match the cells");

    for (const auto& sp : dgm.spokes)
        if (s.vertex_of(sp.arc) != dgm.right.vertex(s, sp.right_index) ||
            s.target_of(sp.arc) != dgm.left.vertex(s, sp.left_index))
            bad("spoke endpoints do not lie on the boundaries");

    return ok;
}

std::string dump_diagram(const QuadSystem& q, const AnnularDiagram& dgm) {
    const Surface& s = q.s();
    std::ostringstream out;
    const int64_t n = dgm.size();
    for (int64_t i = 0; i < n; ++i) {
        if (dgm.coincident(i)) {
            out << i << ": C\n";
            continue;
        }
        const auto& rel = dgm.relation[i];
        out << i << ": S quad=" << relation_quad(s, rel);
        // The cell's outgoing spoke: listed between this index and the
        // next, and lying forward on this cell's facial walk.
        const auto w = quad_walk(s, rel[0]);
        for (const auto& sp : dgm.spokes) {
            const bool between =
                (sp.right_index == imod(i + 1, n) && sp.left_index == i) ||
                (sp.right_index == i && sp.left_index == imod(i + 1, n));
            if (!between) continue;
            if (std::find(w.begin(), w.end(), sp.arc) == w.end()) continue;
            out << " spoke=" << s.edge_id(edge_of(sp.arc));
            break;
        }
        out << "\n";
    }
    return out.str();
}

namespace {

// How the two strands of a double path sit at one index pair: either both
// at the same vertex, or at opposite corners of a quad.  An opposite-corner
// configuration is named by the quad's boundary arc leaving the first
// strand's corner.
struct PairConfig {
    bool same = true;
    Arc anchor = -1;
    friend bool operator==(const PairConfig&, const PairConfig&) = default;
    friend auto operator<=>(const PairConfig&, const PairConfig&) = default;
};

class PartialScan {
  public:
    PartialScan(const QuadSystem& q, const Walk& c)
        : s_(q.s()), c_(c), n_(static_cast<int64_t>(c.size())) {
        vtx_.resize(n_);
        for (int64_t i = 0; i < n_; ++i) vtx_[i] = c_.vertex(s_, i);
        occ_.resize(s_.vertex_count());
        for (int64_t i = 0; i < n_; ++i) occ_[vtx_[i]].push_back(i);
        internal(static_cast<double>(n_) * n_ * 4 * (s_.arc_count() + 2) < 9e18,
                 "walk too long for the pair index space");
    }

    std::vector<PartialDiagram> run() {
        seed_flat();
        seed_opposite();
        std::sort(results_.begin(), results_.end(), state_less);
        results_.erase(std::unique(results_.begin(), results_.end(), state_eq),
                       results_.end());
        drop_absorbed_points();
        std::vector<PartialDiagram> out;
        out.reserve(results_.size());
        for (const auto& st : results_) {
            PartialDiagram d;
            d.i = st.i;
            d.j = st.j;
            d.eps = st.eps;
            for (const auto& cf : st.cfg)
                d.relation.push_back(
                    cf.same ? std::vector<Arc>{}
                            : std::vector<Arc>{cf.anchor, s_.next_in_face(cf.anchor)});
            out.push_back(std::move(d));
        }
        return out;
    }

  private:
    struct State {
        int64_t i = 0;
        int64_t j = 0;
        int32_t eps = 1;
        std::vector<PairConfig> cfg;
        int64_t steps() const { return static_cast<int64_t>(cfg.size()) - 1; }
    };

    const Surface& s_;
    const Walk& c_;
    int64_t n_;
    std::vector<int32_t> vtx_;
    std::vector<std::vector<int64_t>> occ_;
    std::unordered_set<uint64_t> visited_;
    std::vector<State> results_;

    int32_t vtx(int64_t i) const { return vtx_[imod(i, n_)]; }
    Arc nif(Arc a) const { return s_.next_in_face(a); }

    uint64_t key(int64_t u, int64_t v, int32_t eps, const PairConfig& cf) const {
        uint64_t k = static_cast<uint64_t>(imod(u, n_) * n_ + imod(v, n_));
        k = k * 2 + (eps > 0 ? 1 : 0);
        k = k * 2 + (cf.same ? 1 : 0);
        k = k * (s_.arc_count() + 2) + static_cast<uint64_t>(cf.anchor + 1);
        return k;
    }

    PairConfig mirrored(const PairConfig& cf) const {
        if (cf.same) return cf;
        return {false, nif(nif(cf.anchor))};
    }

    static bool state_less(const State& a, const State& b) {
        return std::tie(a.i, a.j, a.eps, a.cfg) < std::tie(b.i, b.j, b.eps, b.cfg);
    }
    static bool state_eq(const State& a, const State& b) {
        return a.i == b.i && a.j == b.j && a.eps == b.eps && a.cfg == b.cfg;
    }

    // An opposite-corner configuration at (u, v) anchored at `anchor` needs
    // a quad whose corner at the anchor's tail matches strand one and whose
    // diagonally opposite corner matches strand two.
    bool opp_at(Arc anchor, int64_t u, int64_t v, PairConfig* out) const {
        if (!quad_face(s_, s_.face_of(anchor))) return false;
        if (s_.vertex_of(anchor) != vtx(u)) return false;
        if (s_.vertex_of(nif(nif(anchor))) != vtx(v)) return false;
        *out = {false, anchor};
        return true;
    }

    static void push_unique(std::vector<PairConfig>& v, const PairConfig& x) {
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }

    // All configurations the pair (u+1, v+eps) can take when (u, v) holds
    // C.  Strand one advances along c; strand two advances with (eps > 0)
    // or against (eps < 0) it.
    std::vector<PairConfig> succ(const PairConfig& C, int64_t u, int64_t v,
                                 int32_t eps) const {
        std::vector<PairConfig> out;
        const Arc a1 = c_.arc(u);
        const Arc a2 = eps > 0 ? c_.arc(v) : twin(c_.arc(v - 1));
        const int64_t u1 = u + 1;
        const int64_t v1 = v + eps;
        auto same_ok = [&] {
            if (vtx(u1) == vtx(v1)) push_unique(out, {true, -1});
        };
        auto opp_ok = [&](Arc anchor) {
            PairConfig x;
            if (opp_at(anchor, u1, v1, &x)) push_unique(out, x);
        };
        if (C.same) {
            if (a1 == a2) {
                same_ok();
            } else {
                if (s_.next_around_vertex(a2) == a1) opp_ok(nif(a1));
                if (s_.next_around_vertex(a1) == a2) opp_ok(twin(a1));
            }
        } else {
            const Arc w0 = C.anchor;
            const Arc w1 = nif(w0);
            const Arc w2 = nif(w1);
            const Arc w3 = nif(w2);
            if ((w0 == a1 && w1 == twin(a2)) || (w2 == a2 && w3 == twin(a1)))
                same_ok();
            if (w0 == a1) {
                const Arc e = twin(w1);
                if (quad_face(s_, s_.face_of(e))) {
                    const auto W = quad_walk(s_, e);
                    if (W[3] == twin(a2)) opp_ok(W[1]);
                }
            }
            if (w1 == twin(a2) && w0 != a1) {
                const Arc e = twin(w0);
                if (quad_face(s_, s_.face_of(e))) {
                    const auto W = quad_walk(s_, e);
                    if (W[1] == a1) opp_ok(W[2]);
                }
            }
            if (w2 == a2) {
                const Arc e = twin(w3);
                if (quad_face(s_, s_.face_of(e))) {
                    const auto W = quad_walk(s_, e);
                    if (W[3] == twin(a1)) opp_ok(W[3]);
                }
            }
            if (w3 == twin(a1) && w2 != a2) {
                const Arc e = twin(w2);
                if (quad_face(s_, s_.face_of(e))) {
                    const auto W = quad_walk(s_, e);
                    if (W[1] == a2) opp_ok(e);
                }
            }
        }
        return out;
    }

    // All configurations X at (i-1, j-eps) with the held configuration C0
    // among succ(X).  Any quad carrying such an X borders one of the four
    // strand arcs around the previous pair, so the candidate space is small.
    std::vector<PairConfig> pred(const PairConfig& C0, int64_t i, int64_t j,
                                 int32_t eps) const {
        const int64_t u = i - 1;
        const int64_t v = j - eps;
        std::vector<PairConfig> cand;
        if (vtx(u) == vtx(v)) cand.push_back({true, -1});
        const Arc b1 = c_.arc(u);
        const Arc b2 = eps > 0 ? c_.arc(v) : twin(c_.arc(v - 1));
        for (Arc x : {b1, twin(b1), b2, twin(b2)}) {
            if (!quad_face(s_, s_.face_of(x))) continue;
            Arc a = x;
            for (int k = 0; k < 4; ++k, a = nif(a)) {
                PairConfig t;
                if (opp_at(a, u, v, &t)) push_unique(cand, t);
            }
        }
        std::vector<PairConfig> keep;
        for (const auto& X : cand) {
            const auto nxt = succ(X, u, v, eps);
            if (std::find(nxt.begin(), nxt.end(), C0) != nxt.end())
                push_unique(keep, X);
        }
        return keep;
    }

    // Grow the state while exactly one configuration fits, capped one past
    // the walk length.
    void extend(State& st) const {
        while (st.steps() < n_ + 1) {
            const int64_t k = st.steps();
            const auto nxt = succ(st.cfg.back(), st.i + k, st.j + st.eps * k, st.eps);
            if (nxt.size() != 1) break;
            st.cfg.push_back(nxt[0]);
        }
        std::vector<PairConfig> front;
        while (st.steps() + static_cast<int64_t>(front.size()) < n_ + 1) {
            const int64_t back = static_cast<int64_t>(front.size());
            const PairConfig& head = front.empty() ? st.cfg.front() : front.back();
            const auto prv = pred(head, st.i - back, st.j - st.eps * back, st.eps);
            if (prv.size() != 1) break;
            front.push_back(prv[0]);
        }
        st.cfg.insert(st.cfg.begin(), front.rbegin(), front.rend());
        st.i -= static_cast<int64_t>(front.size());
        st.j -= st.eps * static_cast<int64_t>(front.size());
    }

    void try_seed(int64_t i, int64_t j, int32_t eps, const PairConfig& cf) {
        if (visited_.count(key(i, j, eps, cf))) return;
        State st{i, j, eps, {cf}};
        extend(st);
        absorb(st);
    }

    void absorb(State& st) {
        std::unordered_set<uint64_t> seen;
        for (int64_t k = 0; k <= st.steps(); ++k) {
            const int64_t u = st.i + k;
            const int64_t v = st.j + st.eps * k;
            internal(seen.insert(key(u, v, st.eps, st.cfg[k])).second,
                     "double path revisits an index pair in one configuration");
            visited_.insert(key(u, v, st.eps, st.cfg[k]));
            visited_.insert(key(v, u, st.eps, mirrored(st.cfg[k])));
        }
        results_.push_back(normalize(st));
    }

    State normalize(const State& st) const {
        const int64_t l = st.steps();
        State a = st;
        a.i = imod(st.i, n_);
        a.j = imod(st.j, n_);
        State b;
        b.cfg.reserve(st.cfg.size());
        if (st.eps > 0) {
            b.i = imod(st.j, n_);
            b.j = imod(st.i, n_);
            b.eps = 1;
            for (const auto& cf : st.cfg) b.cfg.push_back(mirrored(cf));
        } else {
            b.i = imod(st.j - l, n_);
            b.j = imod(st.i + l, n_);
            b.eps = -1;
            for (int64_t p = 0; p <= l; ++p)
                b.cfg.push_back(mirrored(st.cfg[l - p]));
        }
        if (l == 0) {
            a.eps = 1;
            b.eps = 1;
        }
        return state_less(a, b) ? a : b;
    }

    // A lone flat pair already appearing inside a longer output is the
    // other orientation's reading of the same double point; keep the long
    // form only.
    void drop_absorbed_points() {
        std::unordered_set<uint64_t> covered;
        for (const auto& st : results_) {
            if (st.steps() < 1) continue;
            for (int64_t k = 0; k <= st.steps(); ++k) {
                const int64_t u = imod(st.i + k, n_);
                const int64_t v = imod(st.j + st.eps * k, n_);
                covered.insert(static_cast<uint64_t>(std::min(u, v) * n_ +
                                                     std::max(u, v)));
            }
        }
        std::erase_if(results_, [&](const State& st) {
            if (st.steps() != 0 || !st.cfg[0].same) return false;
            const int64_t u = std::min(st.i, st.j);
            const int64_t v = std::max(st.i, st.j);
            return covered.count(static_cast<uint64_t>(u * n_ + v)) > 0;
        });
    }

    void seed_flat() {
        for (const auto& idx : occ_)
            for (int64_t i : idx)
                for (int64_t j : idx) {
                    if (i == j) continue;
                    try_seed(i, j, 1, {true, -1});
                    try_seed(i, j, -1, {true, -1});
                }
    }

    void seed_opposite() {
        std::vector<bool> done(s_.face_count(), false);
        for (Arc a = 0; a < s_.arc_count(); ++a) {
            const int32_t f = s_.face_of(a);
            if (done[f]) continue;
            done[f] = true;
            if (!quad_face(s_, f)) continue;
            const auto w = quad_walk(s_, a);
            for (int k = 0; k < 4; ++k) {
                const Arc anchor = w[k];
                const Arc opposite = w[(k + 2) % 4];
                for (int64_t i : occ_[s_.vertex_of(anchor)])
                    for (int64_t j : occ_[s_.vertex_of(opposite)]) {
                        if (i == j) continue;
                        try_seed(i, j, 1, {false, anchor});
                        try_seed(i, j, -1, {false, anchor});
                    }
            }
        }
    }
};

}  // namespace

std::vector<PartialDiagram> maximal_partial_diagrams(const QuadSystem& q,
                                                     const Walk& c) {
    const Surface& s = q.s();
    if (!c.closed) throw WalkError("partial diagrams need a closed walk");
    if (c.trivial()) throw WalkError("partial diagrams of a trivial walk");
    validate_walk(s, c);
    if (!is_canonical(s, c)) throw WalkError("partial diagrams need a canonical walk");
    if (primitive_root(s, c).second != 1)
        throw WalkError("partial diagrams need a primitive walk");
    PartialScan scan(q, c);
    return scan.run();
}

}  // namespace curvecross
