// Rightmost reduction of walks on a closed system of quads.  Spurs and
// brackets shorten the walk, left turns are pushed into right turns across
// the quads they border, and a walk turning maximally left everywhere is
// swapped for its parallel on the other side.  The loop strictly shrinks the
// pair (length, number of negative turns), so it terminates; a step budget
// guards the invariant.
//
// Low-genus and bordered surfaces have no quad structure to rewrite on, so
// the homotopy tests dispatch instead: winding numbers on an annulus, signed
// edge counts on a torus, and the mirror double or a quadified image
// everywhere else.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

namespace {

void internal(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

int64_t wrap(int64_t i, int64_t n) { return ((i % n) + n) % n; }

Arc sigma_step(const Surface& s, Arc a, int32_t k) {
    for (; k > 0; --k) a = s.next_around_vertex(a);
    for (; k < 0; ++k) a = s.prev_around_vertex(a);
    return a;
}

// A unit turn, a run of doubled turns of the same hand, and a matching unit
// turn.  Contracting it drops two arcs.
struct Match {
    int64_t open = 0;
    int32_t sign = 0;
    int64_t run = 0;

    int64_t span() const { return run + 3; }  // arcs from flank to flank
};

// Arc vector plus one cached turn per slot; slot i holds the turn into
// arcs[i], and slot 0 of a path is unused.  Every splice recomputes the
// cache, which keeps each rewrite O(length) and the whole run quadratic.
struct Rewriter {
    const Surface& s;
    std::vector<Arc> arcs;
    bool closed;
    int32_t rest;  // vertex carrying the result if everything cancels
    std::vector<int32_t> turn;

    Rewriter(const Surface& s_, const Walk& w)
        : s(s_), arcs(w.arcs), closed(w.closed),
          rest(w.trivial() ? w.base : s_.vertex_of(w.arcs[0])) {
        refresh();
    }

    int64_t n() const { return static_cast<int64_t>(arcs.size()); }
    int64_t first_slot() const { return closed ? 0 : 1; }

    void refresh() {
        const int64_t m = n();
        turn.assign(m, 0);
        for (int64_t i = first_slot(); i < m; ++i) {
            Arc p = arcs[wrap(i - 1, m)];
            internal(s.target_of(p) == s.vertex_of(arcs[i]),
                     "rewriting tore the walk");
            turn[i] = s.turn(twin(p), arcs[i]);
        }
    }

    // Cyclic shift making old index k the head (closed walks only).
    void rotate_to(int64_t k) {
        std::rotate(arcs.begin(), arcs.begin() + k, arcs.end());
        refresh();
    }

    void remove_spur(int64_t i) {
        internal(arcs[i] == twin(arcs[wrap(i - 1, n())]), "spur slot mismatch");
        rest = s.vertex_of(arcs[wrap(i - 1, n())]);
        if (closed) {
            rotate_to(wrap(i + 1, n()));
            arcs.pop_back();
            arcs.pop_back();
        } else {
            arcs.erase(arcs.begin() + i - 1, arcs.begin() + i + 1);
        }
        refresh();
    }

    int64_t remove_all_spurs() {
        int64_t removed = 0;
        bool again = true;
        while (again && n() > 0) {
            again = false;
            for (int64_t i = first_slot(); i < n(); ++i) {
                if (turn[i] != 0) continue;
                remove_spur(i);
                ++removed;
                again = true;
                break;
            }
        }
        return removed;
    }

    // Smallest bracket of either hand that fits strictly inside the walk.
    // The lone-unit patterns span the whole walk plus both flanks and are
    // rejected here; collapse_lonely handles them.
    std::optional<Match> find_bracket() const {
        std::optional<Match> best;
        const int64_t m = n();
        for (int64_t open = first_slot(); open < m; ++open) {
            int32_t sign = turn[open];
            if (sign != 1 && sign != -1) continue;
            int64_t run = 0;
            if (closed) {
                while (run < m - 2 && turn[wrap(open + 1 + run, m)] == 2 * sign)
                    ++run;
                if (turn[wrap(open + 1 + run, m)] != sign || run + 3 > m)
                    continue;
            } else {
                while (open + 1 + run <= m - 2 && turn[open + 1 + run] == 2 * sign)
                    ++run;
                if (open + 1 + run > m - 1 || turn[open + 1 + run] != sign)
                    continue;
            }
            if (!best || run + 3 < best->span()) best = Match{open, sign, run};
        }
        return best;
    }

    // Replace the bracket's arcs by the straight run on its far side.  Both
    // flanking turns soften by one hand automatically.
    void contract(const Match& m) {
        int64_t start = m.open - 1;
        if (closed) {
            rotate_to(wrap(start, n()));
            start = 0;
        }
        Arc tail = s.target_of(arcs[start + m.span() - 1]);
        std::vector<Arc> b(m.run + 1);
        b[0] = sigma_step(s, arcs[start], -m.sign);
        for (int64_t k = 1; k <= m.run; ++k)
            b[k] = sigma_step(s, twin(b[k - 1]), -2 * m.sign);
        internal(s.target_of(b[m.run]) == tail,
                 "bracket contraction tore the walk");
        arcs.erase(arcs.begin() + start, arcs.begin() + start + m.span());
        arcs.insert(arcs.begin() + start, b.begin(), b.end());
        refresh();
    }

    // Inverse of contract: bow the r+1 arcs starting at `start` out into a
    // bracket of hand e on their far side.  Both flanking turns harden by e.
    void expand(int64_t start, int64_t r, int32_t e) {
        if (closed) {
            rotate_to(wrap(start, n()));
            start = 0;
        }
        for (int64_t i = 1; i <= r; ++i)
            internal(turn[start + i] == -2 * e, "expansion run mismatch");
        Arc tail = s.target_of(arcs[start + r]);
        std::vector<Arc> w(r + 3);
        w[0] = sigma_step(s, arcs[start], e);
        w[1] = sigma_step(s, twin(w[0]), e);
        for (int64_t k = 2; k <= r + 1; ++k)
            w[k] = sigma_step(s, twin(w[k - 1]), 2 * e);
        w[r + 2] = sigma_step(s, twin(w[r + 1]), e);
        internal(s.target_of(w[r + 2]) == tail, "bracket expansion tore the walk");
        arcs.erase(arcs.begin() + start, arcs.begin() + start + r + 1);
        arcs.insert(arcs.begin() + start, w.begin(), w.end());
        refresh();
    }

    // A closed walk turning -2 everywhere runs along one side of a ladder of
    // quads; its parallel on the other side turns +2 everywhere.
    void ring_shift() {
        for (Arc& a : arcs) a = sigma_step(s, twin(sigma_step(s, a, 1)), 1);
        refresh();
        for (int64_t i = 0; i < n(); ++i)
            internal(turn[i] == 2, "parallel shift is not canonical");
    }

    // Exactly one unit turn of hand v, every other turn 2v: no bracket fits,
    // yet the walk still shortens after bowing the whole walk to the other
    // side, where the unit turn and its seam cancel.
    void collapse_lonely(int64_t slot, int32_t v) {
        const int64_t before = n();
        rotate_to(slot);
        expand(0, before - 1, -v);
        contract(Match{0, -v, 0});
        remove_all_spurs();
        internal(n() <= before - 2, "lonely collapse failed to shorten");
    }

    // Bow the doubled-turn run ending at a left unit turn across its quads;
    // the left turn becomes a spur and the walk loses a negative turn.
    void push(int64_t m) {
        internal(turn[m] == -1, "push without a left turn");
        int64_t r = 0;
        if (closed) {
            while (r < n() - 2 && turn[wrap(m - 1 - r, n())] == -2) ++r;
        } else {
            while (r < m - 1 && turn[m - 1 - r] == -2) ++r;
        }
        int64_t start = closed ? wrap(m - r - 1, n()) : m - r - 1;
        expand(start, r, 1);
        internal(remove_all_spurs() > 0, "push made no spur");
    }

    void run() {
        const int64_t budget = 2000 + 3 * (n() + 2) * (n() + 2);
        for (int64_t step = 0;; ++step) {
            internal(step <= budget, "rewriting exceeded its step budget");
            if (n() == 0) return;
            if (remove_all_spurs() > 0) continue;
            if (n() == 0) return;
            if (auto m = find_bracket()) {
                contract(*m);
                continue;
            }
            if (closed) {
                if (std::all_of(turn.begin(), turn.end(),
                                [](int32_t t) { return t == -2; })) {
                    ring_shift();
                    continue;
                }
                bool collapsed = false;
                for (int32_t v : {1, -1}) {
                    int64_t slot = -1;
                    bool fits = true;
                    for (int64_t i = 0; i < n() && fits; ++i) {
                        if (turn[i] == v) {
                            if (slot >= 0) fits = false;
                            slot = i;
                        } else if (turn[i] != 2 * v) {
                            fits = false;
                        }
                    }
                    if (fits && slot >= 0) {
                        collapse_lonely(slot, v);
                        collapsed = true;
                        break;
                    }
                }
                if (collapsed) continue;
            }
            int64_t left = -1;
            for (int64_t i = first_slot(); i < n() && left < 0; ++i)
                if (turn[i] == -1) left = i;
            if (left < 0) return;
            push(left);
        }
    }
};

void require_quads(const Surface& s) {
    bool ok = s.perforated_count() == 0;
    for (int32_t f = 0; ok && f < s.face_count(); ++f) ok = s.face_size(f) == 4;
    if (!ok) throw WalkError("canonical forms need a closed system of quads");
}

// Closed, every face a quad, both vertex classes of degree at least eight:
// the range where canonical forms are unique per free homotopy class.
bool quadlike(const Surface& s) {
    if (s.perforated_count() > 0 || s.edge_count() == 0) return false;
    for (int32_t f = 0; f < s.face_count(); ++f)
        if (s.face_size(f) != 4) return false;
    for (int32_t v = 0; v < s.vertex_count(); ++v)
        if (s.degree(v) < 8) return false;
    return true;
}

int32_t start_of(const Surface& s, const Walk& w) {
    return w.trivial() ? w.base : s.vertex_of(w.arcs.front());
}

int32_t end_of(const Surface& s, const Walk& w) {
    return w.trivial() ? w.base : s.target_of(w.arcs.back());
}

}  // namespace

Walk canonicalize(const Surface& s, const Walk& w) {
    validate_walk(s, w);
    require_quads(s);
    Rewriter rw(s, w);
    rw.run();
    if (rw.arcs.empty())
        return w.closed ? trivial_closed(rw.rest) : make_path(s, {}, rw.rest);
    Walk out = w.closed ? make_closed(s, least_rotation(std::move(rw.arcs)))
                        : make_path(s, std::move(rw.arcs));
    if (!w.closed)
        internal(start_of(s, out) == start_of(s, w) &&
                     end_of(s, out) == end_of(s, w),
                 "path reduction moved an endpoint");
    internal(is_canonical(s, out), "rewriting stopped short of canonical");
    return out;
}

Walk leftmost_canonical(const Surface& s, const Walk& w) {
    Walk out = inverse(canonicalize(s, inverse(w)));
    if (out.closed && !out.arcs.empty())
        out.arcs = least_rotation(std::move(out.arcs));
    return out;
}

bool freely_homotopic(const Surface& s, const Walk& a, const Walk& b) {
    validate_walk(s, a);
    validate_walk(s, b);
    if (!a.closed || !b.closed)
        throw WalkError("free homotopy compares closed walks");
    const int32_t g = s.genus();
    const int32_t p = s.perforated_count();
    if (g == 0 && p <= 1) return true;
    if (g == 0 && p == 2)
        return detail::annulus_winding(s, a) == detail::annulus_winding(s, b);
    if (g == 1 && p == 0)
        return detail::abelian_class(s, a) == detail::abelian_class(s, b);
    if (p > 0) return freely_homotopic(detail::mirror_double(s), a, b);
    if (quadlike(s)) {
        Walk ca = canonicalize(s, a), cb = canonicalize(s, b);
        if (ca.trivial() || cb.trivial()) return ca.trivial() == cb.trivial();
        return ca.arcs == cb.arcs;
    }
    auto [q, t] = quadify(s);
    return freely_homotopic(q.surface, t.apply(a), t.apply(b));
}

bool path_homotopic(const Surface& s, const Walk& a, const Walk& b) {
    validate_walk(s, a);
    validate_walk(s, b);
    if (a.closed || b.closed) throw WalkError("path homotopy compares paths");
    if (start_of(s, a) != start_of(s, b) || end_of(s, a) != end_of(s, b))
        return false;
    const int32_t g = s.genus();
    const int32_t p = s.perforated_count();
    if (g == 0 && p <= 1) return true;
    if ((g == 0 && p == 2) || (g == 1 && p == 0)) {
        std::vector<Arc> joined = a.arcs;
        Walk rb = inverse(b);
        joined.insert(joined.end(), rb.arcs.begin(), rb.arcs.end());
        Walk loop = make_closed(s, std::move(joined));
        if (loop.trivial()) loop.base = a.base;
        if (g == 0) return detail::annulus_winding(s, loop) == 0;
        auto cls = detail::abelian_class(s, loop);
        return std::all_of(cls.begin(), cls.end(),
                           [](int64_t x) { return x == 0; });
    }
    if (p > 0) return path_homotopic(detail::mirror_double(s), a, b);
    if (quadlike(s)) return canonicalize(s, a) == canonicalize(s, b);
    auto [q, t] = quadify(s);
    return path_homotopic(q.surface, t.apply(a), t.apply(b));
}

}  // namespace curvecross
