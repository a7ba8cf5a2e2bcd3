#include "curvecross/quads.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

namespace curvecross {

Walk CurveTransport::apply(const Walk& w) const {
    std::vector<Arc> out;
    for (Arc a : w.arcs) {
        const auto& img = arc_image[a];
        out.insert(out.end(), img.begin(), img.end());
    }
    return Walk{std::move(out), w.closed, target_vertex};
}

namespace {

void internal(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

// Working state shared by the bouquet reduction and the quadification.
// Every edge ends up tree (contracted), merged (deleted while joining
// faces) or surviving.  Rotations are kept as doubly linked cycles so each
// contraction and deletion splices in constant time.
struct Core {
    std::vector<Arc> nxt, prv;
    std::vector<char> tree_edge;
    std::vector<char> merged_edge;
    std::vector<Arc> portal;       // merged arc -> next surviving arc clockwise
    std::vector<Arc> final_cycle;  // rotation cycle of the surviving arcs
    std::vector<int32_t> pos;      // position in final_cycle, -1 elsewhere
    std::vector<int32_t> face;     // post-merge face id per surviving arc
    std::vector<char> face_perforated;
    std::vector<Arc> face_rep;     // one boundary arc per post-merge face
    int32_t big_face = -1;         // the single merged non-perforated face
    int32_t surviving = 0;

    bool lives(Arc a) const {
        return !tree_edge[edge_of(a)] && !merged_edge[edge_of(a)];
    }
};

Core reduce_core(const Surface& s) {
    const int32_t V = s.vertex_count();
    const int32_t E = s.edge_count();
    const int32_t A = s.arc_count();
    Core c;
    c.nxt.assign(A, -1);
    c.prv.assign(A, -1);
    c.tree_edge.assign(E, 0);
    c.merged_edge.assign(E, 0);

    for (int32_t v = 0; v < V; ++v) {
        const auto& rot = s.rotation(v);
        const int32_t d = static_cast<int32_t>(rot.size());
        for (int32_t i = 0; i < d; ++i) {
            c.nxt[rot[i]] = rot[(i + 1) % d];
            c.prv[rot[(i + 1) % d]] = rot[i];
        }
    }

    // Spanning tree by breadth-first search from vertex 0, contracted in
    // discovery order.  Contracting arc a replaces it, inside its cycle, by
    // the far vertex's cycle opened at twin(a).
    std::vector<char> seen(V, 0);
    seen[0] = 1;
    std::deque<int32_t> queue{0};
    std::vector<Arc> tree_arcs;
    while (!queue.empty()) {
        int32_t v = queue.front();
        queue.pop_front();
        for (Arc a : s.rotation(v)) {
            int32_t u = s.target_of(a);
            if (!seen[u]) {
                seen[u] = 1;
                c.tree_edge[edge_of(a)] = 1;
                tree_arcs.push_back(a);
                queue.push_back(u);
            }
        }
    }
    for (Arc a : tree_arcs) {
        Arc b = twin(a);
        Arc pa = c.prv[a], na = c.nxt[a], pb = c.prv[b], nb = c.nxt[b];
        if (na == a && nb == b) {
            // the graph was this single edge; nothing is left to splice
        } else if (na == a) {
            c.nxt[pb] = nb;
            c.prv[nb] = pb;
        } else if (nb == b) {
            c.nxt[pa] = na;
            c.prv[na] = pa;
        } else {
            c.nxt[pa] = nb;
            c.prv[nb] = pa;
            c.nxt[pb] = na;
            c.prv[na] = pb;
        }
    }

    // After contraction the non-tree arcs form one rotation cycle.
    int32_t nontree = 0;
    Arc cstart = -1;
    for (Arc a = 0; a < A; ++a) {
        if (c.tree_edge[edge_of(a)]) continue;
        ++nontree;
        if (cstart < 0) cstart = a;
    }
    std::vector<Arc> contracted;
    contracted.reserve(nontree);
    if (cstart >= 0) {
        Arc a = cstart;
        do {
            contracted.push_back(a);
            a = c.nxt[a];
        } while (a != cstart && static_cast<int32_t>(contracted.size()) <= nontree);
    }
    internal(static_cast<int32_t>(contracted.size()) == nontree,
             "tree contraction did not keep one rotation cycle");

    // Faces survive contraction with shorter walks; each inherits the
    // perforation flag of its source face.
    std::vector<int32_t> cface(A, -1);
    std::vector<char> cperf;
    std::vector<Arc> crep;
    for (Arc a = 0; a < A; ++a) {
        if (c.tree_edge[edge_of(a)] || cface[a] >= 0) continue;
        int32_t f = static_cast<int32_t>(crep.size());
        crep.push_back(a);
        cperf.push_back(s.perforated(s.face_of(a)) ? 1 : 0);
        Arc x = a;
        do {
            cface[x] = f;
            x = c.nxt[twin(x)];
        } while (x != a);
    }
    const int32_t CF = static_cast<int32_t>(crep.size());

    // Merge all non-perforated faces into one: breadth-first over the dual
    // graph, deleting the crossing edge of each first contact.
    int32_t root_face = -1;
    for (int32_t f = 0; f < CF && root_face < 0; ++f)
        if (!cperf[f]) root_face = f;
    if (root_face < 0) throw SurfaceError("every face is perforated");
    std::vector<char> fseen(CF, 0);
    fseen[root_face] = 1;
    std::deque<int32_t> fq{root_face};
    while (!fq.empty()) {
        int32_t f = fq.front();
        fq.pop_front();
        Arc a = crep[f];
        do {
            int32_t g = cface[twin(a)];
            if (!fseen[g] && !cperf[g]) {
                fseen[g] = 1;
                c.merged_edge[edge_of(a)] = 1;
                fq.push_back(g);
            }
            a = c.nxt[twin(a)];
        } while (a != crep[f]);
    }
    for (int32_t f = 0; f < CF; ++f)
        if (!cperf[f] && !fseen[f])
            throw SurfaceError("perforated faces disconnect the surface");

    // Portals: the first surviving arc strictly clockwise of each merged
    // arc, recorded before merged arcs leave the rotation.
    const int32_t cn = static_cast<int32_t>(contracted.size());
    c.portal.assign(A, -1);
    for (Arc a : contracted)
        if (c.lives(a)) ++c.surviving;
    if (c.surviving > 0) {
        Arc last = -1;
        for (int32_t i = 2 * cn - 1; i >= 0; --i) {
            Arc a = contracted[i % cn];
            if (c.lives(a))
                last = a;
            else if (i < cn)
                c.portal[a] = last;
        }
    }
    for (Arc a : contracted) {
        if (c.lives(a)) continue;
        c.nxt[c.prv[a]] = c.nxt[a];
        c.prv[c.nxt[a]] = c.prv[a];
    }

    Arc fstart = -1;
    for (Arc a = 0; a < A && fstart < 0; ++a)
        if (!c.tree_edge[edge_of(a)] && !c.merged_edge[edge_of(a)]) fstart = a;
    c.pos.assign(A, -1);
    c.final_cycle.reserve(c.surviving);
    if (fstart >= 0) {
        Arc a = fstart;
        do {
            c.pos[a] = static_cast<int32_t>(c.final_cycle.size());
            c.final_cycle.push_back(a);
            a = c.nxt[a];
        } while (a != fstart &&
                 static_cast<int32_t>(c.final_cycle.size()) <= c.surviving);
    }
    internal(static_cast<int32_t>(c.final_cycle.size()) == c.surviving,
             "face merging did not keep one rotation cycle");

    c.face.assign(A, -1);
    for (Arc a : c.final_cycle) {
        if (c.face[a] >= 0) continue;
        int32_t f = static_cast<int32_t>(c.face_rep.size());
        c.face_rep.push_back(a);
        c.face_perforated.push_back(cperf[cface[a]]);
        Arc x = a;
        do {
            c.face[x] = f;
            x = c.nxt[twin(x)];
        } while (x != a);
    }
    for (int32_t f = 0; f < static_cast<int32_t>(c.face_rep.size()); ++f) {
        if (c.face_perforated[f]) continue;
        internal(c.big_face < 0, "face merging left more than one free face");
        c.big_face = f;
    }
    internal(c.big_face >= 0 || c.surviving == 0, "merged face went missing");
    return c;
}

}  // namespace

namespace detail {

Reduction reduce_to_bouquet(const Surface& s) {
    Core c = reduce_core(s);
    if (c.surviving == 0) throw SurfaceError("surface reduces to a tree");

    const int32_t A = s.arc_count();
    std::vector<int32_t> loops;
    for (int32_t k = 0; k < s.edge_count(); ++k)
        if (!c.tree_edge[k] && !c.merged_edge[k]) loops.push_back(k);
    std::sort(loops.begin(), loops.end(),
              [&](int32_t x, int32_t y) { return s.edge_id(x) < s.edge_id(y); });
    std::vector<int32_t> new_edge(s.edge_count(), -1);
    for (int32_t j = 0; j < static_cast<int32_t>(loops.size()); ++j)
        new_edge[loops[j]] = j;
    auto new_arc = [&](Arc a) { return 2 * new_edge[edge_of(a)] + (a & 1); };

    std::vector<Arc> rot;
    rot.reserve(c.surviving);
    {
        Arc first = 2 * loops[0];
        Arc a = first;
        do {
            rot.push_back(new_arc(a));
            a = c.nxt[a];
        } while (a != first);
    }
    std::vector<Arc> marks;
    for (size_t f = 0; f < c.face_rep.size(); ++f)
        if (c.face_perforated[f]) marks.push_back(new_arc(c.face_rep[f]));
    std::vector<std::pair<int32_t, int32_t>> edges(loops.size(), {0, 0});
    std::vector<int32_t> ids;
    ids.reserve(loops.size());
    for (int32_t k : loops) ids.push_back(s.edge_id(k));
    Surface reduced(std::move(edges), {std::move(rot)}, std::move(marks),
                    std::move(ids));

    // A merged arc is homotopic to the stretch of the merged face's walk
    // between the corner holding its slot and the one holding its twin's.
    std::vector<Arc> bwalk;
    std::vector<int32_t> corner_to_walk(c.final_cycle.size(), -1);
    {
        Arc b = c.face_rep[c.big_face];
        Arc x = b;
        do {
            corner_to_walk[c.pos[twin(x)]] = static_cast<int32_t>(bwalk.size());
            bwalk.push_back(x);
            x = c.nxt[twin(x)];
        } while (x != b);
    }
    const int32_t L = static_cast<int32_t>(bwalk.size());
    const int32_t n = static_cast<int32_t>(c.final_cycle.size());

    CurveTransport t;
    t.source_arc_count = A;
    t.target_vertex = 0;
    t.arc_image.assign(A, {});
    for (Arc a = 0; a < A; ++a) {
        if (c.tree_edge[edge_of(a)]) continue;
        if (c.lives(a)) {
            t.arc_image[a] = {new_arc(a)};
            continue;
        }
        int32_t r = (c.pos[c.portal[a]] + n - 1) % n;
        int32_t rr = (c.pos[c.portal[twin(a)]] + n - 1) % n;
        int32_t k = corner_to_walk[r], kk = corner_to_walk[rr];
        internal(k >= 0 && kk >= 0, "merged arc slot outside the merged face");
        int32_t len = (kk - k + L) % L;
        std::vector<Arc> seg;
        seg.reserve(len);
        for (int32_t i = 1; i <= len; ++i)
            seg.push_back(new_arc(bwalk[(k + i) % L]));
        t.arc_image[a] = std::move(seg);
    }
    return Reduction{std::move(reduced), std::move(t), std::move(loops)};
}

std::pair<QuadSystem, CurveTransport> quadify_impl(const Surface& s) {
    Core c = reduce_core(s);
    if (c.surviving == 0) throw SurfaceError("surface reduces to a tree");

    const int32_t A = s.arc_count();
    const int32_t n = static_cast<int32_t>(c.final_cycle.size());

    // Corner r sits between final_cycle[r] and final_cycle[r+1]; corners of
    // the merged face receive the spokes, in rotation order.
    std::vector<int32_t> spoke_at(n, -1);
    int32_t m = 0;
    for (int32_t r = 0; r < n; ++r) {
        Arc after = c.final_cycle[(r + 1) % n];
        if (c.face[after] == c.big_face) spoke_at[r] = m++;
    }
    internal(m > 0, "merged face has no corners");

    // Edges interior to the merged face disappear after starring; edges
    // touching a perforated face stay as loops at the node.
    std::vector<char> starred_gone(s.edge_count(), 0);
    std::vector<int32_t> keep;
    for (int32_t k = 0; k < s.edge_count(); ++k) {
        if (c.tree_edge[k] || c.merged_edge[k]) continue;
        if (c.face[2 * k] == c.big_face && c.face[2 * k + 1] == c.big_face)
            starred_gone[k] = 1;
        else
            keep.push_back(k);
    }
    std::sort(keep.begin(), keep.end(),
              [&](int32_t x, int32_t y) { return s.edge_id(x) < s.edge_id(y); });
    std::vector<int32_t> keep_rank(s.edge_count(), -1);
    for (int32_t j = 0; j < static_cast<int32_t>(keep.size()); ++j)
        keep_rank[keep[j]] = j;

    // Spoke t joins node to center as edge t (up arc 2t, down arc 2t+1);
    // kept edges follow as loops at the node.
    std::vector<Arc> node_rot;
    for (int32_t r = 0; r < n; ++r) {
        Arc y = c.final_cycle[r];
        if (!starred_gone[edge_of(y)])
            node_rot.push_back(2 * (m + keep_rank[edge_of(y)]) + (y & 1));
        if (spoke_at[r] >= 0) node_rot.push_back(2 * spoke_at[r]);
    }
    // The center sees the spokes in the reverse of the face-walk order of
    // their corners.
    std::vector<Arc> center_rot;
    {
        std::vector<int32_t> corner_seq;
        Arc b = c.face_rep[c.big_face];
        Arc x = b;
        do {
            corner_seq.push_back(c.pos[twin(x)]);
            x = c.nxt[twin(x)];
        } while (x != b);
        internal(static_cast<int32_t>(corner_seq.size()) == m,
                 "merged face walk missed a corner");
        for (auto it = corner_seq.rbegin(); it != corner_seq.rend(); ++it) {
            internal(spoke_at[*it] >= 0, "merged-face corner without a spoke");
            center_rot.push_back(2 * spoke_at[*it] + 1);
        }
    }
    std::vector<Arc> marks;
    for (size_t f = 0; f < c.face_rep.size(); ++f) {
        if (!c.face_perforated[f]) continue;
        Arc rep = c.face_rep[f];
        internal(keep_rank[edge_of(rep)] >= 0, "perforated face lost its boundary");
        marks.push_back(2 * (m + keep_rank[edge_of(rep)]) + (rep & 1));
    }

    std::vector<std::pair<int32_t, int32_t>> edges;
    edges.reserve(m + keep.size());
    for (int32_t k = 0; k < m; ++k) edges.push_back({0, 1});
    for (size_t j = 0; j < keep.size(); ++j) edges.push_back({0, 0});
    Surface qs(std::move(edges), {std::move(node_rot), std::move(center_rot)},
               std::move(marks));

    CurveTransport t;
    t.source_arc_count = A;
    t.target_vertex = 0;
    t.arc_image.assign(A, {});
    for (Arc a = 0; a < A; ++a) {
        int32_t k = edge_of(a);
        if (c.tree_edge[k]) continue;
        if (c.merged_edge[k]) {
            int32_t r = (c.pos[c.portal[a]] + n - 1) % n;
            int32_t rr = (c.pos[c.portal[twin(a)]] + n - 1) % n;
            internal(spoke_at[r] >= 0 && spoke_at[rr] >= 0,
                     "merged arc slot outside the merged face");
            t.arc_image[a] = {2 * spoke_at[r], 2 * spoke_at[rr] + 1};
        } else if (starred_gone[k]) {
            int32_t r = (c.pos[a] + n - 1) % n;
            int32_t rr = c.pos[twin(a)];
            t.arc_image[a] = {2 * spoke_at[r], 2 * spoke_at[rr] + 1};
        } else {
            t.arc_image[a] = {2 * (m + keep_rank[k]) + (a & 1)};
        }
    }
    return {QuadSystem{std::move(qs), 0, 1}, std::move(t)};
}

std::vector<int64_t> abelian_class(const Surface& s, const Walk& w) {
    Reduction r = reduce_to_bouquet(s);
    Walk img = r.transport.apply(w);
    std::vector<int64_t> out(r.reduced.edge_count(), 0);
    for (Arc a : img.arcs) out[edge_of(a)] += is_forward(a) ? 1 : -1;
    return out;
}

int64_t annulus_winding(const Surface& s, const Walk& w) {
    std::vector<int32_t> perf;
    for (int32_t f = 0; f < s.face_count(); ++f)
        if (s.perforated(f)) perf.push_back(f);
    internal(perf.size() == 2, "winding needs exactly two perforations");

    const int32_t A = s.arc_count();
    std::vector<std::vector<Arc>> sides(s.face_count());
    for (Arc a = 0; a < A; ++a) sides[s.face_of(a)].push_back(a);

    // Dual path from one perforation to the other; crossing it in the
    // breadth-first discovery direction counts +1.
    std::vector<Arc> via(s.face_count(), -1);
    std::vector<int32_t> parent(s.face_count(), -1);
    std::vector<char> seen(s.face_count(), 0);
    std::deque<int32_t> q{perf[0]};
    seen[perf[0]] = 1;
    while (!q.empty()) {
        int32_t f = q.front();
        q.pop_front();
        for (Arc x : sides[f]) {
            int32_t g = s.face_of(twin(x));
            if (seen[g]) continue;
            seen[g] = 1;
            via[g] = x;
            parent[g] = f;
            q.push_back(g);
        }
    }
    internal(seen[perf[1]], "perforations in different components");

    std::vector<int8_t> cross(A, 0);
    for (int32_t f = perf[1]; f != perf[0]; f = parent[f]) {
        cross[via[f]] = 1;
        cross[twin(via[f])] = -1;
    }
    int64_t wind = 0;
    for (Arc a : w.arcs) wind += cross[a];
    return wind;
}

Surface mirror_double(const Surface& s) {
    const int32_t V = s.vertex_count();
    const int32_t E = s.edge_count();
    internal(s.perforated_count() > 0, "mirror double of a closed surface");
    auto mirrored = [E](Arc a) { return a + 2 * E; };

    std::vector<std::pair<int32_t, int32_t>> edges;
    edges.reserve(2 * E);
    for (int32_t k = 0; k < E; ++k)
        edges.push_back({s.vertex_of(2 * k), s.target_of(2 * k)});
    for (int32_t k = 0; k < E; ++k)
        edges.push_back({V + s.vertex_of(2 * k), V + s.target_of(2 * k)});

    // One rung per corner of each perforated face, anchored to the arc the
    // corner leads into: the up arc sits right before the anchor in the first
    // copy, the down arc right after its mirror in the second.  The walls
    // between neighbouring rungs then close into quads and the perforated
    // faces are gone.
    std::vector<Arc> up_before(2 * E, -1), down_after(2 * E, -1);
    std::vector<Arc> rep(s.face_count(), -1);
    for (Arc a = 2 * E - 1; a >= 0; --a) rep[s.face_of(a)] = a;
    for (int32_t f = 0; f < s.face_count(); ++f) {
        if (!s.perforated(f)) continue;
        for (Arc a : s.face_walk(rep[f])) {
            int32_t v = s.vertex_of(a);
            int32_t e = static_cast<int32_t>(edges.size());
            edges.push_back({v, V + v});
            up_before[a] = 2 * e;
            down_after[a] = 2 * e + 1;
        }
    }

    std::vector<std::vector<Arc>> rots(2 * V);
    for (int32_t v = 0; v < V; ++v) {
        const auto& rot = s.rotation(v);
        for (Arc a : rot) {
            if (up_before[a] >= 0) rots[v].push_back(up_before[a]);
            rots[v].push_back(a);
        }
        for (auto it = rot.rbegin(); it != rot.rend(); ++it) {
            rots[V + v].push_back(mirrored(*it));
            if (down_after[*it] >= 0) rots[V + v].push_back(down_after[*it]);
        }
    }

    Surface d(std::move(edges), std::move(rots), {});
    internal(d.euler_characteristic_closed() == 2 * s.euler_characteristic(),
             "mirror double has the wrong characteristic");
    return d;
}

}  // namespace detail

std::pair<QuadSystem, CurveTransport> quadify(const Surface& s) {
    if (s.euler_characteristic() >= 0)
        throw SurfaceError("quadify needs negative characteristic");
    return detail::quadify_impl(s);
}

std::vector<std::string> quad_system_violations(const QuadSystem& q) {
    std::vector<std::string> out;
    const Surface& s = q.surface;
    const bool bordered = s.perforated_count() > 0;
    if (q.node_vertex != 0 || q.center_vertex != 1)
        out.push_back("expected node vertex 0 and center vertex 1");
    if (s.vertex_count() != 2) {
        out.push_back("expected exactly two vertices");
        return out;
    }
    for (int32_t k = 0; k < s.edge_count(); ++k) {
        int32_t u = s.vertex_of(2 * k), v = s.target_of(2 * k);
        bool spoke = (u == q.node_vertex && v == q.center_vertex) ||
                     (u == q.center_vertex && v == q.node_vertex);
        bool boundary_loop = bordered && u == q.node_vertex && v == q.node_vertex;
        if (!spoke && !boundary_loop)
            out.push_back("edge " + std::to_string(s.edge_id(k)) +
                          " does not join the node to the center");
    }
    for (int32_t f = 0; f < s.face_count(); ++f) {
        if (s.perforated(f)) continue;
        if (s.face_size(f) == 4) continue;
        if (bordered && s.face_size(f) == 3) continue;  // next to a boundary loop
        out.push_back("face of size " + std::to_string(s.face_size(f)) +
                      " is not a quad");
    }
    if (!bordered && s.euler_characteristic() < 0) {
        if (s.degree(q.node_vertex) < 8) out.push_back("node degree below eight");
        if (s.degree(q.center_vertex) < 8)
            out.push_back("center degree below eight");
    }
    return out;
}

}  // namespace curvecross
