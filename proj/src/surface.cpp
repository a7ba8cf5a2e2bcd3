#include "curvecross/surface.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace curvecross {

Surface::Surface(std::vector<std::pair<int32_t, int32_t>> edges,
                 std::vector<std::vector<Arc>> rotations,
                 std::vector<Arc> perforated_marks,
                 std::vector<int32_t> edge_ids) {
    if (edges.empty()) throw SurfaceError("surface has no edges");
    const int32_t E = static_cast<int32_t>(edges.size());
    const int32_t A = 2 * E;
    edge_from_.resize(E);
    edge_to_.resize(E);
    for (int32_t k = 0; k < E; ++k) {
        edge_from_[k] = edges[k].first;
        edge_to_[k] = edges[k].second;
        if (edges[k].first < 0 || edges[k].second < 0)
            throw SurfaceError("negative vertex id");
    }
    if (edge_ids.empty()) {
        edge_id_.resize(E);
        for (int32_t k = 0; k < E; ++k) edge_id_[k] = k + 1;
    } else {
        if (static_cast<int32_t>(edge_ids.size()) != E)
            throw SurfaceError("edge id list size mismatch");
        edge_id_ = std::move(edge_ids);
    }

    rotation_ = std::move(rotations);
    const int32_t V = static_cast<int32_t>(rotation_.size());

    arc_vertex_.assign(A, -1);
    arc_rank_.assign(A, -1);
    sigma_.assign(A, -1);
    sigma_inv_.assign(A, -1);

    std::vector<int32_t> seen(A, 0);
    for (int32_t v = 0; v < V; ++v) {
        const auto& cyc = rotation_[v];
        if (cyc.empty()) throw SurfaceError("vertex without incident arcs");
        for (size_t i = 0; i < cyc.size(); ++i) {
            Arc a = cyc[i];
            if (a < 0 || a >= A) throw SurfaceError("rotation names unknown arc");
            if (seen[a]++) throw SurfaceError("rotation is not a permutation: arc repeated");
            int32_t origin = is_forward(a) ? edge_from_[edge_of(a)] : edge_to_[edge_of(a)];
            if (origin != v)
                throw SurfaceError("rotation places an arc at the wrong vertex");
            arc_vertex_[a] = v;
            arc_rank_[a] = static_cast<int32_t>(i);
            sigma_[a] = cyc[(i + 1) % cyc.size()];
        }
    }
    for (Arc a = 0; a < A; ++a) {
        if (!seen[a]) throw SurfaceError("rotation is not a permutation: arc missing");
        sigma_inv_[sigma_[a]] = a;
    }

    // Connectivity over the primal graph.
    {
        std::vector<char> vis(V, 0);
        std::vector<int32_t> stack{arc_vertex_[0]};
        vis[arc_vertex_[0]] = 1;
        while (!stack.empty()) {
            int32_t v = stack.back();
            stack.pop_back();
            for (Arc a : rotation_[v]) {
                int32_t u = arc_vertex_[twin(a)];
                if (!vis[u]) {
                    vis[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        if (std::find(vis.begin(), vis.end(), 0) != vis.end())
            throw SurfaceError("surface graph is not connected");
    }

    // Face traversal partitions the arcs.
    arc_face_.assign(A, -1);
    for (Arc a = 0; a < A; ++a) {
        if (arc_face_[a] >= 0) continue;
        int32_t f = static_cast<int32_t>(face_size_.size());
        int32_t len = 0;
        Arc x = a;
        do {
            arc_face_[x] = f;
            ++len;
            x = sigma_[twin(x)];
        } while (x != a);
        face_size_.push_back(len);
    }

    perforated_.assign(face_size_.size(), false);
    for (Arc m : perforated_marks) {
        if (m < 0 || m >= A) throw SurfaceError("perforation mark names an unknown face");
        perforated_[arc_face_[m]] = true;
    }
    perforated_count_ =
        static_cast<int32_t>(std::count(perforated_.begin(), perforated_.end(), true));
}

std::vector<Arc> Surface::face_walk(Arc a) const {
    std::vector<Arc> out;
    Arc x = a;
    do {
        out.push_back(x);
        x = next_in_face(x);
    } while (x != a);
    return out;
}

int32_t Surface::steps_between(Arc a, Arc b) const {
    if (arc_vertex_[a] != arc_vertex_[b])
        throw SurfaceError("turn between arcs with different origins");
    int32_t d = degree(arc_vertex_[a]);
    int32_t r = arc_rank_[b] - arc_rank_[a];
    return r < 0 ? r + d : r;
}

int32_t Surface::turn(Arc a, Arc b) const {
    int32_t d = degree(arc_vertex_[a]);
    int32_t r = steps_between(a, b);
    return 2 * r > d ? r - d : r;
}

std::optional<int32_t> Surface::edge_index(int32_t id) const {
    for (int32_t k = 0; k < edge_count(); ++k)
        if (edge_id_[k] == id) return k;
    return std::nullopt;
}

bool Surface::operator==(const Surface& o) const {
    return edge_from_ == o.edge_from_ && edge_to_ == o.edge_to_ &&
           edge_id_ == o.edge_id_ && rotation_ == o.rotation_ &&
           perforated_ == o.perforated_;
}

namespace {

int32_t parse_int(const std::string& tok, const char* what) {
    size_t pos = 0;
    int32_t v;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw SurfaceError(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size())
        throw SurfaceError(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

}  // namespace

Surface parse_surface(const std::string& text) {
    std::vector<std::pair<int32_t, int32_t>> edges;
    std::vector<int32_t> edge_ids;
    std::map<int32_t, int32_t> index_of_id;
    struct RotLine {
        int32_t vertex;
        std::vector<std::pair<int32_t, bool>> tokens;  // (edge id, forward)
    };
    std::vector<RotLine> rot_lines;
    std::vector<std::pair<int32_t, bool>> perf_tokens;

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "edge") {
            std::string a, b, c;
            if (!(ls >> a >> b >> c)) throw SurfaceError("edge line needs: id from to");
            int32_t id = parse_int(a, "edge id");
            if (id <= 0) throw SurfaceError("edge ids must be positive");
            if (index_of_id.count(id)) throw SurfaceError("duplicate edge id");
            index_of_id[id] = static_cast<int32_t>(edges.size());
            edges.emplace_back(parse_int(b, "vertex"), parse_int(c, "vertex"));
            edge_ids.push_back(id);
            std::string extra;
            if (ls >> extra) throw SurfaceError("trailing tokens on edge line");
        } else if (kw == "rotation") {
            std::string vtok;
            if (!(ls >> vtok)) throw SurfaceError("rotation line needs a vertex");
            RotLine rl;
            rl.vertex = parse_int(vtok, "vertex");
            std::string t;
            while (ls >> t) {
                int32_t sid = parse_int(t, "signed edge id");
                if (sid == 0) throw SurfaceError("edge ids must be nonzero");
                rl.tokens.emplace_back(std::abs(sid), sid > 0);
            }
            if (rl.tokens.empty()) throw SurfaceError("empty rotation line");
            rot_lines.push_back(std::move(rl));
        } else if (kw == "perforated") {
            std::string t;
            if (!(ls >> t)) throw SurfaceError("perforated line needs a signed edge id");
            int32_t sid = parse_int(t, "signed edge id");
            if (sid == 0) throw SurfaceError("edge ids must be nonzero");
            perf_tokens.emplace_back(std::abs(sid), sid > 0);
        } else {
            throw SurfaceError("unknown declaration: " + kw);
        }
    }
    if (edges.empty()) throw SurfaceError("surface has no edges");

    auto arc_of = [&](int32_t id, bool forward) -> Arc {
        auto it = index_of_id.find(id);
        if (it == index_of_id.end())
            throw SurfaceError("unknown edge id " + std::to_string(id));
        return 2 * it->second + (forward ? 0 : 1);
    };

    int32_t max_vertex = -1;
    for (auto& [f, t] : edges) max_vertex = std::max({max_vertex, f, t});
    for (auto& rl : rot_lines) max_vertex = std::max(max_vertex, rl.vertex);

    std::vector<std::vector<Arc>> rotations(max_vertex + 1);
    for (auto& rl : rot_lines) {
        if (!rotations[rl.vertex].empty())
            throw SurfaceError("duplicate rotation line for vertex " +
                               std::to_string(rl.vertex));
        for (auto& [id, fwd] : rl.tokens) rotations[rl.vertex].push_back(arc_of(id, fwd));
    }

    std::vector<Arc> perf;
    for (auto& [id, fwd] : perf_tokens) perf.push_back(arc_of(id, fwd));

    return Surface(std::move(edges), std::move(rotations), std::move(perf),
                   std::move(edge_ids));
}

Surface load_surface(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SurfaceError("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_surface(ss.str());
}

std::string format_surface(const Surface& s) {
    std::ostringstream out;
    for (int32_t k = 0; k < s.edge_count(); ++k) {
        Arc fwd = 2 * k;
        out << "edge " << s.edge_id(k) << ' ' << s.vertex_of(fwd) << ' '
            << s.target_of(fwd) << '\n';
    }
    for (int32_t v = 0; v < s.vertex_count(); ++v) {
        out << "rotation " << v;
        for (Arc a : s.rotation(v))
            out << ' ' << (is_forward(a) ? s.edge_id(edge_of(a)) : -s.edge_id(edge_of(a)));
        out << '\n';
    }
    for (int32_t f = 0; f < s.face_count(); ++f) {
        if (!s.perforated(f)) continue;
        Arc rep = -1;
        for (Arc a = 0; a < s.arc_count(); ++a)
            if (s.face_of(a) == f) {
                rep = a;
                break;
            }
        out << "perforated "
            << (is_forward(rep) ? s.edge_id(edge_of(rep)) : -s.edge_id(edge_of(rep)))
            << '\n';
    }
    return out.str();
}

}  // namespace curvecross
