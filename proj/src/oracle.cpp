#include "curvecross/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace curvecross {

OracleBudget budget_from_env() {
    OracleBudget b;
    if (const char* v = std::getenv("CURVECROSS_ORACLE_BUDGET")) {
        long long n = std::atoll(v);
        if (n > 0) b.max_count = n;
    }
    return b;
}

namespace {

// State key: arc sequence; trivial walks carry their basepoint so moves
// can slide it around.
std::vector<Arc> state_key(const Walk& w) {
    if (w.trivial()) return {-1 - w.base};
    return w.closed ? least_rotation(w.arcs) : w.arcs;
}

struct KeyHash {
    size_t operator()(const std::vector<Arc>& v) const {
        size_t h = 1469598103934665603ull;
        for (Arc a : v) {
            h ^= static_cast<uint32_t>(a);
            h *= 1099511628211ull;
        }
        return h;
    }
};

Walk normalize(const Walk& w) {
    if (w.closed && !w.trivial()) return Walk{least_rotation(w.arcs), true, 0};
    return w;
}

int64_t move_growth(const Surface& s, const ElementaryMove& m) {
    switch (m.kind) {
        case ElementaryMove::InsertSpur: return 2;
        case ElementaryMove::RemoveSpur: return -2;
        case ElementaryMove::FaceExchange:
            return s.face_size(s.face_of(m.arc)) - 2 * m.take;
    }
    return 0;
}

}  // namespace

std::vector<Walk> enumerate_homotopic_geodesics(const Surface& s, const Walk& c,
                                                const OracleBudget& budget) {
    Walk start = normalize(c);
    std::unordered_set<std::vector<Arc>, KeyHash> seen;
    std::deque<Walk> queue;
    seen.insert(state_key(start));
    queue.push_back(start);
    std::vector<Walk> geodesics;
    int64_t visited = 1;

    while (!queue.empty()) {
        Walk w = std::move(queue.front());
        queue.pop_front();
        if (is_geodesic(s, w)) geodesics.push_back(w);
        for (const ElementaryMove& m : enumerate_moves(s, w, true)) {
            if (static_cast<int64_t>(w.size()) + move_growth(s, m) > budget.max_length)
                continue;
            Walk next = normalize(apply_move(s, w, m));
            if (!seen.insert(state_key(next)).second) continue;
            if (++visited > budget.max_moves)
                throw std::runtime_error("oracle move budget exhausted");
            queue.push_back(std::move(next));
        }
    }
    std::sort(geodesics.begin(), geodesics.end(), [](const Walk& a, const Walk& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.arcs < b.arcs;
    });
    return geodesics;
}

namespace {

// A drawing assigns every strand a slot on each edge it crosses; all
// crossings then happen inside vertex disks, between chords whose
// endpoints interleave around the disk boundary.
struct Drawing {
    const Surface& s;
    std::vector<const Walk*> walks;
    // passes[e]: strands through edge e as (walk, index), in scan order.
    std::vector<std::vector<std::pair<int32_t, int64_t>>> passes;
    // Per edge, the current left-to-right slot order as indices into
    // passes[e], viewed from the forward end.
    std::vector<std::vector<int32_t>> order;

    explicit Drawing(const Surface& srf, std::vector<const Walk*> ws)
        : s(srf), walks(std::move(ws)), passes(srf.edge_count()) {
        for (int32_t w = 0; w < static_cast<int32_t>(walks.size()); ++w)
            for (int64_t i = 0; i < static_cast<int64_t>(walks[w]->size()); ++i)
                passes[edge_of(walks[w]->arc(i))].push_back({w, i});
        order.resize(passes.size());
        for (size_t e = 0; e < passes.size(); ++e) {
            order[e].resize(passes[e].size());
            for (size_t r = 0; r < passes[e].size(); ++r)
                order[e][r] = static_cast<int32_t>(r);
        }
    }

    int64_t assignments() const {
        int64_t total = 1;
        for (const auto& p : passes) {
            for (size_t r = 2; r <= p.size(); ++r) {
                total *= static_cast<int64_t>(r);
                if (total < 0 || total > (int64_t{1} << 60)) return int64_t{1} << 60;
            }
        }
        return total;
    }

    // Crossings between chords at every vertex for the current orders.
    // count_pair: count chords of distinct walks; otherwise same-walk pairs.
    int64_t crossings(bool count_pair) const {
        // Boundary position of each pass end around its vertex disk.
        // out end of (w,i) sits on arc(i); in end sits on twin(arc(i)).
        std::vector<std::vector<int64_t>> out_pos(walks.size()),
            in_pos(walks.size());
        for (size_t w = 0; w < walks.size(); ++w) {
            out_pos[w].assign(walks[w]->size(), -1);
            in_pos[w].assign(walks[w]->size(), -1);
        }
        std::vector<int64_t> base(s.vertex_count(), 0);  // ports seen so far
        for (int32_t v = 0; v < s.vertex_count(); ++v) {
            int64_t pos = 0;
            for (Arc x : s.rotation(v)) {
                int32_t e = edge_of(x);
                int64_t k = static_cast<int64_t>(passes[e].size());
                for (int64_t r = 0; r < k; ++r) {
                    int32_t slot = is_forward(x) ? order[e][r] : order[e][k - 1 - r];
                    auto [w, i] = passes[e][slot];
                    bool outgoing = walks[w]->arc(i) == x;
                    if (outgoing)
                        out_pos[w][i] = pos;
                    else
                        in_pos[w][i] = pos;
                    ++pos;
                }
            }
            base[v] = pos;
        }
        // Chords per vertex: visit i of walk w joins the in end of pass
        // i-1 to the out end of pass i.
        struct Chord {
            int32_t walk;
            int64_t a, b;
        };
        std::vector<std::vector<Chord>> at(s.vertex_count());
        for (size_t w = 0; w < walks.size(); ++w) {
            int64_t n = static_cast<int64_t>(walks[w]->size());
            for (int64_t i = 0; i < n; ++i) {
                int32_t v = s.vertex_of(walks[w]->arc(i));
                int64_t a = in_pos[w][(i + n - 1) % n];
                int64_t b = out_pos[w][i];
                at[v].push_back({static_cast<int32_t>(w), a, b});
            }
        }
        int64_t total = 0;
        for (int32_t v = 0; v < s.vertex_count(); ++v) {
            const auto& chords = at[v];
            const int64_t P = base[v];
            for (size_t i = 0; i < chords.size(); ++i)
                for (size_t j = i + 1; j < chords.size(); ++j) {
                    if (count_pair == (chords[i].walk == chords[j].walk)) continue;
                    auto inside = [&](int64_t x) {
                        int64_t rel = (x - chords[i].a + P) % P;
                        int64_t span = (chords[i].b - chords[i].a + P) % P;
                        return rel > 0 && rel < span;
                    };
                    if (inside(chords[j].a) != inside(chords[j].b)) ++total;
                }
        }
        return total;
    }

    // Minimum crossings over every slot assignment.
    int64_t minimize(bool count_pair, int64_t budget_count) {
        if (assignments() > budget_count)
            throw std::runtime_error("oracle ordering budget exhausted");
        std::vector<int32_t> free_edges;
        for (int32_t e = 0; e < static_cast<int32_t>(passes.size()); ++e)
            if (passes[e].size() >= 2) free_edges.push_back(e);
        int64_t best = crossings(count_pair);
        if (free_edges.empty() || best == 0) return best;
        // Odometer over the permutations of each free edge.
        std::vector<std::vector<int32_t>> perms(free_edges.size());
        for (size_t t = 0; t < free_edges.size(); ++t)
            perms[t] = order[free_edges[t]];
        while (true) {
            size_t t = 0;
            while (t < perms.size() &&
                   !std::next_permutation(perms[t].begin(), perms[t].end()))
                ++t;
            if (t == perms.size()) break;
            for (size_t u = 0; u < free_edges.size(); ++u)
                order[free_edges[u]] = perms[u];
            best = std::min(best, crossings(count_pair));
            if (best == 0) return 0;
        }
        return best;
    }
};

}  // namespace

int64_t brute_force_intersection(const Surface& s, const Walk& c, const Walk& d,
                                 bool self, const OracleBudget& budget) {
    if (!c.closed || (!self && !d.closed))
        throw std::runtime_error("intersection oracle wants closed walks");
    std::vector<Walk> reps_c = enumerate_homotopic_geodesics(s, c, budget);
    std::vector<Walk> reps_d =
        self ? std::vector<Walk>{} : enumerate_homotopic_geodesics(s, d, budget);

    int64_t best = -1;
    if (self) {
        for (const Walk& x : reps_c) {
            Drawing dr(s, {&x});
            int64_t v = dr.minimize(false, budget.max_count);
            if (best < 0 || v < best) best = v;
            if (best == 0) break;
        }
    } else {
        for (const Walk& x : reps_c) {
            for (const Walk& y : reps_d) {
                Drawing dr(s, {&x, &y});
                int64_t v = dr.minimize(true, budget.max_count);
                if (best < 0 || v < best) best = v;
                if (best == 0) return 0;
            }
        }
    }
    if (best < 0) throw std::runtime_error("no geodesic representative found");
    return best;
}

Walk random_homotopic_perturbation(const Surface& s, const Walk& w, int64_t moves,
                                   int64_t max_length, std::mt19937_64& rng) {
    Walk x = w;
    for (int64_t t = 0; t < moves; ++t) {
        std::vector<ElementaryMove> all = enumerate_moves(s, x, true);
        std::vector<ElementaryMove> fit;
        for (const ElementaryMove& m : all)
            if (static_cast<int64_t>(x.size()) + move_growth(s, m) <= max_length)
                fit.push_back(m);
        if (fit.empty()) break;
        x = apply_move(s, x, fit[rng() % fit.size()]);
    }
    return x;
}

Walk random_closed_walk(const Surface& s, int64_t length, std::mt19937_64& rng) {
    if (length <= 0)
        return trivial_closed(static_cast<int32_t>(rng() % s.vertex_count()));
    for (int64_t attempt = 0; attempt < 1000000; ++attempt) {
        std::vector<Arc> arcs;
        arcs.reserve(length);
        Arc a = static_cast<Arc>(rng() % s.arc_count());
        arcs.push_back(a);
        for (int64_t i = 1; i < length; ++i) {
            const auto& rot = s.rotation(s.target_of(arcs.back()));
            arcs.push_back(rot[rng() % rot.size()]);
        }
        if (s.target_of(arcs.back()) == s.vertex_of(arcs[0]))
            return make_closed(s, std::move(arcs));
    }
    throw std::runtime_error("random walk closure kept failing");
}

std::optional<Walk> random_canonical_curve(const QuadSystem& q, int64_t length,
                                           bool primitive, std::mt19937_64& rng) {
    const Surface& s = q.surface;
    if (length <= 0 || length % 2 != 0) return std::nullopt;
    static constexpr int32_t kTurns[4] = {-3, -2, 2, 3};
    for (int32_t attempt = 0; attempt < 2000; ++attempt) {
        std::vector<Arc> arcs;
        arcs.reserve(length);
        arcs.push_back(static_cast<Arc>(rng() % s.arc_count()));
        bool not_all_back = false;
        for (int64_t i = 1; i < length; ++i) {
            int32_t t = kTurns[rng() % 4];
            // Keep the last inner turn free to break an all minus-two run.
            if (i == length - 1 && !not_all_back && t == -2) t = 2;
            if (t != -2) not_all_back = true;
            Arc a = twin(arcs.back());
            if (t >= 0)
                for (int32_t k = 0; k < t; ++k) a = s.next_around_vertex(a);
            else
                for (int32_t k = 0; k < -t; ++k) a = s.prev_around_vertex(a);
            arcs.push_back(a);
        }
        if (s.target_of(arcs.back()) != s.vertex_of(arcs[0])) continue;
        Walk w{std::move(arcs), true, 0};
        if (!is_canonical(s, w)) continue;
        if (primitive && primitive_root(s, w).second != 1) continue;
        return w;
    }
    return std::nullopt;
}

}  // namespace curvecross
