#include "curvecross/walk.hpp"

#include <algorithm>
#include <sstream>

namespace curvecross {

Arc Walk::arc(int64_t i) const {
    const int64_t n = static_cast<int64_t>(arcs.size());
    if (closed) {
        if (n == 0) throw WalkError("indexing a trivial walk");
        return arcs[((i % n) + n) % n];
    }
    if (i < 0 || i >= n) throw WalkError("path index out of range");
    return arcs[i];
}

int32_t Walk::vertex(const Surface& s, int64_t i) const {
    if (trivial()) return base;
    const int64_t n = static_cast<int64_t>(arcs.size());
    if (!closed && i == n) return s.target_of(arcs[n - 1]);
    return s.vertex_of(arc(i));
}

Walk make_closed(const Surface& s, std::vector<Arc> arcs) {
    Walk w{std::move(arcs), true, 0};
    validate_walk(s, w);
    return w;
}

Walk make_path(const Surface& s, std::vector<Arc> arcs, int32_t base_if_empty) {
    Walk w{std::move(arcs), false, base_if_empty};
    validate_walk(s, w);
    return w;
}

Walk trivial_closed(int32_t vertex) { return Walk{{}, true, vertex}; }

void validate_walk(const Surface& s, const Walk& w) {
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    if (n == 0) {
        if (w.base < 0 || w.base >= s.vertex_count())
            throw WalkError("trivial walk at an unknown vertex");
        return;
    }
    for (Arc a : w.arcs)
        if (a < 0 || a >= s.arc_count()) throw WalkError("walk uses an unknown arc");
    for (int64_t i = 0; i + 1 < n; ++i)
        if (s.target_of(w.arcs[i]) != s.vertex_of(w.arcs[i + 1]))
            throw WalkError("walk arcs are not chained");
    if (w.closed && s.target_of(w.arcs[n - 1]) != s.vertex_of(w.arcs[0]))
        throw WalkError("closed walk does not return to its start");
}

Walk inverse(const Walk& w) {
    Walk r = w;
    std::reverse(r.arcs.begin(), r.arcs.end());
    for (Arc& a : r.arcs) a = twin(a);
    return r;
}

Walk power(const Walk& w, int32_t k) {
    if (!w.closed) throw WalkError("power of a path");
    if (k < 1) throw WalkError("power wants a positive exponent");
    Walk r = w;
    r.arcs.reserve(w.arcs.size() * k);
    for (int32_t i = 1; i < k; ++i)
        r.arcs.insert(r.arcs.end(), w.arcs.begin(), w.arcs.end());
    return r;
}

Walk rotated(const Walk& w, int64_t r) {
    if (!w.closed) throw WalkError("rotating a path");
    if (w.trivial()) return w;
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    int64_t off = ((r % n) + n) % n;
    Walk out = w;
    std::rotate(out.arcs.begin(), out.arcs.begin() + off, out.arcs.end());
    return out;
}

Walk subpath(const Walk& w, int64_t i, int64_t j, const Surface& s) {
    if (j < 0) throw WalkError("subpath with negative length");
    Walk out{{}, false, 0};
    if (j == 0) {
        out.base = w.trivial() ? w.base : w.vertex(s, i);
        return out;
    }
    if (!w.closed && (i < 0 || i + j > static_cast<int64_t>(w.arcs.size())))
        throw WalkError("subpath out of range");
    out.arcs.reserve(j);
    for (int64_t k = 0; k < j; ++k) out.arcs.push_back(w.arc(i + k));
    return out;
}

// --- Turn sequences ---------------------------------------------------------

int64_t TurnSequence::expanded_size() const {
    int64_t n = 0;
    for (auto& [t, m] : runs) n += m;
    return n;
}

std::vector<int32_t> TurnSequence::expand() const {
    std::vector<int32_t> out;
    out.reserve(expanded_size());
    for (auto& [t, m] : runs) out.insert(out.end(), m, t);
    return out;
}

TurnSequence TurnSequence::encode(const std::vector<int32_t>& turns, bool cyclic) {
    TurnSequence seq;
    seq.cyclic = cyclic;
    for (int32_t t : turns) {
        if (!seq.runs.empty() && seq.runs.back().first == t)
            ++seq.runs.back().second;
        else
            seq.runs.emplace_back(t, 1);
    }
    return seq;
}

std::vector<int32_t> turns_of(const Surface& s, const Walk& w) {
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    std::vector<int32_t> out;
    if (n == 0) return out;
    if (w.closed) {
        out.reserve(n);
        for (int64_t i = 0; i < n; ++i)
            out.push_back(s.turn(twin(w.arc(i - 1)), w.arc(i)));
    } else {
        out.reserve(n - 1);
        for (int64_t i = 1; i < n; ++i)
            out.push_back(s.turn(twin(w.arcs[i - 1]), w.arcs[i]));
    }
    return out;
}

TurnSequence turn_sequence(const Surface& s, const Walk& w) {
    return TurnSequence::encode(turns_of(s, w), w.closed);
}

// --- Geodesic and canonical predicates --------------------------------------

namespace {

// A run of sign*2 flanked by sign*1 on both sides, scanned cyclically when
// asked (the flanks may be one and the same position).
bool has_bracket(const std::vector<int32_t>& t, bool cyclic, int32_t sign) {
    const int64_t n = static_cast<int64_t>(t.size());
    if (n == 0) return false;
    const int64_t limit = cyclic ? 2 * n : n;
    bool pending = false;
    for (int64_t i = 0; i < limit; ++i) {
        int32_t v = t[i % n];
        if (v == sign) {
            if (pending) return true;
            pending = true;
        } else if (v != 2 * sign) {
            pending = false;
        }
    }
    return false;
}

}  // namespace

bool is_geodesic(const Surface& s, const Walk& w) {
    std::vector<int32_t> t = turns_of(s, w);
    for (int32_t v : t)
        if (v == 0) return false;
    return !has_bracket(t, w.closed, 1) && !has_bracket(t, w.closed, -1);
}

bool is_canonical(const Surface& s, const Walk& w) {
    if (w.trivial()) return true;
    std::vector<int32_t> t = turns_of(s, w);
    for (int32_t v : t)
        if (v == 0 || v == -1) return false;
    if (has_bracket(t, w.closed, 1)) return false;
    if (w.closed && std::all_of(t.begin(), t.end(), [](int32_t v) { return v == -2; }))
        return false;
    return true;
}

std::pair<Walk, int32_t> primitive_root(const Surface& s, const Walk& w) {
    if (!w.closed) throw WalkError("primitive root of a path");
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    if (n == 0) return {w, 1};
    // Smallest period via the prefix function.
    std::vector<int64_t> fail(n + 1, 0);
    fail[0] = -1;
    for (int64_t i = 0; i < n; ++i) {
        int64_t j = fail[i];
        while (j >= 0 && w.arcs[j] != w.arcs[i]) j = fail[j];
        fail[i + 1] = j + 1;
    }
    int64_t p = n - fail[n];
    if (n % p != 0) return {w, 1};
    Walk root = make_closed(s, {w.arcs.begin(), w.arcs.begin() + p});
    return {root, static_cast<int32_t>(n / p)};
}

// --- Elementary moves -------------------------------------------------------

namespace {

int64_t wrap(int64_t i, int64_t n) { return ((i % n) + n) % n; }

}  // namespace

Walk apply_move(const Surface& s, const Walk& w, const ElementaryMove& m) {
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    if (m.kind == ElementaryMove::InsertSpur) {
        if (m.arc < 0 || m.arc >= s.arc_count()) throw WalkError("move does not apply");
        int64_t pos = m.pos;
        if (w.closed && n > 0) pos = wrap(pos, n);
        if (pos < 0 || pos > n) throw WalkError("move does not apply");
        if (w.vertex(s, pos) != s.vertex_of(m.arc))
            throw WalkError("move does not apply");
        Walk out = w;
        out.arcs.insert(out.arcs.begin() + pos, {m.arc, twin(m.arc)});
        return out;
    }
    if (m.kind == ElementaryMove::RemoveSpur) {
        if (n < 2) throw WalkError("move does not apply");
        int64_t pos = m.pos;
        int64_t next;
        if (w.closed) {
            pos = wrap(pos, n);
            next = wrap(pos + 1, n);
        } else {
            next = pos + 1;
            if (pos < 0 || next >= n) throw WalkError("move does not apply");
        }
        if (w.arcs[next] != twin(w.arcs[pos])) throw WalkError("move does not apply");
        Walk out = w;
        if (next > pos) {
            out.arcs.erase(out.arcs.begin() + pos, out.arcs.begin() + pos + 2);
        } else {
            out.arcs.erase(out.arcs.begin() + pos);
            out.arcs.erase(out.arcs.begin());
        }
        if (out.arcs.empty()) {
            out.base = s.vertex_of(w.arcs[pos]);
            out.closed = w.closed;
        }
        return out;
    }
    // FaceExchange: the walk piece [pos, pos+take) runs along the face of
    // m.arc, forward when reverse is unset and backward (the piece's reversed
    // twins read as a facial run from m.arc) when it is set.  The piece is
    // swapped for the complement of the face, traversed the opposite way.
    // Never crosses a perforated face.
    if (m.arc < 0 || m.arc >= s.arc_count()) throw WalkError("move does not apply");
    if (s.perforated(s.face_of(m.arc))) throw WalkError("move does not apply");
    const int32_t d = s.face_size(s.face_of(m.arc));
    if (m.take < 0 || m.take > d) throw WalkError("move does not apply");
    if (m.take > n) throw WalkError("move does not apply");
    int64_t pos = m.pos;
    if (w.closed && n > 0) pos = wrap(pos, n);
    if (pos < 0 || pos > n) throw WalkError("move does not apply");
    if (!w.closed && pos + m.take > n) throw WalkError("move does not apply");

    Arc b = m.arc;
    std::vector<Arc> repl;
    repl.reserve(d - m.take);
    if (!m.reverse) {
        if (m.take == 0) {
            if (w.vertex(s, pos) != s.vertex_of(b)) throw WalkError("move does not apply");
        } else {
            Arc x = b;
            for (int32_t k = 0; k < m.take; ++k) {
                Arc have = w.closed ? w.arc(pos + k) : w.arcs[pos + k];
                if (have != x) throw WalkError("move does not apply");
                x = s.next_in_face(x);
            }
        }
        // Complement of the matched piece, reversed.
        Arc x = b;
        for (int32_t k = 0; k < m.take; ++k) x = s.next_in_face(x);
        for (int32_t k = m.take; k < d; ++k) {
            repl.push_back(twin(x));
            x = s.next_in_face(x);
        }
        std::reverse(repl.begin(), repl.end());
    } else {
        if (m.take == 0) {
            if (w.vertex(s, pos) != s.vertex_of(b)) throw WalkError("move does not apply");
        } else {
            Arc x = b;
            for (int32_t k = m.take - 1; k >= 0; --k) {
                Arc have = w.closed ? w.arc(pos + k) : w.arcs[pos + k];
                if (twin(have) != x) throw WalkError("move does not apply");
                x = s.next_in_face(x);
            }
        }
        // Complement of the matched piece, in facial order.
        Arc x = b;
        for (int32_t k = 0; k < m.take; ++k) x = s.next_in_face(x);
        for (int32_t k = m.take; k < d; ++k) {
            repl.push_back(x);
            x = s.next_in_face(x);
        }
    }

    std::vector<Arc> out;
    out.reserve(n - m.take + repl.size());
    if (w.closed && pos + m.take > n) {
        // The matched piece wraps: rebuild from pos.
        for (int64_t k = m.take; k < n; ++k) out.push_back(w.arc(pos + k));
        out.insert(out.end(), repl.begin(), repl.end());
        Walk r{std::move(out), true, 0};
        if (r.arcs.empty()) r.base = s.vertex_of(b);
        validate_walk(s, r);
        return r;
    }
    out.insert(out.end(), w.arcs.begin(), w.arcs.begin() + pos);
    out.insert(out.end(), repl.begin(), repl.end());
    out.insert(out.end(), w.arcs.begin() + pos + m.take, w.arcs.end());
    Walk r{std::move(out), w.closed, 0};
    if (r.arcs.empty()) r.base = w.closed ? s.vertex_of(b) : w.base;
    validate_walk(s, r);
    return r;
}

std::vector<ElementaryMove> enumerate_moves(const Surface& s, const Walk& w,
                                            bool include_insertions) {
    std::vector<ElementaryMove> out;
    const int64_t n = static_cast<int64_t>(w.arcs.size());
    const int64_t positions = w.closed ? n : n + 1;

    for (int64_t pos = 0; pos < n; ++pos) {
        int64_t next = w.closed ? wrap(pos + 1, n) : pos + 1;
        if (next < n && n >= 2 && w.arcs[next] == twin(w.arcs[pos]))
            out.push_back({ElementaryMove::RemoveSpur, pos, -1, 0});
    }
    for (int64_t pos = 0; pos < n; ++pos) {
        // Matches of the facial walk starting with the walk's own arc.
        Arc b = w.closed ? w.arc(pos) : w.arcs[pos];
        if (s.perforated(s.face_of(b))) continue;
        const int32_t d = s.face_size(s.face_of(b));
        Arc x = b;
        int32_t k = 0;
        while (k < d && k < n) {
            Arc have = w.closed ? w.arc(pos + k) : (pos + k < n ? w.arcs[pos + k] : -1);
            if (have != x) break;
            ++k;
            x = s.next_in_face(x);
            out.push_back({ElementaryMove::FaceExchange, pos, b, k});
        }
    }
    for (int64_t pos = 0; pos < n; ++pos) {
        // Matches running backward along the face on the other side: the
        // piece's reversed twins read as a facial run ending at twin(arc).
        Arc first = w.closed ? w.arc(pos) : w.arcs[pos];
        Arc b = twin(first);
        if (s.perforated(s.face_of(b))) continue;
        const int32_t d = s.face_size(s.face_of(b));
        int32_t k = 1;
        out.push_back({ElementaryMove::FaceExchange, pos, b, 1, true});
        while (k < d && k < n) {
            Arc nxt = w.closed ? w.arc(pos + k) : (pos + k < n ? w.arcs[pos + k] : -1);
            if (nxt < 0 || s.next_in_face(twin(nxt)) != b) break;
            b = twin(nxt);
            ++k;
            out.push_back({ElementaryMove::FaceExchange, pos, b, k, true});
        }
    }
    if (include_insertions) {
        const int64_t ins_positions = w.trivial() ? 1 : positions;
        for (int64_t pos = 0; pos < ins_positions; ++pos) {
            int32_t v = w.vertex(s, pos);
            for (Arc a : s.rotation(v)) {
                out.push_back({ElementaryMove::InsertSpur, pos, a, 0});
                if (!s.perforated(s.face_of(a))) {
                    out.push_back({ElementaryMove::FaceExchange, pos, a, 0});
                    out.push_back({ElementaryMove::FaceExchange, pos, a, 0, true});
                }
            }
        }
    }
    return out;
}

// --- Least rotation (Booth) --------------------------------------------------

std::vector<Arc> least_rotation(std::vector<Arc> v) {
    const int64_t n = static_cast<int64_t>(v.size());
    if (n <= 1) return v;
    std::vector<int64_t> fail(2 * n, -1);
    int64_t k = 0;
    for (int64_t j = 1; j < 2 * n; ++j) {
        Arc sj = v[j % n];
        int64_t i = fail[j - k - 1];
        while (i != -1 && sj != v[(k + i + 1) % n]) {
            if (sj < v[(k + i + 1) % n]) k = j - i - 1;
            i = fail[i];
        }
        if (sj != v[(k + i + 1) % n]) {
            if (sj < v[(k + i + 1) % n]) k = j;
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    std::rotate(v.begin(), v.begin() + k, v.end());
    return v;
}

// --- Text format -------------------------------------------------------------

namespace {

int32_t parse_token_int(const std::string& tok, const char* what) {
    size_t pos = 0;
    int32_t v;
    try {
        v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
        throw WalkError(std::string("bad ") + what + ": '" + tok + "'");
    }
    if (pos != tok.size())
        throw WalkError(std::string("bad ") + what + ": '" + tok + "'");
    return v;
}

}  // namespace

Walk parse_walk(const Surface& s, const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);

    bool closed = true;
    size_t at = 0;
    if (!toks.empty() && toks[0] == "path") {
        closed = false;
        at = 1;
    }
    if (at >= toks.size()) throw WalkError("empty walk text");

    if (toks[at][0] == '@') {
        if (toks.size() != at + 1) throw WalkError("trailing tokens after trivial walk");
        int32_t v = parse_token_int(toks[at].substr(1), "vertex");
        if (v < 0 || v >= s.vertex_count())
            throw WalkError("trivial walk at an unknown vertex");
        Walk w{{}, closed, v};
        return w;
    }
    std::vector<Arc> arcs;
    for (size_t i = at; i < toks.size(); ++i) {
        int32_t sid = parse_token_int(toks[i], "signed edge id");
        if (sid == 0) throw WalkError("edge ids must be nonzero");
        auto idx = s.edge_index(std::abs(sid));
        if (!idx) throw WalkError("unknown edge id " + std::to_string(std::abs(sid)));
        arcs.push_back(2 * *idx + (sid > 0 ? 0 : 1));
    }
    Walk w{std::move(arcs), closed, 0};
    validate_walk(s, w);
    return w;
}

std::string format_walk(const Surface& s, const Walk& w) {
    std::ostringstream out;
    if (!w.closed) out << "path ";
    if (w.trivial()) {
        out << '@' << w.base;
        return out.str();
    }
    for (size_t i = 0; i < w.arcs.size(); ++i) {
        if (i) out << ' ';
        Arc a = w.arcs[i];
        out << (is_forward(a) ? s.edge_id(edge_of(a)) : -s.edge_id(edge_of(a)));
    }
    return out.str();
}

}  // namespace curvecross
