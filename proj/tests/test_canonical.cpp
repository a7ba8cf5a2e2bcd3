#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "curvecross/oracle.hpp"
#include "curvecross/quads.hpp"
#include "curvecross/surface.hpp"
#include "curvecross/walk.hpp"

using namespace curvecross;

namespace {

Surface genus2() { return load_surface(std::string(CC_FIXTURE_DIR) + "/genus2.srf"); }
Surface torus() { return load_surface(std::string(CC_FIXTURE_DIR) + "/torus.srf"); }
Surface quads() { return load_surface(std::string(CC_FIXTURE_DIR) + "/genus2.quads"); }

Surface annulus() {
    return parse_surface("edge 1 0 0\nrotation 0 1 -1\nperforated 1\nperforated -1\n");
}

Surface pants() {
    return parse_surface(
        "edge 1 0 0\nedge 2 0 0\nrotation 0 1 -1 2 -2\n"
        "perforated 1\nperforated -1\nperforated -2\n");
}

Surface holed_torus() {
    return parse_surface("edge 1 0 0\nedge 2 0 0\nrotation 0 1 -2 -1 2\nperforated 1\n");
}

OracleBudget budget(int64_t max_length) {
    OracleBudget b;
    b.max_length = max_length;
    b.max_moves = 500000;
    return b;
}

// Free homotopy classes of the enumerated geodesics, as rotation-free keys.
std::set<std::vector<Arc>> keys(const std::vector<Walk>& reps) {
    std::set<std::vector<Arc>> out;
    for (const Walk& r : reps) out.insert(least_rotation(r.arcs));
    return out;
}

// The oracle agrees that c is the one canonical geodesic in w's class, and
// that the whole class funnels into it.
void check_against_oracle(const Surface& s, const Walk& w, const OracleBudget& b) {
    Walk c = canonicalize(s, w);
    CHECK(is_canonical(s, c));
    auto reps = enumerate_homotopic_geodesics(s, w, b);
    REQUIRE(!reps.empty());
    if (c.trivial()) {
        CHECK(reps.front().trivial());
        return;
    }
    bool found = false;
    std::set<std::vector<Arc>> canon;
    for (const Walk& r : reps) {
        found = found || r.arcs == c.arcs;
        if (is_canonical(s, r)) canon.insert(least_rotation(r.arcs));
        CHECK(canonicalize(s, r).arcs == c.arcs);
        CHECK(leftmost_canonical(s, r) == leftmost_canonical(s, w));
    }
    CHECK(found);
    CHECK(canon == std::set<std::vector<Arc>>{c.arcs});
}

}  // namespace

TEST_CASE("canonical forms need quads") {
    Surface g2 = genus2();
    CHECK_THROWS_AS(canonicalize(g2, make_closed(g2, {0})), WalkError);
    Surface ht = holed_torus();
    CHECK_THROWS_AS(canonicalize(ht, make_closed(ht, {0})), WalkError);
    Surface t = torus();  // a single square face passes the gate
    CHECK(canonicalize(t, make_closed(t, {0})).arcs == std::vector<Arc>{0});
    CHECK(canonicalize(t, make_closed(t, {0, 1})).trivial());
}

TEST_CASE("spurs and face boundaries cancel") {
    Surface s = quads();
    CHECK(canonicalize(s, make_closed(s, {0, 1})).trivial());
    CHECK(canonicalize(s, make_closed(s, {0, 3, 4, 15})).trivial());
    CHECK(canonicalize(s, trivial_closed(1)).trivial());
    Walk p = canonicalize(s, make_path(s, {0, 1}));
    CHECK(p.trivial());
    CHECK(p.base == 0);
}

TEST_CASE("brackets contract to the far side of their quads") {
    Surface s = quads();
    // Two right turns around one quad shortcut to its fourth side.
    CHECK(canonicalize(s, make_path(s, {0, 3, 4})).arcs == std::vector<Arc>{14});
    // A longer bracket slides across two quads.
    CHECK(canonicalize(s, make_path(s, {0, 3, 6, 1})).arcs ==
          std::vector<Arc>{14, 3});
}

TEST_CASE("a walk turning hard left everywhere swaps to its parallel") {
    Surface s = quads();
    Walk w = make_closed(s, {14, 3});
    auto t = turns_of(s, w);
    REQUIRE(t == std::vector<int32_t>{-2, -2});
    CHECK(canonicalize(s, w).arcs == std::vector<Arc>{3, 6});
}

TEST_CASE("left turns push across quads until they vanish") {
    Surface s = quads();
    Walk w = make_closed(s, {0, 7});
    REQUIRE(turns_of(s, w) == std::vector<int32_t>{-3, -1});
    Walk c = canonicalize(s, w);
    CHECK(c.arcs == std::vector<Arc>{0, 15});
    // The same class read left-handed keeps the original arcs.
    CHECK(leftmost_canonical(s, w).arcs == std::vector<Arc>{0, 7});
    CHECK(leftmost_canonical(s, c).arcs == std::vector<Arc>{0, 7});
    CHECK(canonicalize(s, c) == c);
}

TEST_CASE("oracle referees every two-arc class") {
    Surface s = quads();
    OracleBudget b = budget(4);
    for (Arc a = 0; a < s.arc_count(); ++a) {
        for (Arc x : s.rotation(s.target_of(a))) {
            if (s.target_of(x) != s.vertex_of(a)) continue;
            check_against_oracle(s, make_closed(s, {a, x}), b);
        }
    }
}

TEST_CASE("oracle referees random four-arc classes") {
    Surface s = quads();
    std::mt19937_64 rng(20240817);
    OracleBudget b = budget(6);
    for (int i = 0; i < 20; ++i)
        check_against_oracle(s, random_closed_walk(s, 4, rng), b);
}

TEST_CASE("oracle referees a few six-arc classes") {
    Surface s = quads();
    std::mt19937_64 rng(77);
    OracleBudget b = budget(8);
    for (int i = 0; i < 5; ++i)
        check_against_oracle(s, random_closed_walk(s, 6, rng), b);
}

TEST_CASE("canonical forms are stable under homotopic noise") {
    Surface s = quads();
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 12; ++i) {
        Walk w = random_closed_walk(s, 4, rng);
        Walk c = canonicalize(s, w);
        Walk p = random_homotopic_perturbation(s, w, 12, 12, rng);
        CHECK(canonicalize(s, p) == c);
        CHECK(freely_homotopic(s, w, p));
    }
}

TEST_CASE("homotopy verdicts match oracle class keys") {
    Surface s = quads();
    std::mt19937_64 rng(909);
    OracleBudget b = budget(6);
    std::vector<Walk> ws;
    std::vector<std::set<std::vector<Arc>>> ks;
    for (int i = 0; i < 6; ++i) {
        ws.push_back(random_closed_walk(s, 4, rng));
        ks.push_back(keys(enumerate_homotopic_geodesics(s, ws.back(), b)));
    }
    for (size_t i = 0; i < ws.size(); ++i)
        for (size_t j = i; j < ws.size(); ++j)
            CHECK(freely_homotopic(s, ws[i], ws[j]) == (ks[i] == ks[j]));
}

TEST_CASE("leftmost forms mirror rightmost ones") {
    Surface s = quads();
    std::mt19937_64 rng(1331);
    for (int i = 0; i < 15; ++i) {
        Walk w = random_closed_walk(s, 4, rng);
        Walk c = canonicalize(s, w);
        Walk l = leftmost_canonical(s, w);
        CHECK(l.arcs.size() == c.arcs.size());
        CHECK(l.trivial() == c.trivial());
        if (l.trivial()) continue;
        CHECK(is_geodesic(s, l));
        CHECK(is_canonical(s, inverse(l)));
        CHECK(leftmost_canonical(s, l) == l);
        CHECK(canonicalize(s, inverse(l)).arcs == least_rotation(inverse(l).arcs));
    }
}

TEST_CASE("paths keep their endpoints") {
    Surface s = quads();
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 15; ++i) {
        Walk w = random_closed_walk(s, 6, rng);
        Walk p = make_path(s, w.arcs);
        Walk c = canonicalize(s, p);
        CHECK(is_canonical(s, c));
        CHECK(c.arcs.size() <= p.arcs.size());
        CHECK(canonicalize(s, c) == c);
        int32_t from = p.trivial() ? p.base : s.vertex_of(p.arcs.front());
        int32_t to = p.trivial() ? p.base : s.target_of(p.arcs.back());
        int32_t cfrom = c.trivial() ? c.base : s.vertex_of(c.arcs.front());
        int32_t cto = c.trivial() ? c.base : s.target_of(c.arcs.back());
        CHECK(cfrom == from);
        CHECK(cto == to);
    }
}

TEST_CASE("free homotopy on spheres and disks is blind") {
    Surface sphere = parse_surface("edge 1 0 0\nrotation 0 1 -1\n");
    CHECK(freely_homotopic(sphere, make_closed(sphere, {0}), trivial_closed(0)));
    Surface disk = parse_surface("edge 1 0 0\nrotation 0 1 -1\nperforated 1\n");
    CHECK(freely_homotopic(disk, make_closed(disk, {0, 0}), make_closed(disk, {1})));
    CHECK(path_homotopic(sphere, make_path(sphere, {0}), make_path(sphere, {1})));
    CHECK(path_homotopic(sphere, make_path(sphere, {0}), make_path(sphere, {}, 0)));
    Surface lens = parse_surface("edge 1 0 1\nrotation 0 1\nrotation 1 -1\n");
    CHECK_FALSE(path_homotopic(lens, make_path(lens, {0}), make_path(lens, {}, 0)));
}

TEST_CASE("annulus classes are winding numbers") {
    Surface s = annulus();
    CHECK(detail::annulus_winding(s, make_closed(s, {0})) == 1);
    CHECK(detail::annulus_winding(s, make_closed(s, {1})) == -1);
    CHECK(detail::annulus_winding(s, make_closed(s, {0, 0})) == 2);
    CHECK(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {0})));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {1})));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {0, 0})));
    CHECK_FALSE(freely_homotopic(s, trivial_closed(0), make_closed(s, {0})));
    CHECK(freely_homotopic(s, trivial_closed(0), trivial_closed(0)));
    CHECK(path_homotopic(s, make_path(s, {0}), make_path(s, {0})));
    CHECK_FALSE(path_homotopic(s, make_path(s, {0}), make_path(s, {1})));
}

TEST_CASE("torus classes are signed edge counts") {
    Surface s = torus();
    CHECK(detail::abelian_class(s, make_closed(s, {0})) == std::vector<int64_t>{1, 0});
    CHECK(detail::abelian_class(s, make_closed(s, {2})) == std::vector<int64_t>{0, 1});
    CHECK(detail::abelian_class(s, make_closed(s, {0, 2, 1, 3})) ==
          std::vector<int64_t>{0, 0});
    CHECK(freely_homotopic(s, make_closed(s, {0, 2}), make_closed(s, {2, 0})));
    CHECK(freely_homotopic(s, make_closed(s, {0, 2, 1, 3}), trivial_closed(0)));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {2})));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {1})));
    CHECK(path_homotopic(s, make_path(s, {0, 2}), make_path(s, {2, 0})));
    CHECK_FALSE(path_homotopic(s, make_path(s, {0}), make_path(s, {1})));
}

TEST_CASE("the mirror double closes a bordered surface") {
    Surface a = annulus();
    Surface da = detail::mirror_double(a);
    CHECK(da.perforated_count() == 0);
    CHECK(da.vertex_count() == 2);
    CHECK(da.edge_count() == 4);
    CHECK(da.genus() == 1);

    Surface p = pants();
    Surface dp = detail::mirror_double(p);
    CHECK(dp.genus() == 2);
    for (int32_t f = 0; f < dp.face_count(); ++f) CHECK(dp.face_size(f) == 4);

    Surface h = holed_torus();
    Surface dh = detail::mirror_double(h);
    CHECK(dh.euler_characteristic_closed() == -2);
    CHECK(dh.genus() == 2);
    // Source walks remain valid verbatim.
    validate_walk(dh, make_closed(h, {0, 2, 1, 3}));
}

TEST_CASE("a punctured torus tells the commutator from nothing") {
    Surface s = holed_torus();
    Walk comm = make_closed(s, {0, 2, 1, 3});
    CHECK_FALSE(freely_homotopic(s, comm, trivial_closed(0)));
    CHECK(freely_homotopic(s, comm, comm));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {2})));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0}), make_closed(s, {1})));
    // Conjugates agree freely but not as based paths.
    CHECK(freely_homotopic(s, make_closed(s, {0, 2}), make_closed(s, {2, 0})));
    CHECK_FALSE(path_homotopic(s, make_path(s, {0, 2}), make_path(s, {2, 0})));
    CHECK(path_homotopic(s, make_path(s, {0, 2}), make_path(s, {0, 2})));
}

TEST_CASE("pants separate their waist classes") {
    Surface s = pants();
    Walk x = make_closed(s, {0});
    Walk y = make_closed(s, {2});
    CHECK_FALSE(freely_homotopic(s, x, y));
    CHECK_FALSE(freely_homotopic(s, x, inverse(x)));
    CHECK_FALSE(freely_homotopic(s, make_closed(s, {0, 2}), trivial_closed(0)));
    CHECK(freely_homotopic(s, make_closed(s, {0, 2}), make_closed(s, {2, 0})));
    CHECK(freely_homotopic(s, x, make_closed(s, {2, 0, 3})));
}

TEST_CASE("higher genus routes through quadification") {
    Surface s = genus2();
    Walk x = make_closed(s, {0});
    CHECK(freely_homotopic(s, x, make_closed(s, {2, 0, 3})));
    CHECK_FALSE(freely_homotopic(s, x, make_closed(s, {2})));
    CHECK_FALSE(freely_homotopic(s, x, inverse(x)));
    CHECK_FALSE(freely_homotopic(s, x, make_closed(s, {0, 0})));
    CHECK(freely_homotopic(s, make_closed(s, {0, 1}), trivial_closed(0)));
    CHECK(path_homotopic(s, make_path(s, {0, 1}), make_path(s, {}, 0)));
    CHECK_FALSE(path_homotopic(s, make_path(s, {0}), make_path(s, {1})));
    std::mt19937_64 rng(31337);
    Walk p = random_homotopic_perturbation(s, x, 10, 8, rng);
    CHECK(freely_homotopic(s, x, p));
}

TEST_CASE("walk kinds are enforced") {
    Surface s = quads();
    CHECK_THROWS_AS(freely_homotopic(s, make_path(s, {0}), make_path(s, {0})),
                    WalkError);
    CHECK_THROWS_AS(path_homotopic(s, make_closed(s, {0, 1}), make_closed(s, {0, 1})),
                    WalkError);
    CHECK(freely_homotopic(s, trivial_closed(0), trivial_closed(1)));
}
