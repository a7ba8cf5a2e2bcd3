#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/surface.hpp"
#include "curvecross/walk.hpp"

using namespace curvecross;

namespace {

Surface genus2() { return load_surface(std::string(CC_FIXTURE_DIR) + "/genus2.srf"); }
Surface torus() { return load_surface(std::string(CC_FIXTURE_DIR) + "/torus.srf"); }

// Signed edge counts of an arc sequence; zero for null-homotopic walks.
std::vector<int64_t> abelianized(const Surface& s, const std::vector<Arc>& arcs) {
    std::vector<int64_t> count(s.edge_count(), 0);
    for (Arc a : arcs) count[edge_of(a)] += is_forward(a) ? 1 : -1;
    return count;
}

bool all_zero(const std::vector<int64_t>& v) {
    for (int64_t x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("torus quadification") {
    Surface s = torus();
    auto [q, t] = detail::quadify_impl(s);

    CHECK(q.surface.vertex_count() == 2);
    CHECK(q.surface.edge_count() == 4);
    CHECK(q.surface.face_count() == 2);
    CHECK(q.surface.euler_characteristic() == 0);
    CHECK(q.surface.rotation(0) == std::vector<Arc>{0, 2, 4, 6});
    CHECK(q.surface.rotation(1) == std::vector<Arc>{7, 1, 3, 5});
    for (int32_t f = 0; f < q.surface.face_count(); ++f)
        CHECK(q.surface.face_size(f) == 4);
    CHECK(quad_system_violations(q).empty());

    CHECK(t.arc_image[0] == std::vector<Arc>{6, 5});
    CHECK(t.arc_image[2] == std::vector<Arc>{4, 3});
    Walk image = t.apply(make_closed(s, {0, 2}));
    CHECK(image.arcs == std::vector<Arc>{6, 5, 4, 3});
    CHECK_NOTHROW(validate_walk(q.surface, image));
}

TEST_CASE("genus two quadification matches the frozen fixture") {
    Surface s = genus2();
    auto [q, t] = quadify(s);

    Surface frozen = load_surface(std::string(CC_FIXTURE_DIR) + "/genus2.quads");
    CHECK(q.surface == frozen);
    CHECK(q.node_vertex == 0);
    CHECK(q.center_vertex == 1);
    CHECK(q.surface.euler_characteristic() == -2);
    CHECK(q.surface.genus() == 2);
    CHECK(q.surface.face_count() == 4);
    CHECK(q.surface.degree(0) == 8);
    CHECK(q.surface.degree(1) == 8);
    CHECK(quad_system_violations(q).empty());

    // Deterministic rebuild.
    auto [q2, t2] = quadify(s);
    CHECK(q2.surface == q.surface);
    CHECK(t2.arc_image == t.arc_image);

    CHECK(t.arc_image[0] == std::vector<Arc>{14, 5});
    CHECK(t.arc_image[3] == std::vector<Arc>{0, 7});
    for (Arc a = 0; a < s.arc_count(); ++a) {
        REQUIRE(t.arc_image[a].size() == 2);
        CHECK(is_forward(t.arc_image[a][0]));   // node -> center
        CHECK(!is_forward(t.arc_image[a][1]));  // center -> node
        CHECK_NOTHROW(validate_walk(q.surface, make_path(q.surface, t.arc_image[a])));
    }

    // Walks transport to closed walks of exactly twice the length, and the
    // face boundary stays null-homotopic.
    Walk w = make_closed(s, {0, 4});
    Walk img = t.apply(w);
    CHECK(img.size() == 2 * w.size());
    CHECK_NOTHROW(validate_walk(q.surface, img));

    Walk boundary = make_closed(s, s.face_walk(0));
    Walk bimg = t.apply(boundary);
    CHECK_NOTHROW(validate_walk(q.surface, bimg));
    CHECK(all_zero(abelianized(q.surface, bimg.arcs)));
}

TEST_CASE("bouquet reduction is the identity on the torus fixture") {
    Surface s = torus();
    auto red = detail::reduce_to_bouquet(s);
    CHECK(red.reduced == s);
    CHECK(red.loop_edges == std::vector<int32_t>{0, 1});
    for (Arc a = 0; a < s.arc_count(); ++a)
        CHECK(red.transport.arc_image[a] == std::vector<Arc>{a});
}

TEST_CASE("bouquet reduction contracts a subdivided torus") {
    // The torus fixture with one loop cut in two by a valence-two vertex.
    Surface s({{0, 1}, {1, 0}, {0, 0}}, {{0, 5, 3, 4}, {1, 2}});
    REQUIRE(s.face_count() == 1);
    REQUIRE(s.euler_characteristic() == 0);

    auto red = detail::reduce_to_bouquet(s);
    CHECK(red.reduced.vertex_count() == 1);
    CHECK(red.reduced.edge_count() == 2);
    CHECK(red.reduced.face_count() == 1);
    CHECK(red.reduced.rotation(0) == std::vector<Arc>{0, 3, 1, 2});
    CHECK(red.loop_edges == std::vector<int32_t>{1, 2});
    CHECK(red.reduced.edge_id(0) == 2);
    CHECK(red.reduced.edge_id(1) == 3);

    CHECK(red.transport.arc_image[0].empty());
    CHECK(red.transport.arc_image[1].empty());
    Walk around = red.transport.apply(make_closed(s, {0, 2}));
    CHECK(around.arcs == std::vector<Arc>{0});

    Walk face = red.transport.apply(make_closed(s, s.face_walk(0)));
    CHECK_NOTHROW(validate_walk(red.reduced, face));
    CHECK(all_zero(abelianized(red.reduced, face.arcs)));
}

TEST_CASE("bouquet reduction merges the quad faces of the doubled torus") {
    Surface s = genus2();
    Surface qs = quadify(s).first.surface;
    auto red = detail::reduce_to_bouquet(qs);

    CHECK(red.reduced.vertex_count() == 1);
    CHECK(red.reduced.edge_count() == 4);
    CHECK(red.reduced.face_count() == 1);
    CHECK(red.reduced.euler_characteristic() == -2);
    CHECK(red.loop_edges == std::vector<int32_t>{2, 4, 5, 6});
    CHECK(red.reduced.rotation(0) == std::vector<Arc>{0, 2, 4, 6, 1, 3, 5, 7});

    // Every quad boundary transports to a null-homotopic walk.
    for (int32_t f = 0; f < qs.face_count(); ++f) {
        Arc rep = -1;
        for (Arc a = 0; a < qs.arc_count() && rep < 0; ++a)
            if (qs.face_of(a) == f) rep = a;
        Walk img = red.transport.apply(make_closed(qs, qs.face_walk(rep)));
        CHECK_NOTHROW(validate_walk(red.reduced, img));
        CHECK(all_zero(abelianized(red.reduced, img.arcs)));
    }
}

TEST_CASE("spheres reduce to trees and fail the quadify gate") {
    Surface loop({{0, 0}}, {{0, 1}});
    REQUIRE(loop.euler_characteristic() == 2);
    CHECK_THROWS_WITH_AS(detail::reduce_to_bouquet(loop), "surface reduces to a tree",
                         SurfaceError);
    CHECK_THROWS_WITH_AS(quadify(loop), "quadify needs negative characteristic",
                         SurfaceError);
    CHECK_THROWS_WITH_AS(quadify(torus()), "quadify needs negative characteristic",
                         SurfaceError);
}

TEST_CASE("bordered quadification stars only the free face") {
    // One-holed torus: the torus fixture plus a loop cutting off a
    // perforated monogon.
    Surface s({{0, 0}, {0, 0}, {0, 0}}, {{0, 3, 1, 2, 4, 5}}, {5});
    REQUIRE(s.perforated_count() == 1);
    REQUIRE(s.euler_characteristic() == -1);

    auto [q, t] = quadify(s);
    CHECK(q.surface.vertex_count() == 2);
    CHECK(q.surface.edge_count() == 6);  // five spokes and the kept loop
    CHECK(q.surface.rotation(0) == std::vector<Arc>{0, 2, 4, 6, 10, 11, 8});
    CHECK(q.surface.rotation(1) == std::vector<Arc>{9, 7, 1, 3, 5});
    CHECK(q.surface.perforated_count() == 1);
    CHECK(q.surface.euler_characteristic() == -1);
    CHECK(quad_system_violations(q).empty());

    // The perforated monogon keeps its original boundary edge.
    CHECK(t.arc_image[4] == std::vector<Arc>{10});
    CHECK(t.arc_image[5] == std::vector<Arc>{11});
    CHECK(t.arc_image[0] == std::vector<Arc>{8, 5});

    // Non-perforated faces are quads except next to the kept loop.
    int32_t triangles = 0, quads = 0;
    for (int32_t f = 0; f < q.surface.face_count(); ++f) {
        if (q.surface.perforated(f)) continue;
        if (q.surface.face_size(f) == 3) ++triangles;
        if (q.surface.face_size(f) == 4) ++quads;
    }
    CHECK(triangles > 0);
    CHECK(triangles + quads + q.surface.perforated_count() == q.surface.face_count());

    Walk belt = t.apply(make_closed(s, {0, 2}));
    CHECK_NOTHROW(validate_walk(q.surface, belt));
}

TEST_CASE("fully perforated surfaces cannot be reduced") {
    Surface s({{0, 0}, {0, 0}}, {{0, 1, 2, 3}}, {0, 1, 3});
    CHECK_THROWS_WITH_AS(detail::reduce_to_bouquet(s), "every face is perforated",
                         SurfaceError);
}
