#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <random>
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

OracleBudget small_budget(int64_t max_length) {
    OracleBudget b;
    b.max_length = max_length;
    b.max_moves = 500000;
    b.max_count = 2000000;
    return b;
}

}  // namespace

TEST_CASE("budget from the environment") {
    unsetenv("CURVECROSS_ORACLE_BUDGET");
    CHECK(budget_from_env().max_count == 2000000);
    setenv("CURVECROSS_ORACLE_BUDGET", "12345", 1);
    CHECK(budget_from_env().max_count == 12345);
    setenv("CURVECROSS_ORACLE_BUDGET", "junk", 1);
    CHECK(budget_from_env().max_count == 2000000);
    unsetenv("CURVECROSS_ORACLE_BUDGET");
}

TEST_CASE("geodesic enumeration finds the reduced class") {
    Surface s = genus2();
    // A walk with a spur reduces; its class is the single loop.
    Walk spurred = make_closed(s, {0, 2, 3});
    auto reps = enumerate_homotopic_geodesics(s, spurred, small_budget(7));
    REQUIRE(!reps.empty());
    for (const Walk& r : reps) CHECK(is_geodesic(s, r));
    CHECK(reps.front().arcs == std::vector<Arc>{0});

    // A contractible walk reaches the trivial state.
    Walk contractible = make_closed(s, {0, 1});
    auto triv = enumerate_homotopic_geodesics(s, contractible, small_budget(6));
    REQUIRE(!triv.empty());
    CHECK(triv.front().trivial());

    OracleBudget tiny = small_budget(8);
    tiny.max_moves = 3;
    CHECK_THROWS_WITH(enumerate_homotopic_geodesics(s, spurred, tiny),
                      "oracle move budget exhausted");
}

TEST_CASE("torus intersection numbers by brute force") {
    Surface s = torus();
    Walk a = make_closed(s, {0});       // first loop
    Walk b = make_closed(s, {2});       // second loop
    Walk aa = make_closed(s, {0, 0});   // doubled loop
    Walk ab = make_closed(s, {0, 2});   // diagonal class
    Walk aab = make_closed(s, {0, 0, 2});

    CHECK(brute_force_intersection(s, a, b, false, small_budget(6)) == 1);
    CHECK(brute_force_intersection(s, a, a, true, small_budget(5)) == 0);
    CHECK(brute_force_intersection(s, a, inverse(a), false, small_budget(5)) == 0);
    CHECK(brute_force_intersection(s, aa, aa, true, small_budget(6)) == 1);
    CHECK(brute_force_intersection(s, aa, b, false, small_budget(6)) == 2);
    CHECK(brute_force_intersection(s, ab, ab, true, small_budget(6)) == 0);
    CHECK(brute_force_intersection(s, aab, aab, true, small_budget(7)) == 0);
    CHECK(brute_force_intersection(s, aab, b, false, small_budget(7)) == 2);

    Walk contractible = make_closed(s, {0, 1});
    CHECK(brute_force_intersection(s, contractible, b, false, small_budget(6)) == 0);
}

TEST_CASE("genus two intersection numbers by brute force") {
    Surface s = genus2();
    Walk a = make_closed(s, {0});
    Walk b = make_closed(s, {2});
    Walk c = make_closed(s, {4});

    CHECK(brute_force_intersection(s, a, b, false, small_budget(5)) == 1);
    CHECK(brute_force_intersection(s, a, c, false, small_budget(5)) == 0);
    CHECK(brute_force_intersection(s, a, a, true, small_budget(5)) == 0);
}

TEST_CASE("random closed walks are valid and reproducible") {
    Surface s = genus2();
    std::mt19937_64 r1(11), r2(11);
    for (int64_t len : {0, 1, 3, 8}) {
        Walk w = random_closed_walk(s, len, r1);
        CHECK(w.closed);
        CHECK(static_cast<int64_t>(w.size()) == len);
        CHECK_NOTHROW(validate_walk(s, w));
        CHECK(w == random_closed_walk(s, len, r2));
    }
}

TEST_CASE("random perturbations stay in the class") {
    Surface s = genus2();
    Walk start = make_closed(s, {0});
    std::mt19937_64 rng(5);
    Walk moved = random_homotopic_perturbation(s, start, 8, 7, rng);
    CHECK_NOTHROW(validate_walk(s, moved));
    CHECK(static_cast<int64_t>(moved.size()) <= 7);

    auto reps_start = enumerate_homotopic_geodesics(s, start, small_budget(7));
    auto reps_moved = enumerate_homotopic_geodesics(s, moved, small_budget(7));
    CHECK(reps_start == reps_moved);
}

TEST_CASE("random canonical curves on the quad system") {
    Surface s = genus2();
    QuadSystem q = quadify(s).first;

    CHECK(!random_canonical_curve(q, 0, false, *[] {
        static std::mt19937_64 r(1);
        return &r;
    }()).has_value());

    std::mt19937_64 rng(17);
    CHECK(!random_canonical_curve(q, 5, false, rng).has_value());

    for (int64_t len : {2, 4, 6, 8, 12}) {
        auto w = random_canonical_curve(q, len, true, rng);
        REQUIRE(w.has_value());
        CHECK(static_cast<int64_t>(w->size()) == len);
        CHECK_NOTHROW(validate_walk(q.surface, *w));
        CHECK(is_canonical(q.surface, *w));
        CHECK(primitive_root(q.surface, *w).second == 1);
    }

    std::mt19937_64 ra(23), rb(23);
    CHECK(random_canonical_curve(q, 6, true, ra) ==
          random_canonical_curve(q, 6, true, rb));
}
