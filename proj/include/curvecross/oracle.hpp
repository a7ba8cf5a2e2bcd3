// Brute-force reference answers and random test inputs.
//
// The oracle enumerates every geodesic in a free homotopy class by breadth
// first search over elementary moves, then minimizes crossing counts over
// all strand orderings.  Exponential: keep lengths small and budgets set.

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "curvecross/quads.hpp"
#include "curvecross/walk.hpp"

namespace curvecross {

struct OracleBudget {
    int64_t max_length = 24;    // longest walk the move search may visit
    int64_t max_moves = 200000; // BFS node limit
    int64_t max_count = 2000000; // orderings tried per representative set
};

// Budget with max_count overridden by CURVECROSS_ORACLE_BUDGET when set.
OracleBudget budget_from_env();

// Every geodesic freely homotopic to c, deduplicated up to nothing (each
// rotation counts once).  Throws when the budget is exhausted.
std::vector<Walk> enumerate_homotopic_geodesics(const Surface& s,
                                                const Walk& c,
                                                const OracleBudget& budget);

// Minimum crossings between representatives of c and d over all geodesic
// pairs and all interleavings of their strands along each edge.  With
// self==true d is ignored and self-crossings of c are minimized.
int64_t brute_force_intersection(const Surface& s, const Walk& c,
                                 const Walk& d, bool self,
                                 const OracleBudget& budget);

// Applies `moves` random elementary moves (insertions allowed while the
// walk stays within max_length).  Result is freely homotopic to w.
Walk random_homotopic_perturbation(const Surface& s, const Walk& w,
                                   int64_t moves, int64_t max_length,
                                   std::mt19937_64& rng);

// Uniform-ish random closed walk of the given length (arcs chained head to
// tail, closure forced by restarting).
Walk random_closed_walk(const Surface& s, int64_t length,
                        std::mt19937_64& rng);

// Random canonical closed walk of the given even length on a quad system,
// optionally primitive.  Lengths that admit no canonical walk return
// nullopt.
std::optional<Walk> random_canonical_curve(const QuadSystem& q, int64_t length,
                                           bool primitive,
                                           std::mt19937_64& rng);

}  // namespace curvecross
