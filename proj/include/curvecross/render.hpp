// SVG pictures of immersions.  Vertices become disks with one port per
// strand end, ordered like the rotation; edges become straight strips of
// parallel strands; crossings happen only inside disks, so counting segment
// intersections in the output reproduces the combinatorial count.

#pragma once

#include <cstdint>
#include <string>

#include "curvecross/immersion.hpp"
#include "curvecross/quads.hpp"

namespace curvecross {

struct RenderOptions {
    uint64_t seed = 1;  // vertex layout jitter
    double scale = 120.0;
};

struct RenderResult {
    std::string svg;
    // Crossings recounted geometrically from the emitted strand polylines.
    int64_t chord_crossings = 0;
};

RenderResult render_svg(const QuadSystem& q, const Immersion& im,
                        const RenderOptions& opts = {});

}  // namespace curvecross
