#pragma once

#include <array>
#include <functional>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

// Zero contour of a scalar indicator on a 2D grid (marching squares with
// linear interpolation), chained into polylines.
struct SingularCurve {
    std::vector<std::vector<std::array<double, 2>>> polylines;
    int grid_n = 0;
    double cell = 0.0;

    size_t vertex_count() const;
    bool empty() const { return polylines.empty(); }
};

struct ExtractOptions {
    int grid_n = 256;
    // hole around the puncture where the indicator is not sampled
    double puncture_radius = 0.0;
    // when true, re-extract at 2x resolution and throw GridTooCoarse if the
    // component count changes
    bool refine_check = false;
};

SingularCurve singular_set_extract(
    const std::function<double(double, double)>& indicator, double x0, double x1,
    double y0, double y1, const ExtractOptions& opt = {});

// Compactness heuristic near an end at the origin: no contour vertex inside
// r < r_check. Valid only on the probed region.
bool singular_set_compact(const SingularCurve& c, double r_check);

}  // namespace forge
