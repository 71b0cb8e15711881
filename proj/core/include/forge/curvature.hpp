#pragma once

#include <vector>

#include "forge/metric.hpp"

namespace forge {

// Gaussian curvature of a conformal metric D(z)|dz|^2 at p:
//   K = -Laplacian(log D) / (2 D),
// by a 5-point Laplacian at steps h and h/2 with one Richardson level.
double gauss_curvature(const ConformalMetric& m, cplx p, double h = 1e-3);

// Brioschi formula for E du^2 + 2F du dv + G dv^2, central differences with
// one Richardson level.
double gauss_curvature(const RiemannMetric2& m, double u, double v, double h = 1e-3);

struct TotalCurvatureRow {
    double eps = 0.0;
    double value = 0.0;  // integral of |K| dA over eps <= |z| <= r0
};

struct TotalCurvatureResult {
    std::vector<TotalCurvatureRow> table;
    double last = 0.0;
    bool finite_indicator = false;  // Cauchy increments below tol
};

// Integral of |K| dA over shrinking annuli [eps_j, r0], eps_j halving from
// r0/2 for n_shrink steps.
TotalCurvatureResult total_curvature(const ConformalMetric& m, double r0,
                                     int n_shrink = 6, double tol = 1e-3,
                                     int n_theta = 64, int n_radial_per_decade = 48);

}  // namespace forge
