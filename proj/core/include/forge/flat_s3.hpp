#pragma once

#include <array>
#include <functional>
#include <vector>

#include "forge/metric.hpp"

namespace forge {

// Flat immersion data for S^3: omega(u,v) = phi(u) + psi(v) in (0, pi), so
// that d^2 omega / du dv = 0 by construction.
struct FlatS3Data {
    std::function<double(double)> phi, psi;
    std::function<double(double)> dphi, dpsi;

    double omega(double u, double v) const { return phi(u) + psi(v); }
};

// omega = arcsin(e^{-u^2}/2) + arcsin(e^{-v^2}/2)
FlatS3Data flat_s3_counterexample();
FlatS3Data flat_s3_constant(double omega0);

struct FlatS3Forms {
    RiemannMetric2 I;            // (1, cos w, 1)
    RiemannMetric2 II;           // (0, sin w, 0)
    RiemannMetric2 III;          // II I^-1 II = (1, -cos w, 1)
    RiemannMetric2 I_plus_III;   // computed sum (2, 0, 2)
    RiemannMetric2 tau2;         // du^2 + dv^2, the model weak metric
    std::function<double(double, double)> det_ratio;  // det II / det I
};

// Validates omega in (0, pi) on the rectangle; throws RangeViolation.
FlatS3Forms flat_s3_forms(const FlatS3Data& d, double u0, double u1, double v0,
                          double v1, int grid_n = 64);

struct SurfaceMesh {
    int nu = 0, nv = 0;
    double u0 = 0, v0 = 0, step = 0;
    std::vector<std::array<double, 4>> vertices;  // row-major, (nu+1)*(nv+1)

    const std::array<double, 4>& at(int i, int j) const {
        return vertices[static_cast<size_t>(i) * (nv + 1) + j];
    }
};

struct FlatS3IntegrateOptions {
    double step = 1e-2;
    double blowup_norm = 10.0;
    double compat_tol = 1e-3;  // corner cross-check of the two sweep orders
};

// Gauss-Weingarten frame integration into S^3 (RK4, u-lines from a v-line of
// initial data, per-step re-projection of the frame constraints).
SurfaceMesh flat_s3_integrate(const FlatS3Data& d, double u0, double u1, double v0,
                              double v1, const FlatS3IntegrateOptions& opt = {});

// Induced metric components at interior vertex (i, j) by central differences.
std::array<double, 3> mesh_induced_efg(const SurfaceMesh& mesh, int i, int j);

}  // namespace forge
