#pragma once

#include <vector>

#include "forge/expr.hpp"

namespace forge {

// Verdict of the circle-sweep singularity classifier at z = 0.
struct SingularityVerdict {
    enum class Kind { Removable, Pole, Essential, Inconclusive };
    Kind kind = Kind::Inconclusive;
    int pole_order = 0;       // valid when kind == Pole
    double fitted_slope = 0;  // LS slope of log max|e| vs log(1/r)
    double fit_residual = 0;  // max abs deviation from the fit
    std::vector<double> radii;
};

struct ClassifyOptions {
    int j_min = 4;               // radii 2^-j, j = j_min..j_max
    int j_max = 14;
    int angular_samples = 512;
    double slope_tol = 0.1;      // |slope - k| <= slope_tol for pole(k)
    double residual_tol = 0.25;
    // Numeric single-valuedness probe across the slit; when the expression
    // carries log/fractional-power nodes whose multivaluedness does not
    // cancel, MultivaluedError is thrown.
    double slit_tol = 1e-6;
};

// k-th Laurent coefficient of e at 0 by trapezoidal quadrature on |z| = r.
// Node count doubles until two successive values agree to `tol`; the cap
// (2^16 nodes) throws QuadratureNonConvergence.
cplx laurent_coefficient(const ExprPtr& e, int k, double r, double tol = 1e-10);

// Contour integral of e dz over |z| = r; the value is checked against two
// nearby radii and RadiusDependence is thrown when the spread exceeds 1e-9.
cplx loop_period(const ExprPtr& e, double r);

SingularityVerdict classify_singularity(const ExprPtr& e,
                                        const ClassifyOptions& opt = {});

// Schwarzian derivative S(g) = (g''/g')' - (1/2)(g''/g')^2, built symbolically.
ExprPtr schwarzian(const ExprPtr& g);

// Throws MultivaluedError unless e takes matching values on both sides of
// the negative-axis slit at radius r (within rel_tol).
void require_single_valued_on_circle(const ExprPtr& e, double r,
                                     double rel_tol = 1e-6);

}  // namespace forge
