#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "forge/contour.hpp"
#include "forge/expr.hpp"
#include "forge/metric.hpp"

namespace forge {

// ---------------------------------------------------------------------------
// Improper affine maps: holomorphic pair (F, G) with Re(F dG) exact and
// |dF|^2 + |dG|^2 positive definite.

struct ImproperAffineData {
    ExprPtr F, G;
    cplx z0{0.5, 0.0};  // basepoint of the integral of F dG
};

struct AffineSurface {
    ImproperAffineData data;
    ExprPtr dF, dG;
    double re_period = 0.0;

    // f(z) = (G + conj(F), (|G|^2-|F|^2)/2 + Re(G F - 2 int F dG))
    std::array<double, 3> eval(cplx z) const;
    cplx integral_FdG(cplx z) const;  // canonical radial + arc path from z0
};

struct AffineValidation {
    double probe_radius = 0.25;     // loop radius for condition (i)
    double r_inner = 0.05, r_outer = 0.9;
    int grid_n = 24;
    double period_tol = 1e-9;
};

// Throws ExactnessViolation (with the Re-period) or DegenerateData.
AffineSurface build_improper_affine(const ImproperAffineData& d,
                                    const AffineValidation& v = {});

struct AffineMetrics {
    DirDensity ds2;                 // |dF + dG|^2, direction dependent
    ConformalMetric dtau2;          // 2(|dF|^2 + |dG|^2)
    std::function<cplx(cplx)> nu_horizontal;  // nu = (conj(F) - G, 1)
    std::function<double(cplx)> singular_indicator;  // |dF/dG| - 1
};

AffineMetrics improper_affine_metrics(const ImproperAffineData& d);

// ---------------------------------------------------------------------------
// Maxfaces: projection of a null curve in C^3 to R^3_1 (signature -,+,+).

struct MaxfaceData {
    ExprPtr F1, F2, F3;
    ExprPtr g, omega_core;  // optional Weierstrass pair
};

struct MaxfaceSurface {
    MaxfaceData data;
    ExprPtr dF1, dF2, dF3;

    std::array<double, 3> eval(cplx z) const;  // p_L(F) = Re(-i F3, F1, F2)
    RiemannMetric2 induced;                    // Lorentz-induced first form on (u,v)
    double induced_E(cplx z) const;
    double induced_F(cplx z) const;
    double induced_G(cplx z) const;
};

struct MaxfaceValidation {
    double r_inner = 0.05, r_outer = 0.9;
    int grid_n = 24;
    double nullity_tol = 1e-10;
    bool require_spacelike = true;
};

std::array<double, 3> lorentz_projection(const std::array<cplx, 3>& zeta);

MaxfaceSurface build_maxface(const MaxfaceData& d, const MaxfaceValidation& v = {});

// dsigma^2 = (1+|g|^2)^2 |w|^2
ConformalMetric maxface_sigma_metric(const ExprPtr& g, const ExprPtr& omega_core);

// ---------------------------------------------------------------------------
// CMC-1 faces in de Sitter space: metric bundle only (no ambient immersion).

struct Cmc1Data {
    ExprPtr g;           // secondary Gauss map
    ExprPtr omega_core;  // Weierstrass form coefficient
    ExprPtr G_hyp;       // hyperbolic Gauss map
    ExprPtr Q_core;      // Hopf coefficient; derived as omega * g' when null
};

struct Cmc1Bundle {
    ConformalMetric ds2;        // (1-|g|^2)^2 |Q/dg|^2
    ConformalMetric ds_hat2;    // (1+|g|^2)^2 |w|^2
    ConformalMetric ds_sharp2;  // (1+|G|^2)^2 |Q/dG|^2
    ConformalMetric dsigma2;    // 4|dg|^2 / (1-|g|^2)^2
    ExprPtr Q_core;
    double identity_residual = 0.0;  // max rel error of ds2*dsigma2 = 4|Q|^2
};

Cmc1Bundle cmc1_metric_bundle(const Cmc1Data& d, double r_inner = 0.05,
                              double r_outer = 0.9, int grid_n = 24);

struct ParabolicModel {
    ExprPtr g_hat, g, g_prime;
    ExprPtr g_prime_closed_form;  // 2(z h' + eps)/(z (h + eps log z + 1)^2)
    double closed_form_residual = 0.0;
    // Fitted constants on nested ranges [10^-k, 1e-2], k in fit_cutoffs:
    std::vector<int> fit_cutoffs;  // decades
    std::vector<double> c1;        // sup |g'| |z| |log z|^2
    std::vector<double> c2;        // inf |1-|g|^2| |log z|
    bool c1_stable = false, c2_stable = false;
    double abs_g_at_deepest = 0.0;  // |g| at r = 1e-8 (should approach 1)
};

ParabolicModel cmc1_parabolic_model(const ExprPtr& h, int epsilon,
                                    double stability_factor = 1.2);

// Residual field of 2Q - S(g) + S(G); Q_core taken from data or omega * g'.
std::function<cplx(cplx)> hopf_schwarzian_residual(const ExprPtr& g,
                                                   const ExprPtr& G_hyp,
                                                   const ExprPtr& Q_core);

// ---------------------------------------------------------------------------
// Flat fronts in H^3: canonical forms w = z^mu w_hat dz, rho = z^nu rho_hat.

struct FlatFrontData {
    double mu = 0.0;   // in [0,1)
    ExprPtr omega_hat;
    double nu = 0.0;   // in [0,1)
    ExprPtr rho_hat;
};

struct FlatFrontMetrics {
    ConformalMetric dtau2;  // |w|^2 + |theta|^2
    bool roles_exchanged = false;
    FlatFrontData effective;  // data after a possible w <-> theta exchange
    std::function<double(cplx)> rho_abs;
    std::function<double(cplx)> singular_indicator;  // |rho| - 1
    DirDensity ds2;  // |w + conj(theta)|^2 (principal branch representative)
};

FlatFrontMetrics flat_front_metrics(const FlatFrontData& d, double r_inner = 0.01,
                                    double r_outer = 0.9, int grid_n = 24);

}  // namespace forge
