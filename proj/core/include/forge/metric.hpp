#pragma once

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "forge/expr.hpp"

namespace forge {

// Magnitude of a (possibly multivalued) 1-form per unit |dz|:
//   |z|^mu * |log z|^n * |core(z)|.
// Only the magnitude is carried, so the object is single-valued on the
// punctured disk even when the underlying form lives on the universal cover.
struct AbsOneForm {
    double mu = 0.0;
    int log_power = 0;
    ExprPtr core;

    double magnitude(cplx z) const;
};

// Conformal metric D(z)|dz|^2 with D = factor * sum of squared term
// magnitudes. factor (when set) is a pointwise non-negative weight; it covers
// densities like (1-|g|^2)^2|w|^2 that are not sums of squares.
struct ConformalMetric {
    std::vector<AbsOneForm> terms;
    std::function<double(cplx)> factor;

    double density(cplx z) const;
};

// Metric E du^2 + 2F du dv + G dv^2 on a (u,v) domain.
struct RiemannMetric2 {
    std::function<double(double, double)> E, F, G;
};

// Direction-dependent length density: |ds/dz|^2 at z along unit direction.
// Used for first fundamental forms like |dF + dG|^2 that are not conformal.
using DirDensity = std::function<double(cplx z, cplx unit_dir)>;

struct PathSpec {
    enum class Kind { RadialRay, Samples, Segment };
    Kind kind = Kind::RadialRay;

    // RadialRay: from r0 * e^{i theta0} toward the puncture at 0.
    double theta0 = 0.0;
    double r0 = 1.0;

    // Samples: polyline through the given points.
    std::vector<cplx> samples;

    // Segment in (u,v): t -> p0 + t * dir, t in [0, t_end] (t_end may be inf).
    std::array<double, 2> p0{0.0, 0.0};
    std::array<double, 2> dir{1.0, 0.0};
    double t_end = std::numeric_limits<double>::infinity();
};

enum class GrowthModel { Bounded, LogPower, Power, Superpolynomial, Undetermined };

const char* growth_model_name(GrowthModel m);

struct PartialLengthRow {
    double ray_angle = 0.0;
    double epsilon = 0.0;        // truncation parameter (radius or 1/T)
    double partial_length = 0.0;
};

struct DivergenceVerdict {
    bool divergent = false;
    GrowthModel model = GrowthModel::Undetermined;
    // LogPower: L ~ log_coeff * ln(1/eps)^log_power
    double log_power = 0.0;
    double log_coeff = 0.0;
    // Power: L ~ eps^-power_exponent
    double power_exponent = 0.0;
    std::vector<PartialLengthRow> table;
    // Bounded case: extrapolated value and error estimate.
    double finite_value = 0.0;
    double error_estimate = 0.0;
    std::string note;
};

struct LengthOptions {
    double tol = 1e-9;           // absolute tolerance for finite verdicts
    int k_max = 8;               // truncations eps_k = r0 * 10^-k, k = 1..k_max
    double divergence_floor = 1e-3;
};

struct PathLengthResult {
    bool divergent = false;
    double value = 0.0;          // finite case only
    double error_estimate = 0.0;
    DivergenceVerdict verdict;
};

PathLengthResult path_length(const ConformalMetric& m, const PathSpec& path,
                             const LengthOptions& opt = {});
PathLengthResult path_length(const RiemannMetric2& m, const PathSpec& path,
                             const LengthOptions& opt = {});
PathLengthResult path_length(const DirDensity& density, const PathSpec& path,
                             const LengthOptions& opt = {});

// Shared radial engine: lambda(r) is the length density per dr along a path
// parametrized by radius; partial lengths at eps_k = r0 * 10^-k.
DivergenceVerdict radial_partial_lengths(const std::function<double(double)>& lambda,
                                         double r0, const LengthOptions& opt);

// Divergence of m toward the puncture along n equally spaced radial rays.
// Aggregate verdict: divergent iff every ray diverges; the reported growth
// model is the weakest one seen.
DivergenceVerdict radial_divergence_test(const ConformalMetric& m, int n_rays,
                                         double r0, const LengthOptions& opt = {});
DivergenceVerdict radial_divergence_test(const DirDensity& density, int n_rays,
                                         double r0, const LengthOptions& opt = {});

// Experimental probe for the weighted integrand |w| * |log z|^n along rays
// and logarithmic spirals. Results are evidence, not proof.
struct WeightedProbeResult {
    DivergenceVerdict rays;
    DivergenceVerdict spirals;
    bool divergent = false;
    std::string label;  // always "evidence, not proof"
};

WeightedProbeResult weighted_divergence_test(const AbsOneForm& w, int n,
                                             int n_rays, double r0,
                                             double spiral_kappa = 1.0,
                                             const LengthOptions& opt = {});

}  // namespace forge
