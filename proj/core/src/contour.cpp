#include "forge/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace forge {

namespace {

constexpr double kPi = std::numbers::pi;

// Uniform-node trapezoid of f over theta in (-pi, pi], doubling N until two
// successive values agree to tol. Exact (to rounding) once N exceeds the
// Fourier bandwidth of the integrand.
template <class F>
cplx circle_average(F&& f, double tol, const char* what) {
    int n = 64;
    cplx prev{0, 0};
    bool have_prev = false;
    while (n <= (1 << 16)) {
        cplx acc{0, 0};
        int used = 0;
        for (int j = 0; j < n; ++j) {
            double theta = -kPi + 2.0 * kPi * (j + 1) / n;  // theta in (-pi, pi]
            try {
                acc += f(theta);
                ++used;
            } catch (const DomainError&) {
                // pole hit exactly on a node; drop it
            }
        }
        if (used == 0) throw QuadratureFailure(std::string(what) + ": no valid nodes");
        cplx val = acc / static_cast<double>(used);
        if (have_prev && std::abs(val - prev) <= tol * (1.0 + std::abs(val))) return val;
        prev = val;
        have_prev = true;
        n *= 2;
    }
    throw QuadratureNonConvergence(std::string(what) + ": node cap reached");
}

}  // namespace

void require_single_valued_on_circle(const ExprPtr& e, double r, double rel_tol) {
    if (!contains_log(e) && !contains_fractional_pow(e)) return;
    const double delta = 1e-8;
    cplx zp = std::polar(r, kPi - delta);
    cplx zm = std::polar(r, -kPi + delta);
    cplx vp = eval(e, zp);
    cplx vm = eval(e, zm);
    double scale = std::abs(vp) + std::abs(vm) + 1.0;
    if (std::abs(vp - vm) > rel_tol * scale)
        throw MultivaluedError("expression is not single-valued on |z| = " +
                               std::to_string(r));
}

cplx laurent_coefficient(const ExprPtr& e, int k, double r, double tol) {
    require_single_valued_on_circle(e, r);
    double rk = std::pow(r, -k);
    return circle_average(
        [&](double theta) {
            cplx z = std::polar(r, theta);
            return eval(e, z) * rk * std::polar(1.0, -k * theta);
        },
        tol, "laurent_coefficient");
}

cplx loop_period(const ExprPtr& e, double r) {
    auto at = [&](double radius) {
        require_single_valued_on_circle(e, radius);
        cplx avg = circle_average(
            [&](double theta) {
                cplx z = std::polar(radius, theta);
                return eval(e, z) * cplx{0, 1} * z;
            },
            1e-12, "loop_period");
        return avg * 2.0 * kPi;
    };
    cplx v0 = at(r);
    cplx v1 = at(r * 0.8);
    cplx v2 = at(r * 1.2);
    double spread = std::max(std::abs(v0 - v1), std::abs(v0 - v2));
    if (spread > 1e-9 * (1.0 + std::abs(v0)))
        throw RadiusDependence("loop period varies with radius (spread " +
                               std::to_string(spread) + ")");
    return v0;
}

SingularityVerdict classify_singularity(const ExprPtr& e, const ClassifyOptions& opt) {
    SingularityVerdict v;
    std::vector<double> logM, x;
    for (int j = opt.j_min; j <= opt.j_max; ++j) {
        double r = std::pow(2.0, -j);
        require_single_valued_on_circle(e, r, opt.slit_tol);
        double m = 0.0;
        bool any = false;
        for (int s = 0; s < opt.angular_samples; ++s) {
            double theta = -kPi + 2.0 * kPi * (s + 1) / opt.angular_samples;
            try {
                m = std::max(m, std::abs(eval(e, std::polar(r, theta))));
                any = true;
            } catch (const DomainError&) {
            }
        }
        if (!any) continue;
        // circles where the modulus overflows carry no slope information
        if (!std::isfinite(m)) continue;
        v.radii.push_back(r);
        x.push_back(j * std::log(2.0));        // log(1/r)
        logM.push_back(m > 0 ? std::log(m) : -760.0);
    }
    size_t n = x.size();
    if (n < 4) {
        v.kind = SingularityVerdict::Kind::Inconclusive;
        return v;
    }

    // Identically-zero (or vanishing beyond double range) expressions.
    if (*std::max_element(logM.begin(), logM.end()) < -700.0) {
        v.kind = SingularityVerdict::Kind::Removable;
        return v;
    }

    // Successive dyadic slopes; unbounded increase means essential growth.
    std::vector<double> s(n - 1);
    for (size_t j = 0; j + 1 < n; ++j) s[j] = (logM[j + 1] - logM[j]) / std::log(2.0);
    bool nondecreasing = true;
    for (size_t j = 0; j + 1 < s.size(); ++j)
        if (s[j + 1] < s[j] - 0.2 * (1.0 + std::abs(s[j]))) nondecreasing = false;
    if (nondecreasing && s.back() > s.front() + 2.0) {
        v.kind = SingularityVerdict::Kind::Essential;
        v.fitted_slope = s.back();
        return v;
    }

    // Least-squares line logM = slope * log(1/r) + b.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t j = 0; j < n; ++j) {
        sx += x[j];
        sy += logM[j];
        sxx += x[j] * x[j];
        sxy += x[j] * logM[j];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double inter = (sy - slope * sx) / n;
    double resid = 0;
    for (size_t j = 0; j < n; ++j)
        resid = std::max(resid, std::abs(logM[j] - (slope * x[j] + inter)));
    v.fitted_slope = slope;
    v.fit_residual = resid;

    if (slope <= opt.slope_tol && resid <= opt.residual_tol) {
        v.kind = SingularityVerdict::Kind::Removable;
        return v;
    }
    double rounded = std::round(slope);
    if (rounded >= 1.0 && std::abs(slope - rounded) <= opt.slope_tol &&
        resid <= opt.residual_tol) {
        v.kind = SingularityVerdict::Kind::Pole;
        v.pole_order = static_cast<int>(rounded);
        return v;
    }
    v.kind = SingularityVerdict::Kind::Inconclusive;
    return v;
}

ExprPtr schwarzian(const ExprPtr& g) {
    ExprPtr g1 = differentiate(g);
    cplx c;
    if (is_constant(g1, &c) && c == cplx{0, 0})
        throw DegenerateMap("schwarzian of a constant map");
    ExprPtr g2 = differentiate(g1);
    ExprPtr q = div(g2, g1);
    return sub(differentiate(q), mul(constant({0.5, 0}), ipow(q, 2)));
}

}  // namespace forge
