#include "forge/curvature.hpp"

#include <cmath>

namespace forge {

namespace {

double log_density(const ConformalMetric& m, cplx z) {
    double d = m.density(z);
    if (d <= 0.0) throw DegenerateMetric("non-positive density at probe point");
    return std::log(d);
}

double laplacian_log_density(const ConformalMetric& m, cplx p, double h) {
    double c = log_density(m, p);
    double xp = log_density(m, p + cplx{h, 0});
    double xm = log_density(m, p - cplx{h, 0});
    double yp = log_density(m, p + cplx{0, h});
    double ym = log_density(m, p - cplx{0, h});
    return (xp + xm + yp + ym - 4.0 * c) / (h * h);
}

}  // namespace

double gauss_curvature(const ConformalMetric& m, cplx p, double h) {
    if (h < 1e-7) throw StepUnderflow("curvature step too small");
    double d = m.density(p);
    if (d <= 0.0) throw DegenerateMetric("non-positive density at probe point");
    double lap_h = laplacian_log_density(m, p, h);
    double lap_h2 = laplacian_log_density(m, p, h / 2);
    double lap = (4.0 * lap_h2 - lap_h) / 3.0;
    return -lap / (2.0 * d);
}

namespace {

struct Efg {
    double E, F, G;
};

double brioschi(const RiemannMetric2& m, double u, double v, double h) {
    auto at = [&](double uu, double vv) -> Efg {
        return {m.E(uu, vv), m.F(uu, vv), m.G(uu, vv)};
    };
    Efg c = at(u, v);
    Efg up = at(u + h, v), um = at(u - h, v);
    Efg vp = at(u, v + h), vm = at(u, v - h);
    Efg upvp = at(u + h, v + h), upvm = at(u + h, v - h);
    Efg umvp = at(u - h, v + h), umvm = at(u - h, v - h);

    double E_u = (up.E - um.E) / (2 * h), E_v = (vp.E - vm.E) / (2 * h);
    double F_u = (up.F - um.F) / (2 * h), F_v = (vp.F - vm.F) / (2 * h);
    double G_u = (up.G - um.G) / (2 * h), G_v = (vp.G - vm.G) / (2 * h);
    double E_vv = (vp.E - 2 * c.E + vm.E) / (h * h);
    double G_uu = (up.G - 2 * c.G + um.G) / (h * h);
    double F_uv = (upvp.F - upvm.F - umvp.F + umvm.F) / (4 * h * h);

    double W = c.E * c.G - c.F * c.F;
    if (W <= 0.0) throw DegenerateMetric("metric not positive definite");

    // det [[a11, .5E_u, F_u-.5E_v],[F_v-.5G_u, E, F],[.5G_v, F, G]]
    // minus det [[0, .5E_v, .5G_u],[.5E_v, E, F],[.5G_u, F, G]]
    double a11 = -0.5 * E_vv + F_uv - 0.5 * G_uu;
    double detA = a11 * (c.E * c.G - c.F * c.F)
                - 0.5 * E_u * ((F_v - 0.5 * G_u) * c.G - c.F * 0.5 * G_v)
                + (F_u - 0.5 * E_v) * ((F_v - 0.5 * G_u) * c.F - c.E * 0.5 * G_v);
    double detB = -0.5 * E_v * (0.5 * E_v * c.G - c.F * 0.5 * G_u)
                + 0.5 * G_u * (0.5 * E_v * c.F - c.E * 0.5 * G_u);
    return (detA - detB) / (W * W);
}

}  // namespace

double gauss_curvature(const RiemannMetric2& m, double u, double v, double h) {
    if (h < 1e-7) throw StepUnderflow("curvature step too small");
    double k_h = brioschi(m, u, v, h);
    double k_h2 = brioschi(m, u, v, h / 2);
    return (4.0 * k_h2 - k_h) / 3.0;
}

TotalCurvatureResult total_curvature(const ConformalMetric& m, double r0,
                                     int n_shrink, double tol, int n_theta,
                                     int n_radial_per_decade) {
    TotalCurvatureResult out;
    double outer = r0;
    double eps = r0 / 2.0;
    double acc = 0.0;
    double hi = outer;
    for (int j = 0; j < n_shrink; ++j) {
        double lo = eps * std::pow(0.5, j);
        // integrate |K| D r dr dtheta over [lo, hi] x (-pi, pi] in s = log r
        double slo = std::log(lo), shi = std::log(hi);
        int ns = std::max(8, static_cast<int>(n_radial_per_decade * (shi - slo) /
                                              std::log(10.0)));
        double band = 0.0;
        for (int a = 0; a < ns; ++a) {
            double s = slo + (shi - slo) * (a + 0.5) / ns;
            double r = std::exp(s);
            double hstep = std::max(1e-6, 1e-2 * r);
            for (int b = 0; b < n_theta; ++b) {
                double theta = -M_PI + 2.0 * M_PI * (b + 0.5) / n_theta;
                cplx z = std::polar(r, theta);
                double K = gauss_curvature(m, z, hstep);
                band += std::abs(K) * m.density(z) * r * r;
            }
        }
        band *= (shi - slo) / ns * 2.0 * M_PI / n_theta;
        acc += band;
        out.table.push_back({lo, acc});
        hi = lo;
    }
    out.last = acc;
    if (out.table.size() >= 2) {
        double inc = out.table.back().value - out.table[out.table.size() - 2].value;
        out.finite_indicator = std::abs(inc) < tol;
    }
    return out;
}

}  // namespace forge
