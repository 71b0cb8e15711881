#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forge/curvature.hpp"

using namespace forge;

TEST_CASE("euclidean plane has zero curvature") {
    ConformalMetric flat;
    flat.terms.push_back({0.0, 0, constant({1, 0})});
    for (cplx p : {cplx{0.2, 0.1}, cplx{-0.5, 0.4}, cplx{0.0, -0.7}})
        CHECK(std::abs(gauss_curvature(flat, p)) < 1e-8);
}

TEST_CASE("poincare disk has curvature -1") {
    ConformalMetric poincare;
    poincare.terms.push_back({0.0, 0, constant({1, 0})});
    poincare.factor = [](cplx z) {
        double t = 1.0 - std::norm(z);
        return 4.0 / (t * t);
    };
    for (cplx p : {cplx{0.1, 0.0}, cplx{0.3, -0.2}, cplx{-0.4, 0.35}})
        CHECK(std::abs(gauss_curvature(poincare, p) + 1.0) < 1e-6);
}

TEST_CASE("round sphere has curvature +1") {
    // stereographic metric 4/(1+|z|^2)^2 |dz|^2
    ConformalMetric sphere;
    sphere.terms.push_back({0.0, 0, constant({1, 0})});
    sphere.factor = [](cplx z) {
        double t = 1.0 + std::norm(z);
        return 4.0 / (t * t);
    };
    for (cplx p : {cplx{0.0, 0.0}, cplx{0.6, -0.3}, cplx{-1.2, 0.8}})
        CHECK(std::abs(gauss_curvature(sphere, p) - 1.0) < 1e-6);
}

TEST_CASE("brioschi formula on explicit metrics") {
    // flat metric in polar-like coordinates: E=1, F=0, G=u^2 has K=0
    RiemannMetric2 polar;
    polar.E = [](double, double) { return 1.0; };
    polar.F = [](double, double) { return 0.0; };
    polar.G = [](double u, double) { return u * u; };
    CHECK(std::abs(gauss_curvature(polar, 1.3, 0.4)) < 1e-7);

    // unit sphere chart: E=1, F=0, G=sin^2 u has K=1
    RiemannMetric2 sphere;
    sphere.E = [](double, double) { return 1.0; };
    sphere.F = [](double, double) { return 0.0; };
    sphere.G = [](double u, double) { return std::sin(u) * std::sin(u); };
    CHECK(std::abs(gauss_curvature(sphere, 1.0, 0.2) - 1.0) < 1e-6);

    // hyperbolic chart: E=1, F=0, G=sinh^2 u has K=-1
    RiemannMetric2 hyp;
    hyp.E = [](double, double) { return 1.0; };
    hyp.F = [](double, double) { return 0.0; };
    hyp.G = [](double u, double) { return std::sinh(u) * std::sinh(u); };
    CHECK(std::abs(gauss_curvature(hyp, 0.8, -0.3) + 1.0) < 1e-6);
}

TEST_CASE("brioschi handles a metric with cross terms") {
    // pullback of the plane by (u, v) -> (u, v + u^2/2):
    // E = 1 + u^2, F = u, G = 1, flat by construction
    RiemannMetric2 m;
    m.E = [](double u, double) { return 1.0 + u * u; };
    m.F = [](double u, double) { return u; };
    m.G = [](double, double) { return 1.0; };
    CHECK(std::abs(gauss_curvature(m, 0.7, 0.1)) < 1e-6);
}

TEST_CASE("total curvature of the flat plane vanishes") {
    ConformalMetric flat;
    flat.terms.push_back({0.0, 0, constant({1, 0})});
    auto res = total_curvature(flat, 0.5, 4);
    CHECK(res.finite_indicator);
    CHECK(std::abs(res.last) < 1e-4);
}

TEST_CASE("total curvature of the sphere cap is the solid angle") {
    ConformalMetric sphere;
    sphere.terms.push_back({0.0, 0, constant({1, 0})});
    sphere.factor = [](cplx z) {
        double t = 1.0 + std::norm(z);
        return 4.0 / (t * t);
    };
    // area of the image of |z| <= r0 under inverse stereographic projection:
    // 4 pi r0^2/(1+r0^2); |K| = 1 so total curvature equals the area
    double r0 = 0.5;
    double expect = 4.0 * M_PI * r0 * r0 / (1.0 + r0 * r0);
    auto res = total_curvature(sphere, r0, 9);
    CHECK(res.finite_indicator);
    CHECK(std::abs(res.last - expect) < 2e-3 * expect);
}
