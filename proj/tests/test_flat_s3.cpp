#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forge/curvature.hpp"
#include "forge/flat_s3.hpp"

using namespace forge;

TEST_CASE("angle function of the counterexample") {
    FlatS3Data d = flat_s3_counterexample();
    // omega(0,0) = 2 arcsin(1/2) = pi/3
    CHECK(d.omega(0, 0) == doctest::Approx(M_PI / 3).epsilon(1e-14));
    // derivative oracle by central differences
    for (double t : {0.3, -1.1, 2.0}) {
        double h = 1e-6;
        double num = (d.phi(t + h) - d.phi(t - h)) / (2 * h);
        CHECK(d.dphi(t) == doctest::Approx(num).epsilon(1e-7));
    }
}

TEST_CASE("pointwise identity sqrt(2(1-cos omega)) = exp(-t^2) on the diagonal") {
    FlatS3Data d = flat_s3_counterexample();
    // oracle chain: along (t,-t), sin(omega/2) = e^{-t^2}/2 by the sum formula
    // only when phi(t) = psi(-t); here both profiles are even, so
    // omega(t,-t) = 2 arcsin(e^{-t^2}/2) and 2 sin(omega/2) = e^{-t^2}
    for (int i = 0; i < 1000; ++i) {
        double t = -4.0 + 8.0 * i / 999.0;
        double w = d.omega(t, -t);
        // sqrt(2(1-cos w)) == 2 sin(w/2); the half-angle form avoids the
        // cancellation in 1 - cos w for small w
        double lhs = 2.0 * std::sin(0.5 * w);
        CHECK(std::abs(lhs - std::exp(-t * t)) <= 1e-12);
    }
}

TEST_CASE("forms of the constant-angle front") {
    FlatS3Data d = flat_s3_constant(M_PI / 2);
    FlatS3Forms f = flat_s3_forms(d, -1, 1, -1, 1);
    CHECK(f.I.F(0.3, 0.4) == doctest::Approx(0.0));
    CHECK(f.II.F(0.3, 0.4) == doctest::Approx(1.0));
    CHECK(f.III.E(0.3, 0.4) == doctest::Approx(1.0));
    CHECK(f.det_ratio(0.1, -0.2) == doctest::Approx(-1.0).epsilon(1e-14));
    // I + III doubles the flat metric here
    CHECK(f.I_plus_III.E(0, 0) == doctest::Approx(2.0));
    CHECK(std::abs(f.I_plus_III.F(0, 0)) < 1e-14);
}

TEST_CASE("forms validate the angle range") {
    FlatS3Data d = flat_s3_constant(0.1);
    d.psi = [](double) { return -0.2; };  // pushes omega below 0
    CHECK_THROWS_AS(flat_s3_forms(d, -1, 1, -1, 1), RangeViolation);
}

TEST_CASE("frame integration reproduces the Clifford torus") {
    // constant omega = pi/2: f(u,v) = (cos u, sin u, 0, 0)/? -- the frame
    // construction gives a flat torus; check unit norm and the induced metric
    FlatS3Data d = flat_s3_constant(M_PI / 2);
    FlatS3IntegrateOptions opt;
    opt.step = 0.02;
    SurfaceMesh m = flat_s3_integrate(d, 0, 1, 0, 1, opt);
    for (int i = 0; i <= m.nu; i += 10)
        for (int j = 0; j <= m.nv; j += 10) {
            const auto& f = m.at(i, j);
            double n2 = f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3];
            CHECK(std::abs(std::sqrt(n2) - 1.0) < 1e-8);
        }
    for (int i = 5; i < m.nu - 5; i += 10)
        for (int j = 5; j < m.nv - 5; j += 10) {
            auto efg = mesh_induced_efg(m, i, j);
            CHECK(std::abs(efg[0] - 1.0) < 1e-4);
            CHECK(std::abs(efg[1] - 0.0) < 1e-4);
            CHECK(std::abs(efg[2] - 1.0) < 1e-4);
        }
}

TEST_CASE("counterexample integration: norms, induced metric, flatness") {
    FlatS3Data d = flat_s3_counterexample();
    FlatS3IntegrateOptions opt;
    opt.step = 0.01;
    SurfaceMesh m = flat_s3_integrate(d, -1, 1, -1, 1, opt);
    double worst_norm = 0.0, worst_metric = 0.0;
    for (int i = 2; i < m.nu - 2; i += 7)
        for (int j = 2; j < m.nv - 2; j += 7) {
            const auto& f = m.at(i, j);
            double n = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] +
                                 f[3] * f[3]);
            worst_norm = std::max(worst_norm, std::abs(n - 1.0));
            double u = m.u0 + i * m.step, v = m.v0 + j * m.step;
            auto efg = mesh_induced_efg(m, i, j);
            double c = std::cos(d.omega(u, v));
            worst_metric = std::max({worst_metric, std::abs(efg[0] - 1.0),
                                     std::abs(efg[1] - c), std::abs(efg[2] - 1.0)});
        }
    CHECK(worst_norm < 1e-6);
    CHECK(worst_metric < 1e-4);

    // intrinsic curvature of I vanishes
    FlatS3Forms forms = flat_s3_forms(d, -1, 1, -1, 1);
    for (double u : {-0.5, 0.2})
        for (double v : {0.1, 0.6})
            CHECK(std::abs(gauss_curvature(forms.I, u, v)) < 1e-4);
}

TEST_CASE("blowup guard triggers on corrupted structure data") {
    FlatS3Data d = flat_s3_constant(M_PI / 2);
    d.dphi = [](double) { return 1e8; };  // inconsistent with phi
    CHECK_THROWS_AS(flat_s3_integrate(d, 0, 1, 0, 1), forge::Error);
}
