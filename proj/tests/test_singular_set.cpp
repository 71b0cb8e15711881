#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forge/singular_set.hpp"

using namespace forge;

TEST_CASE("extracts the unit circle accurately") {
    ExtractOptions opt;
    opt.grid_n = 512;
    SingularCurve c = singular_set_extract(
        [](double x, double y) { return std::hypot(x, y) - 1.0; }, -1.5, 1.5,
        -1.5, 1.5, opt);
    REQUIRE_FALSE(c.empty());
    double worst = 0.0;
    size_t total = 0;
    for (const auto& line : c.polylines)
        for (const auto& p : line) {
            worst = std::max(worst, std::abs(std::hypot(p[0], p[1]) - 1.0));
            ++total;
        }
    CHECK(total > 100);
    CHECK(worst < 1e-3);
}

TEST_CASE("no zero set gives an empty curve") {
    ExtractOptions opt;
    opt.grid_n = 64;
    SingularCurve c = singular_set_extract(
        [](double x, double y) { return 1.0 + x * x + y * y; }, -1, 1, -1, 1,
        opt);
    CHECK(c.empty());
    CHECK(singular_set_compact(c, 0.5));
}

TEST_CASE("compactness check near the origin") {
    ExtractOptions opt;
    opt.grid_n = 128;
    // spokes through the origin: y = 0 line
    SingularCurve c = singular_set_extract(
        [](double, double y) { return y; }, -1, 1, -1, 1, opt);
    CHECK_FALSE(singular_set_compact(c, 0.1));
    // ring at radius 0.7 stays clear of r < 0.5
    SingularCurve ring = singular_set_extract(
        [](double x, double y) { return std::hypot(x, y) - 0.7; }, -1, 1, -1, 1,
        opt);
    CHECK(singular_set_compact(ring, 0.5));
    CHECK_FALSE(singular_set_compact(ring, 0.8));
}

TEST_CASE("puncture hole masks the indicator near 0") {
    ExtractOptions opt;
    opt.grid_n = 128;
    opt.puncture_radius = 0.2;
    // indicator undefined at the origin; the hole keeps extraction clean
    SingularCurve c = singular_set_extract(
        [](double x, double y) {
            double r = std::hypot(x, y);
            return 1.0 / r - 2.0;  // circle at r = 0.5
        },
        -1, 1, -1, 1, opt);
    REQUIRE_FALSE(c.empty());
    for (const auto& line : c.polylines)
        for (const auto& p : line)
            CHECK(std::abs(std::hypot(p[0], p[1]) - 0.5) < 5e-3);
}

TEST_CASE("refinement check flags under-resolved topology") {
    ExtractOptions opt;
    opt.grid_n = 8;
    opt.refine_check = true;
    // two tiny circles that an 8x8 grid cannot separate
    auto ind = [](double x, double y) {
        double a = std::hypot(x - 0.4, y) - 0.05;
        double b = std::hypot(x + 0.4, y) - 0.05;
        return std::min(a, b);
    };
    CHECK_THROWS_AS(singular_set_extract(ind, -1, 1, -1, 1, opt), GridTooCoarse);
}

TEST_CASE("polylines chain into few components") {
    ExtractOptions opt;
    opt.grid_n = 256;
    SingularCurve c = singular_set_extract(
        [](double x, double y) { return std::hypot(x, y) - 1.0; }, -1.5, 1.5,
        -1.5, 1.5, opt);
    CHECK(c.polylines.size() <= 2);  // closed loop, possibly split once
}
