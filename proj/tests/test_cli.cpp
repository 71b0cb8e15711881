#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "forge/runner.hpp"
#include "json.hpp"

using namespace forge;

namespace {

const char* kAffineText =
    "id = t-affine\n"
    "class = affine\n"
    "F = 1/z\n"
    "G = z\n"
    "r0 = 0.5\n";

}  // namespace

TEST_CASE("scenario parsing and defaults") {
    Scenario sc = parse_scenario(kAffineText);
    CHECK(sc.id == "t-affine");
    CHECK(sc.model.cls == SurfaceClass::ImproperAffine);
    CHECK(sc.cfg.r0 == 0.5);
    CHECK(sc.cfg.n_rays == 8);
    CHECK(sc.model.end_punctured_type);
}

TEST_CASE("scenario errors carry positions") {
    try {
        parse_scenario("class = affine\nF = 1/z\nG = z +* 2\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 1);
    }
    try {
        parse_scenario("class = affine\nF = 1/z\nG = z\nbogus_key = 1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 4);
    }
    CHECK_THROWS_AS(parse_scenario("F = 1/z\nG = z\n"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("class = affine\nF = 1/z\nG = z\nr0 = -1\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_scenario("class = nope\n"), ConfigError);
    CHECK_THROWS_AS(
        parse_scenario("class = flat-s3\nprofile = constant:7\n"),
        ConfigError);
}

TEST_CASE("overrides replace file values") {
    Scenario sc = parse_scenario(kAffineText);
    ScenarioOverrides ov;
    ov.rays = 12;
    ov.r0 = 0.25;
    ov.tol = 1e-7;
    apply_overrides(sc, ov);
    CHECK(sc.cfg.n_rays == 12);
    CHECK(sc.cfg.r0 == 0.25);
    CHECK(sc.cfg.length.tol == 1e-7);
    CHECK(sc.cfg.grid_n == 256);  // untouched
}

TEST_CASE("run produces a report with evidence tables") {
    RunOutcome out = run_scenario(parse_scenario(kAffineText));
    CHECK(out.consistency.pass);
    auto j = nlohmann::json::parse(out.json);
    CHECK(j["complete"] == true);
    CHECK(j["weak_metric"] == "dtau2");
    CHECK(j["classifiers"]["G_prime"]["kind"] == "removable");
    // CSV: header plus 8 rays x 8 truncations
    std::istringstream csv(out.csv);
    std::string line;
    std::getline(csv, line);
    CHECK(line == "ray_angle,epsilon,partial_length");
    int rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 64);
}

TEST_CASE("reports are reproducible") {
    Scenario sc = parse_scenario(kAffineText);
    RunOutcome a = run_scenario(sc);
    RunOutcome b = run_scenario(sc);
    CHECK(a.json == b.json);
    CHECK(a.csv == b.csv);
}

TEST_CASE("presets run and pass") {
    for (const char* id : {"s3-counterexample", "affine-claim", "parabolic-end",
                           "completeness-lemma-demo"}) {
        CAPTURE(id);
        RunOutcome out = reproduce(id);
        CHECK(out.consistency.pass);
    }
    CHECK_THROWS_AS(reproduce("no-such-preset"), ConfigError);
}

TEST_CASE("exit code mapping") {
    CHECK(exit_code_for(ConfigError("x", 1, 1)) == 2);
    CHECK(exit_code_for(QuadratureFailure("x")) == 3);
    CHECK(exit_code_for(ExactnessViolation("x", 1.0)) == 3);
    CHECK(exit_code_for(MetricDegenerate("x")) == 3);
}

TEST_CASE("obj export writes a well-formed mesh") {
    Scenario sc = parse_scenario(kAffineText);
    std::string path = "t_affine_mesh.obj";
    write_obj(sc, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    int verts = 0, faces = 0;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++verts;
        if (line.rfind("f ", 0) == 0) ++faces;
    }
    CHECK(verts > 1000);
    CHECK(faces > 2000);
    in.close();
    std::remove(path.c_str());

    Scenario ff = parse_scenario(
        "class = flat-front\nomega_hat = 1/z^2\nrho_hat = 0.5\n");
    CHECK_THROWS_AS(write_obj(ff, "unused.obj"), ConfigError);
}
