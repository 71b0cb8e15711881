#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forge/ends.hpp"

using namespace forge;

namespace {

SurfaceModel affine_model(const char* F, const char* G) {
    SurfaceModel m;
    m.cls = SurfaceClass::ImproperAffine;
    m.affine = ImproperAffineData{parse_expr(F), parse_expr(G)};
    return m;
}

}  // namespace

TEST_CASE("complete affine end") {
    EndReport r = end_report(affine_model("1/z", "z"));
    CHECK(r.weakly_complete);
    CHECK(r.complete);
    CHECK(r.singular_compact);
    CHECK(r.end_punctured_type);
    CHECK(r.pole_orders.at("G_prime").kind ==
          SingularityVerdict::Kind::Removable);
    CHECK(theorem_consistency(r).pass);
}

TEST_CASE("incomplete affine end is not weakly complete either") {
    EndReport r = end_report(affine_model("0", "z"));
    CHECK_FALSE(r.weakly_complete);
    CHECK_FALSE(r.complete);
    CHECK(r.singular_curve.empty());
    CHECK(theorem_consistency(r).pass);
}

TEST_CASE("maxface end with a double pole is complete") {
    SurfaceModel m;
    m.cls = SurfaceClass::Maxface;
    m.maxface = MaxfaceData{parse_expr("(z + 1/z)/2"), parse_expr("(z - 1/z)/2i"),
                            parse_expr("log(z)"), parse_expr("z"),
                            parse_expr("1/z^2")};
    EndReport r = end_report(m);
    CHECK(r.weakly_complete);
    CHECK(r.complete);
    CHECK(r.pole_orders.at("omega").pole_order == 2);
    CHECK(theorem_consistency(r).pass);
}

TEST_CASE("flat front end with role exchange") {
    SurfaceModel m;
    m.cls = SurfaceClass::FlatFront;
    m.flat_front = FlatFrontData{0.0, parse_expr("1/z^2"), 0.0, parse_expr("2")};
    EndReport r = end_report(m);
    CHECK(r.complete);
    CHECK(r.fitted_constants.at("roles_exchanged") == 1.0);
    CHECK(r.pole_orders.at("omega_hat").pole_order == 2);
}

TEST_CASE("cmc1 parabolic end diverges logarithmically") {
    SurfaceModel m;
    m.cls = SurfaceClass::Cmc1Parabolic;
    m.parabolic_h = parse_expr("0");
    m.parabolic_epsilon = 1;
    EndReport r = end_report(m);
    CHECK(r.weakly_complete);
    CHECK(r.complete);
    CHECK(r.weak.model == GrowthModel::LogPower);
    CHECK(r.fitted_constants.at("c1_stable") == 1.0);
    CHECK(r.fitted_constants.at("c2_stable") == 1.0);
    CHECK(r.fitted_constants.at("identity_residual") < 1e-9);
    CHECK(r.pole_orders.at("Q").pole_order == 2);
    CHECK(theorem_consistency(r).pass);
}

TEST_CASE("flat s3 counterexample: weakly complete, not complete, exempt") {
    SurfaceModel m;
    m.cls = SurfaceClass::FlatS3;
    m.flat_s3 = flat_s3_counterexample();
    EndReport r = end_report(m);
    CHECK(r.weakly_complete);
    CHECK_FALSE(r.complete);
    CHECK(r.singular_compact);
    CHECK(r.exempt_from_equivalence);
    CHECK_FALSE(r.end_punctured_type);
    CHECK(theorem_consistency(r).pass);
    // the finite length is sqrt(pi)/2 by the Gaussian integral
    CHECK(std::abs(r.first.finite_value - std::sqrt(M_PI) / 2.0) < 1e-6);
}

TEST_CASE("consistency detects a fabricated violation") {
    EndReport r = end_report(affine_model("1/z", "z"));
    REQUIRE(r.complete);
    EndReport broken = r;
    broken.weakly_complete = false;  // complete but not weakly complete
    CHECK_FALSE(theorem_consistency(broken).pass);
    EndReport broken2 = r;
    broken2.complete = false;  // converse violated on a punctured end
    CHECK_FALSE(theorem_consistency(broken2).pass);
    broken2.end_punctured_type = false;  // hypothesis dropped: no claim
    CHECK(theorem_consistency(broken2).pass);
}

TEST_CASE("picard premise classifier") {
    PicardReport bounded = picard_premise_check(parse_expr("z/(1 + z)"));
    CHECK(bounded.premise_holds);
    CHECK(bounded.growth == "bounded");

    PicardReport pole = picard_premise_check(parse_expr("1/z^3"));
    CHECK(pole.premise_holds);
    CHECK(pole.growth == "pole-bounded");
    CHECK(pole.classifier.pole_order == 3);

    PicardReport wild = picard_premise_check(parse_expr("exp(1/z)"));
    CHECK_FALSE(wild.premise_holds);
    CHECK(wild.growth == "superpolynomial");
}
