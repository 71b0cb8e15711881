#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "forge/contour.hpp"

using namespace forge;

TEST_CASE("laurent coefficients of a known expansion") {
    // e = 2/z^2 + 3 + (1+2i) z
    ExprPtr e = add(mul(constant({2, 0}), ipow(var_z(), -2)),
                    add(constant({3, 0}), mul(constant({1, 2}), var_z())));
    CHECK(std::abs(laurent_coefficient(e, -2, 0.3) - cplx{2, 0}) < 1e-10);
    CHECK(std::abs(laurent_coefficient(e, 0, 0.3) - cplx{3, 0}) < 1e-10);
    CHECK(std::abs(laurent_coefficient(e, 1, 0.3) - cplx{1, 2}) < 1e-10);
    CHECK(std::abs(laurent_coefficient(e, -1, 0.3)) < 1e-10);
    CHECK(std::abs(laurent_coefficient(e, 2, 0.3)) < 1e-10);
}

TEST_CASE("loop periods") {
    // residue theorem oracle: period of a/z is 2 pi i a
    cplx a{1.5, -0.5};
    ExprPtr e = mul(constant(a), recip(var_z()));
    cplx p = loop_period(e, 0.25);
    cplx expect = cplx{0, 2 * M_PI} * a;
    CHECK(std::abs(p - expect) < 1e-9);
    // holomorphic integrand has zero period
    CHECK(std::abs(loop_period(parse_expr("z^2 + 1"), 0.25)) < 1e-10);
    // 1/z^2 has an antiderivative, zero period as well
    CHECK(std::abs(loop_period(parse_expr("1/z^2"), 0.25)) < 1e-9);
}

TEST_CASE("pole classification for orders 1 to 5") {
    for (int k = 1; k <= 5; ++k) {
        // z^-k (1 + z/2): the factor perturbs the modulus but not the order
        ExprPtr e = mul(ipow(var_z(), -k),
                        add(constant({1, 0}), mul(constant({0.5, 0}), var_z())));
        SingularityVerdict v = classify_singularity(e);
        CAPTURE(k);
        CHECK(v.kind == SingularityVerdict::Kind::Pole);
        CHECK(v.pole_order == k);
        CHECK(std::abs(v.fitted_slope - k) <= 0.1);
    }
}

TEST_CASE("removable and essential singularities") {
    SingularityVerdict r = classify_singularity(parse_expr("exp(z)/(1 + z)"));
    CHECK(r.kind == SingularityVerdict::Kind::Removable);

    SingularityVerdict s = classify_singularity(parse_expr("exp(1/z)"));
    CHECK(s.kind == SingularityVerdict::Kind::Essential);
}

TEST_CASE("multivalued input is rejected, cancelling logs are not") {
    CHECK_THROWS_AS(classify_singularity(parse_expr("log(z)/z")),
                    MultivaluedError);
    CHECK_THROWS_AS(classify_singularity(parse_expr("pow(z, 0.5)")),
                    MultivaluedError);
    // |log branch jumps cancel in g''/g' type combinations: the Schwarzian of
    // a logarithm is single valued
    ExprPtr s = schwarzian(loge(var_z()));
    CHECK_NOTHROW(classify_singularity(s));
}

TEST_CASE("schwarzian oracles") {
    // S(z^2) = -3/(2 z^2)
    ExprPtr s1 = schwarzian(ipow(var_z(), 2));
    for (cplx z : {cplx{0.4, 0.1}, cplx{-0.3, 0.6}, cplx{1.1, -0.7}}) {
        cplx expect = -1.5 / (z * z);
        CHECK(std::abs(eval(s1, z) - expect) < 1e-9 * std::abs(expect));
    }
    // S(e^z) = -1/2
    ExprPtr s2 = schwarzian(expe(var_z()));
    for (cplx z : {cplx{0.2, 0.3}, cplx{-1.0, 0.5}})
        CHECK(std::abs(eval(s2, z) - cplx{-0.5, 0.0}) < 1e-9);
    // Moebius maps have vanishing Schwarzian
    ExprPtr moebius = div(add(mul(constant({2, 1}), var_z()), constant({0, 3})),
                          add(var_z(), constant({4, -1})));
    ExprPtr s3 = schwarzian(moebius);
    for (cplx z : {cplx{0.3, 0.2}, cplx{-0.8, 0.9}, cplx{1.5, -0.4}})
        CHECK(std::abs(eval(s3, z)) < 1e-10);
}

TEST_CASE("schwarzian rejects degenerate maps") {
    CHECK_THROWS_AS(schwarzian(constant({2, 0})), DegenerateMap);
}

TEST_CASE("single-valuedness probe across the slit") {
    CHECK_NOTHROW(require_single_valued_on_circle(parse_expr("1/z^3"), 0.3));
    CHECK_THROWS_AS(require_single_valued_on_circle(parse_expr("log(z)"), 0.3),
                    MultivaluedError);
}
