#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "forge/expr.hpp"

using namespace forge;

namespace {

double rel_err(cplx a, cplx b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

std::vector<cplx> sample_points() {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> rad(0.1, 1.5);
    std::uniform_real_distribution<double> ang(-3.0, 3.0);
    std::vector<cplx> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(std::polar(rad(rng), ang(rng)));
    return pts;
}

}  // namespace

TEST_CASE("parse and evaluate basic forms") {
    auto pts = sample_points();
    struct Case {
        const char* text;
        cplx (*f)(cplx);
    };
    const Case cases[] = {
        {"z^2 + 3*z - 1", [](cplx z) { return z * z + 3.0 * z - 1.0; }},
        {"1/z", [](cplx z) { return 1.0 / z; }},
        {"exp(z)*log(z)", [](cplx z) { return std::exp(z) * std::log(z); }},
        {"(z + i)/(z - 2i)",
         [](cplx z) { return (z + cplx{0, 1}) / (z - cplx{0, 2}); }},
        {"pow(z, 0.5)", [](cplx z) { return std::exp(0.5 * std::log(z)); }},
        {"z^-3", [](cplx z) { return 1.0 / (z * z * z); }},
        {"-z + 2.5i*z^2", [](cplx z) { return -z + cplx{0, 2.5} * z * z; }},
    };
    for (const auto& c : cases) {
        ExprPtr e = parse_expr(c.text);
        for (cplx z : pts) {
            CAPTURE(c.text);
            CHECK(rel_err(eval(e, z), c.f(z)) < 1e-14);
        }
    }
}

TEST_CASE("parse errors carry a column") {
    try {
        parse_expr("z + * 2");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.column >= 5);
    }
    CHECK_THROWS_AS(parse_expr("z ^ 1.5"), ConfigError);
    CHECK_THROWS_AS(parse_expr("exp(z"), ConfigError);
    CHECK_THROWS_AS(parse_expr(""), ConfigError);
    CHECK_THROWS_AS(parse_expr("w + 1"), ConfigError);
}

TEST_CASE("round trip through to_string") {
    auto pts = sample_points();
    for (const char* text :
         {"z^2 + 3*z - 1", "1/z + exp(z)", "log(z)*pow(z, 0.25)",
          "(1 - z^2)/(1 + z^2)", "z^-5 * (2 + 3i)"}) {
        ExprPtr e = parse_expr(text);
        ExprPtr e2 = parse_expr(to_string(e));
        for (cplx z : pts) CHECK(rel_err(eval(e2, z), eval(e, z)) < 1e-13);
    }
}

TEST_CASE("domain errors at the puncture") {
    CHECK_THROWS_AS(eval(parse_expr("1/z"), cplx{0, 0}), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("log(z)"), cplx{0, 0}), DomainError);
    CHECK_THROWS_AS(eval(parse_expr("z^-2"), cplx{0, 0}), DomainError);
    CHECK_NOTHROW(eval(parse_expr("z^2 + 1"), cplx{0, 0}));
}

TEST_CASE("derivative against central differences") {
    auto pts = sample_points();
    for (const char* text :
         {"z^3 - 2*z", "exp(z)/z", "log(z)^2", "pow(z, 0.5)*exp(z)",
          "1/(1 + z^2)"}) {
        ExprPtr e = parse_expr(text);
        ExprPtr de = differentiate(e);
        const double h = 1e-5;
        for (cplx z : pts) {
            cplx numeric = (eval(e, z + h) - eval(e, z - h)) / (2.0 * h);
            CAPTURE(text);
            CHECK(rel_err(eval(de, z), numeric) < 1e-7);
        }
    }
}

TEST_CASE("differentiation is linear and satisfies the product rule") {
    auto pts = sample_points();
    ExprPtr f = parse_expr("z^2 + 1/z");
    ExprPtr g = parse_expr("exp(z) - z");
    ExprPtr sum_rule = differentiate(add(f, g));
    ExprPtr sum_parts = add(differentiate(f), differentiate(g));
    ExprPtr prod_rule = differentiate(mul(f, g));
    ExprPtr prod_parts =
        add(mul(differentiate(f), g), mul(f, differentiate(g)));
    for (cplx z : pts) {
        CHECK(rel_err(eval(sum_rule, z), eval(sum_parts, z)) < 1e-13);
        CHECK(rel_err(eval(prod_rule, z), eval(prod_parts, z)) < 1e-13);
    }
}

TEST_CASE("constant detection and folding") {
    cplx c;
    CHECK(is_constant(parse_expr("2 + 3i"), &c));
    CHECK(rel_err(c, cplx{2, 3}) < 1e-15);
    CHECK(is_constant(differentiate(parse_expr("5*z")), &c));
    CHECK(rel_err(c, cplx{5, 0}) < 1e-15);
    CHECK_FALSE(is_constant(parse_expr("z + 1")));
}

TEST_CASE("syntactic probes") {
    CHECK(contains_log(parse_expr("z*log(z)")));
    CHECK_FALSE(contains_log(parse_expr("z^2")));
    CHECK(contains_fractional_pow(parse_expr("pow(z, 0.5)")));
    CHECK_FALSE(contains_fractional_pow(parse_expr("z^3")));
    CHECK(mentions_z(parse_expr("exp(z)")));
    CHECK_FALSE(mentions_z(parse_expr("2 + 3i")));
}

TEST_CASE("integer powers are computed exactly for moderate exponents") {
    ExprPtr e = ipow(var_z(), 10);
    cplx z{1.0 + 1e-15, 0.0};
    CHECK(eval(e, z).real() == doctest::Approx(std::pow(z.real(), 10)).epsilon(1e-15));
    ExprPtr inv = ipow(var_z(), -4);
    cplx w{0.5, 0.5};
    CHECK(rel_err(eval(inv, w), 1.0 / (w * w * w * w)) < 1e-15);
}
