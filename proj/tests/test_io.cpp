#include <catch2/catch_amalgamated.hpp>

#include "commop.hpp"
#include "commop/io.hpp"
#include "test_util.hpp"

using namespace commop;
using testutil::Rng;

TEST_CASE("document round trip for every family") {
    std::vector<FamilySpec> specs;
    specs.push_back({Family::dixmier_r2});
    specs.push_back({Family::dixmier_r3});
    {
        FamilySpec s{Family::mironov_r2};
        s.g = 2;
        specs.push_back(s);
    }
    {
        FamilySpec s{Family::mokhov_2k};
        s.k = 2;
        s.g = 2;
        specs.push_back(s);
    }
    {
        FamilySpec s{Family::cheb_canonical};
        s.r = 4;
        s.g = 2;
        specs.push_back(s);
    }
    {
        FamilySpec s{Family::cheb_z};
        s.r = 3;
        specs.push_back(s);
    }
    for (const FamilySpec& spec : specs) {
        DiffOp L = build(spec).L;
        CHECK(operator_from_json(operator_to_json(L)) == L);
    }
}

TEST_CASE("document round trip on randomized operators") {
    Rng rng(555);
    ParamSet ps({"a", "beta"});
    for (int iter = 0; iter < 100; ++iter) {
        DiffOp op = testutil::random_op(rng, ps, 4, 5, 2);
        CHECK(operator_from_json(operator_to_json(op)) == op);
    }
}

TEST_CASE("document round trip over randomized family specs") {
    Rng rng(808);
    std::uniform_int_distribution<unsigned> pick_r(1, 5), pick_g(1, 3), pick_k(2, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    const Family families[] = {Family::dixmier_r2, Family::dixmier_r3, Family::mironov_r2,
                               Family::mironov_r3, Family::mokhov_2k, Family::mokhov_3k,
                               Family::cheb_z,     Family::cheb_canonical};
    for (int iter = 0; iter < 60; ++iter) {
        FamilySpec spec;
        spec.family = families[iter % 8];
        spec.r = pick_r(rng);
        spec.g = pick_g(rng);
        spec.k = pick_k(rng);
        if (coin(rng)) spec.a = CoefPoly::constant(ParamSet{}, testutil::random_nonzero_rat(rng));
        if (coin(rng)) spec.b = CoefPoly::constant(ParamSet{}, testutil::random_rat(rng));
        if (coin(rng)) spec.alpha = CoefPoly::constant(ParamSet{}, testutil::random_rat(rng));
        DiffOp op = build(spec).L;
        CHECK(operator_from_json(operator_to_json(op)) == op);
    }
}

TEST_CASE("document validation") {
    nlohmann::json doc = operator_to_json(build({Family::dixmier_r2}).L);
    nlohmann::json bad = doc;
    bad["format"] = "something-else";
    CHECK_THROWS_AS(operator_from_json(bad), std::invalid_argument);
    bad = doc;
    bad["version"] = 99;
    CHECK_THROWS_AS(operator_from_json(bad), std::invalid_argument);
    bad = doc;
    bad["terms"][0]["coeff"][0]["p"] = {{"zeta", 1}};
    CHECK_THROWS_AS(operator_from_json(bad), std::invalid_argument);
}

TEST_CASE("expression parser") {
    SECTION("the Dixmier operator as an expression") {
        DiffOp parsed = parse_operator("(D^2 + x^3 + alpha)^2 + 2*x");
        CHECK(parsed == build({Family::dixmier_r2}).L);
    }
    SECTION("normal ordering happens during parsing") {
        CHECK(parse_operator("D*x") == parse_operator("x*D + 1"));
    }
    SECTION("rationals and division") {
        CHECK(parse_poly("5/16") == CoefPoly::constant(ParamSet{}, rat(5, 16)));
        CHECK(parse_poly("(1/2)*x - x/2").is_zero());
        CHECK(parse_operator("-D^2") == -DiffOp::derivative(ParamSet{}, 2));
    }
    SECTION("errors") {
        CHECK_THROWS_AS(parse_operator("2x"), std::invalid_argument);       // no juxtaposition
        CHECK_THROWS_AS(parse_operator("x/(x+1)"), std::invalid_argument);  // non-rational divisor
        CHECK_THROWS_AS(parse_operator("x +"), std::invalid_argument);
        CHECK_THROWS_AS(parse_operator("y", ParamSet({"a"})), std::invalid_argument);
        CHECK_THROWS_AS(parse_poly("D + x"), std::invalid_argument);  // polynomial context
    }
    SECTION("scanned parameters are sorted and deduped") {
        auto names = scan_parameter_names("beta*x + alpha*D + beta");
        CHECK(names == std::vector<std::string>{"alpha", "beta"});
    }
}

TEST_CASE("Q-polynomial extraction") {
    QPoly q = qpoly_from_poly(parse_poly("lambda + x"));
    CHECK(q.genus == 1);
    CHECK(q.q[0] == CoefPoly::x(ParamSet{}));
    QPoly q2 = qpoly_from_poly(parse_poly("lambda^2 + x*lambda + 3"));
    CHECK(q2.genus == 2);
    CHECK_THROWS_AS(qpoly_from_poly(parse_poly("2*lambda + x")), std::invalid_argument);
    CHECK_THROWS_AS(qpoly_from_poly(parse_poly("x + 1")), std::invalid_argument);
}

TEST_CASE("curve parsing and rendering") {
    HyperellipticCurve c = parse_curve("0,0,-alpha");
    CHECK(c.genus == 1);
    CHECK(c.a[0] == -CoefPoly::param(ParamSet({"alpha"}), "alpha"));
    CHECK(c.a[1].is_zero());
    CHECK(c.a[2].is_zero());
    CHECK(curve_tuple_str(c) == "(0, 0, -alpha)");
    CHECK(c.str() == "lambda^3 + (-alpha)");

    CHECK_THROWS_AS(parse_curve("1,2"), std::invalid_argument);      // even count
    CHECK_THROWS_AS(parse_curve("0,0,x"), std::invalid_argument);    // not x-free
}

TEST_CASE("report facts appear in both renderings") {
    RunReport report("demo");
    report.fact("alpha", 1, "alpha = 1");
    report.fact("ok", true, "everything checks out");
    CHECK(report.data["alpha"] == 1);
    CHECK(report.data["ok"] == true);
    CHECK(report.lines.size() == 2);
    std::ostringstream text, json;
    report.print(text, false);
    report.print(json, true);
    CHECK(text.str().find("alpha = 1") != std::string::npos);
    CHECK(nlohmann::json::parse(json.str())["ok"] == true);
}
