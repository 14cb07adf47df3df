#include <catch2/catch_amalgamated.hpp>

#include "commop.hpp"
#include "test_util.hpp"

using namespace commop;

namespace {

DiffOp dixmier_L(long alpha_value) {
    FamilySpec spec{Family::dixmier_r2};
    spec.alpha = CoefPoly::constant(ParamSet{}, rat(alpha_value));
    return build(spec).L;
}

DiffOp dixmier_M(long alpha_value) {
    FamilySpec spec{Family::dixmier_r2};
    spec.alpha = CoefPoly::constant(ParamSet{}, rat(alpha_value));
    return *build(spec).M;
}

}  // namespace

TEST_CASE("constant-coefficient centralizer of D^2") {
    ParamSet none;
    DiffOp L = DiffOp::derivative(none, 2);
    CentralizerBasis basis = solve_centralizer(L, {.order = 3});
    CHECK(basis.dimension() == 4);
    for (const DiffOp& e : basis.elements) CHECK(op_commutator(L, e).is_zero());
    // span{1, D, D^2, D^3}
    for (unsigned i = 0; i <= 3; ++i)
        CHECK(testutil::in_span(basis.elements, DiffOp::derivative(none, i)));
    CHECK(select_M(basis, L, 3) == DiffOp::derivative(none, 3));
}

TEST_CASE("Dixmier rank 2 centralizer at order 6") {
    DiffOp L = dixmier_L(1), M = dixmier_M(1);
    CentralizerBasis basis = solve_centralizer(L, {.order = 6});
    CHECK(basis.dimension() == 3);  // 1, L, M
    CHECK(testutil::in_span(basis.elements, DiffOp::identity(ParamSet{})));
    CHECK(testutil::in_span(basis.elements, L));
    CHECK(testutil::in_span(basis.elements, M));

    SECTION("select_M recovers the explicit companion exactly") {
        CHECK(select_M(basis, L, 6) == M);
    }
    SECTION("select_M is idempotent") {
        CentralizerBasis cooked;
        cooked.elements = {DiffOp::identity(ParamSet{}), L, M};
        CHECK(select_M(cooked, L, 6) == M);
        // also from a shuffled combination
        CentralizerBasis mixed;
        mixed.elements = {M + Rat(3) * L - Rat(7) * DiffOp::identity(ParamSet{})};
        CHECK(select_M(mixed, L, 6) == M);
    }
}

TEST_CASE("degree-bound heuristic covers the Dixmier companion") {
    DiffOp L = dixmier_L(1);
    // companion coefficients reach x-degree 9; the heuristic must not truncate
    CHECK(default_degree_bound(L, 6) >= 9);
}

TEST_CASE("escalation reports a cap hit when no companion of the order exists") {
    DiffOp L = dixmier_L(1);
    // the centralizer has elements only at orders 0, 4, 6, 8, ...; order 5 is empty
    AnsatzSpec spec{.order = 5, .degree_bound = std::nullopt, .degree_cap = 16};
    CHECK_THROWS_AS(solve_centralizer(L, spec), std::domain_error);
}

TEST_CASE("input validation") {
    ParamSet pa({"alpha"});
    DiffOp symbolic = build({Family::dixmier_r2}).L;
    CHECK_THROWS_AS(solve_centralizer(symbolic, {.order = 6}), std::invalid_argument);
    CHECK_THROWS_AS(solve_centralizer(DiffOp::zero(pa), {.order = 2}), std::invalid_argument);

    DiffOp L = dixmier_L(1);
    CentralizerBasis basis = solve_centralizer(L, {.order = 6});
    // 2m/order(L) must be odd: order 8 elements (L^2) are not companions
    CHECK_THROWS_AS(select_M(basis, L, 8), std::invalid_argument);
    CHECK_THROWS_AS(select_M(basis, L, 5), std::invalid_argument);
}

TEST_CASE("select_M fixes the sign to a positive leading coefficient") {
    ParamSet none;
    DiffOp L = DiffOp::derivative(none, 2);
    CentralizerBasis flipped;
    flipped.elements = {Rat(-3) * DiffOp::derivative(none, 3)};
    DiffOp M = select_M(flipped, L, 3);
    CHECK(M == DiffOp::derivative(none, 3));
    CHECK(sgn(M.leading_coeff().rational_value()) > 0);
}
