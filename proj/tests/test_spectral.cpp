#include <catch2/catch_amalgamated.hpp>

#include "commop.hpp"

using namespace commop;

namespace {
HyperellipticCurve curve_g1(const CoefPoly& a2, const CoefPoly& a1, const CoefPoly& a0) {
    HyperellipticCurve c;
    c.genus = 1;
    c.a = {a0, a1, a2};
    return c;
}

HyperellipticCurve numeric_curve_g1(long a2, long a1, long a0) {
    ParamSet none;
    return curve_g1(CoefPoly::constant(none, rat(a2)), CoefPoly::constant(none, rat(a1)),
                    CoefPoly::constant(none, rat(a0)));
}
}  // namespace

TEST_CASE("poly_in_op") {
    ParamSet none;
    DiffOp d2 = DiffOp::derivative(none, 2);
    CHECK(poly_in_op(d2, numeric_curve_g1(0, 0, 0)) == DiffOp::derivative(none, 6));

    BuiltPair p = build({Family::dixmier_r2});
    ParamSet pa({"alpha"});
    HyperellipticCurve dixmier =
        curve_g1(CoefPoly::zero(pa), CoefPoly::zero(pa), -CoefPoly::param(pa, "alpha"));
    CHECK(poly_in_op(p.L, dixmier) == op_pow(p.L, 3) - DiffOp::multiplication(CoefPoly::param(pa, "alpha")));
    CHECK(poly_in_op(p.L, dixmier) == *p.M * *p.M);
}

TEST_CASE("reduction of the trivial pair") {
    ParamSet none;
    HyperellipticCurve c =
        hyperelliptic_reduce(DiffOp::derivative(none, 2), DiffOp::derivative(none, 3));
    CHECK(c.genus == 1);
    for (const CoefPoly& a : c.a) CHECK(a.is_zero());
}

TEST_CASE("reduction of the Dixmier pair, symbolic alpha") {
    BuiltPair p = build({Family::dixmier_r2});
    HyperellipticCurve c = hyperelliptic_reduce(p.L, *p.M);
    CHECK(c.genus == 1);
    CHECK(c.a[2].is_zero());
    CHECK(c.a[1].is_zero());
    CHECK(c.a[0] == -CoefPoly::param(ParamSet({"alpha"}), "alpha"));
    // round trip
    CHECK(poly_in_op(p.L, c) == *p.M * *p.M);
}

TEST_CASE("reduction is invariant under M -> -M and survives constant shifts of L") {
    FamilySpec spec{Family::dixmier_r2};
    spec.alpha = CoefPoly::constant(ParamSet{}, rat(1));
    BuiltPair p = build(spec);

    HyperellipticCurve base = hyperelliptic_reduce(p.L, *p.M);
    CHECK(hyperelliptic_reduce(p.L, -*p.M) == base);

    // L -> L + c moves the curve but the reduction still closes exactly
    DiffOp shifted = p.L + Rat(5) * DiffOp::identity(ParamSet{});
    HyperellipticCurve moved = hyperelliptic_reduce(shifted, *p.M);
    CHECK(poly_in_op(shifted, moved) == *p.M * *p.M);
    CHECK(!(moved == base));
}

TEST_CASE("rank is the gcd of the orders") {
    ParamSet none;
    CHECK(rank_of(DiffOp::derivative(none, 4), DiffOp::derivative(none, 6)) == 2);
    CHECK(rank_of(DiffOp::derivative(none, 2), DiffOp::derivative(none, 3)) == 1);
    for (unsigned r = 1; r <= 5; ++r)
        for (unsigned g = 1; g <= 3; ++g)
            CHECK(rank_of(DiffOp::derivative(none, 2 * r),
                          DiffOp::derivative(none, (2 * g + 1) * r)) == r);
    // the rank literally divides both orders
    for (unsigned n = 1; n <= 9; ++n)
        for (unsigned m = 1; m <= 9; ++m) {
            unsigned r = rank_of(DiffOp::derivative(none, n), DiffOp::derivative(none, m));
            CHECK(n % r == 0);
            CHECK(m % r == 0);
        }
    CHECK_THROWS_AS(rank_of(DiffOp::zero(none), DiffOp::derivative(none, 1)),
                    std::invalid_argument);
}

TEST_CASE("discriminant-based curve report") {
    CHECK(!curve_report(numeric_curve_g1(0, 0, -1)).singular);   // mu^2 = l^3 - 1
    CHECK(curve_report(numeric_curve_g1(0, 0, -1)).discriminant == Rat(-27));
    CHECK(curve_report(numeric_curve_g1(0, 0, 0)).singular);     // mu^2 = l^3
    HyperellipticCurve quintic;                                  // mu^2 = l^5
    quintic.genus = 2;
    quintic.a.assign(5, CoefPoly::zero(ParamSet{}));
    CHECK(curve_report(quintic).singular);
    // symbolic coefficients are rejected
    ParamSet pa({"alpha"});
    HyperellipticCurve sym =
        curve_g1(CoefPoly::zero(pa), CoefPoly::zero(pa), CoefPoly::param(pa, "alpha"));
    CHECK_THROWS_AS(curve_report(sym), std::invalid_argument);
}

TEST_CASE("reduction failure modes") {
    ParamSet none;
    DiffOp d2 = DiffOp::derivative(none, 2);

    SECTION("non-commuting pair") {
        CHECK_THROWS_AS(hyperelliptic_reduce(d2, DiffOp::multiplication(CoefPoly::x(none))),
                        std::domain_error);
    }
    SECTION("orders admit no odd ratio") {
        CHECK_THROWS_AS(hyperelliptic_reduce(d2, DiffOp::derivative(none, 4)), std::domain_error);
    }
    SECTION("unnormalized leading coefficient") {
        CHECK_THROWS_AS(hyperelliptic_reduce(d2, Rat(2) * DiffOp::derivative(none, 3)),
                        std::domain_error);
    }
    SECTION("commuting but not hyperelliptic in this normalization") {
        // D^3 + D^2 commutes with D^2 but its square has an order-5 obstruction
        DiffOp m = DiffOp::derivative(none, 3) + DiffOp::derivative(none, 2);
        CHECK_THROWS_AS(hyperelliptic_reduce(d2, m), std::domain_error);
    }
}

TEST_CASE("make_commuting_pair bundles the verified data") {
    FamilySpec spec{Family::dixmier_r2};
    spec.alpha = CoefPoly::constant(ParamSet{}, rat(1));
    BuiltPair built = build(spec);
    CommutingPair pair = make_commuting_pair(built.L, *built.M, "dixmier-r2");
    CHECK(pair.rank == 2);
    CHECK(pair.curve.genus == 1);
    CHECK(pair.curve.a[0] == CoefPoly::constant(ParamSet{}, rat(-1)));
    CHECK(pair.provenance == "dixmier-r2");
    CHECK_THROWS_AS(
        make_commuting_pair(built.L, DiffOp::multiplication(CoefPoly::x(ParamSet{})), "user"),
        std::domain_error);
}
