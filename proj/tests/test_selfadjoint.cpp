#include <catch2/catch_amalgamated.hpp>

#include "commop.hpp"

using namespace commop;

namespace {
const ParamSet kAlpha({"alpha"});
CoefPoly alpha() { return CoefPoly::param(kAlpha, "alpha"); }
CoefPoly x(unsigned e = 1) { return CoefPoly::x(kAlpha, e); }

HyperellipticCurve g1(const CoefPoly& a2, const CoefPoly& a1, const CoefPoly& a0) {
    HyperellipticCurve c;
    c.genus = 1;
    c.a = {a0, a1, a2};
    return c;
}
}  // namespace

TEST_CASE("decomposition of self-adjoint order-4 operators") {
    SECTION("Dixmier rank 2") {
        VW vw = decompose_selfadjoint4(build({Family::dixmier_r2}).L);
        CHECK(vw.V == x(3) + alpha());
        CHECK(vw.W == Rat(2) * x());
    }
    SECTION("Mironov rank 2, genus 3") {
        FamilySpec spec{Family::mironov_r2};
        spec.g = 3;
        VW vw = decompose_selfadjoint4(build(spec).L);
        CHECK(vw.V == x(3) + alpha());
        CHECK(vw.W == Rat(12) * x());
    }
    SECTION("pure D^4") {
        ParamSet none;
        VW vw = decompose_selfadjoint4(DiffOp::derivative(none, 4));
        CHECK(vw.V.is_zero());
        CHECK(vw.W.is_zero());
    }
}

TEST_CASE("decomposition round trip") {
    for (unsigned g = 1; g <= 3; ++g) {
        FamilySpec spec{Family::mironov_r2};
        spec.g = g;
        DiffOp L = build(spec).L;
        CHECK(reassemble_selfadjoint4(decompose_selfadjoint4(L)) == L);
    }
}

TEST_CASE("decomposition rejects wrong shapes") {
    ParamSet none;
    DiffOp d4 = DiffOp::derivative(none, 4);
    CHECK_THROWS_AS(decompose_selfadjoint4(DiffOp::derivative(none, 2)), std::invalid_argument);
    CHECK_THROWS_AS(decompose_selfadjoint4(d4 + DiffOp::derivative(none, 3)),
                    std::invalid_argument);
    // c_1 != (c_2)': not of the form (D^2+V)^2 + W
    DiffOp bad = d4 + DiffOp::multiplication(CoefPoly::x(none)) * DiffOp::derivative(none, 2);
    CHECK_THROWS_AS(decompose_selfadjoint4(bad), std::invalid_argument);
    CHECK_THROWS_AS(decompose_selfadjoint4(Rat(2) * d4), std::invalid_argument);
}

TEST_CASE("relation verification") {
    VW dixmier{x(3) + alpha(), Rat(2) * x()};

    SECTION("the Dixmier data satisfies the relation with symbolic alpha") {
        QPoly q{1, {x()}};  // Q = lambda + x
        MironovCheck check =
            verify_mironov_relation(dixmier, q, g1(CoefPoly::zero(kAlpha), CoefPoly::zero(kAlpha), -alpha()));
        CHECK(check.ok);
    }
    SECTION("trivial data") {
        ParamSet none;
        VW zero{CoefPoly::zero(none), CoefPoly::zero(none)};
        QPoly q{1, {CoefPoly::zero(none)}};  // Q = lambda
        HyperellipticCurve c;
        c.genus = 1;
        c.a.assign(3, CoefPoly::zero(none));
        CHECK(verify_mironov_relation(zero, q, c).ok);
    }
    SECTION("a sign flip in Q breaks the relation") {
        QPoly q{1, {-x()}};  // Q = lambda - x
        MironovCheck check =
            verify_mironov_relation(dixmier, q, g1(CoefPoly::zero(kAlpha), CoefPoly::zero(kAlpha), -alpha()));
        CHECK(!check.ok);
        CHECK(check.first_mismatch == 1);  // lambda^1 coefficient becomes 2x^2
        CHECK(check.difference == Rat(2) * x(2));
    }
    SECTION("genus mismatch is rejected") {
        QPoly q{2, {x(), x()}};
        CHECK_THROWS_AS(verify_mironov_relation(dixmier, q, g1(x(0), x(0), x(0))),
                        std::invalid_argument);
    }
}

TEST_CASE("genus-1 solver") {
    SECTION("recovers the Dixmier curve from (V, W) alone, symbolic alpha") {
        auto [q, curve] = solve_mironov_g1({x(3) + alpha(), Rat(2) * x()});
        CHECK(q.q[0] == x());
        CHECK(curve.a[2].is_zero());
        CHECK(curve.a[1].is_zero());
        CHECK(curve.a[0] == -alpha());
    }
    SECTION("trivial potentials") {
        ParamSet none;
        auto [q, curve] = solve_mironov_g1({CoefPoly::zero(none), CoefPoly::zero(none)});
        CHECK(q.q[0].is_zero());
        for (const CoefPoly& a : curve.a) CHECK(a.is_zero());
    }
    SECTION("shifted W = 2x + 1") {
        auto [q, curve] = solve_mironov_g1({x(3) + alpha(), Rat(2) * x() + CoefPoly::one(kAlpha)});
        // unique polynomial solution: Q = lambda + x - 1, curve (-3, 3, -1-alpha)
        CHECK(q.q[0] == x() - CoefPoly::one(kAlpha));
        CHECK(curve.a[2] == CoefPoly::constant(kAlpha, rat(-3)));
        CHECK(curve.a[1] == CoefPoly::constant(kAlpha, rat(3)));
        CHECK(curve.a[0] == -CoefPoly::one(kAlpha) - alpha());
        CHECK(verify_mironov_relation({x(3) + alpha(), Rat(2) * x() + CoefPoly::one(kAlpha)}, q, curve).ok);
    }
    SECTION("reports when no polynomial solution exists") {
        ParamSet none;
        // V = 0, W = x^2 forces a non-constant lambda^1 obstruction
        CHECK_THROWS_AS(solve_mironov_g1({CoefPoly::zero(none), CoefPoly::x(none, 2)}),
                        std::domain_error);
        // W = 6x is the genus-2 potential; no genus-1 Q exists
        CHECK_THROWS_AS(solve_mironov_g1({CoefPoly::x(none, 3), Rat(6) * CoefPoly::x(none)}),
                        std::domain_error);
    }
}

TEST_CASE("solver output always passes the verifier") {
    // a few assorted polynomial potentials with genus-1 structure
    std::vector<VW> cases = {
        {x(3) + alpha(), Rat(2) * x()},
        {x(3) + alpha(), Rat(2) * x() + CoefPoly::one(kAlpha)},
        {x(3) + Rat(7) * x(), Rat(2) * x()},
        {CoefPoly::zero(kAlpha), CoefPoly::constant(kAlpha, rat(5))},
    };
    for (const VW& vw : cases) {
        auto [q, curve] = solve_mironov_g1(vw);
        CHECK(verify_mironov_relation(vw, q, curve).ok);
    }
}
