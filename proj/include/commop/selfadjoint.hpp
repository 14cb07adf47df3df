#ifndef COMMOP_SELFADJOINT_HPP
#define COMMOP_SELFADJOINT_HPP

// Self-adjoint order-4 operators L = (D^2 + V)^2 + W and the Mironov
// relation tying (V, W) to a genus-g spectral curve through a monic
// polynomial Q(x, lambda) of lambda-degree g:
//
//   (lambda - W) Q^2 - V Qx^2 + 1/4 Qxx^2 - 1/2 Qx Qxxx
//                + Q (Vx Qx + 2 V Qxx + 1/2 Qxxxx)  =  f(lambda).
//
// Verification works at any genus; the solver handles genus 1, where the
// relation can be eliminated degree by degree.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "operator.hpp"
#include "spectral.hpp"

namespace commop {

struct VW {
    CoefPoly V;
    CoefPoly W;
};

// Q(x, lambda) = lambda^g + q_{g-1}(x) lambda^(g-1) + ... + q_0(x).
struct QPoly {
    unsigned genus = 1;
    std::vector<CoefPoly> q;  // size genus; q[k] multiplies lambda^k
};

// V = c_2 / 2, W = c_0 - V'' - V^2, after shape checks.
inline VW decompose_selfadjoint4(const DiffOp& L) {
    if (L.is_zero() || *L.order() != 4)
        throw std::invalid_argument("decompose_selfadjoint4: operator must have order 4");
    const ParamSet& ps = L.params();
    if (!(L.coeff(4) == CoefPoly::one(ps)))
        throw std::invalid_argument("decompose_selfadjoint4: not monic");
    if (!L.coeff(3).is_zero())
        throw std::invalid_argument("decompose_selfadjoint4: coefficient of D^3 is nonzero");
    CoefPoly c2 = L.coeff(2);
    if (!(L.coeff(1) == c2.dx()))
        throw std::invalid_argument(
            "decompose_selfadjoint4: coefficient of D is not d/dx of the D^2 coefficient "
            "(operator is not of the form (D^2+V)^2 + W)");
    CoefPoly v = Rat(1, 2) * c2;
    CoefPoly w = L.coeff(0) - v.dx().dx() - v * v;
    return {v, w};
}

inline DiffOp reassemble_selfadjoint4(const VW& vw) {
    auto [v, w] = CoefPoly::aligned(vw.V, vw.W);
    const ParamSet& ps = v.params();
    DiffOp a = DiffOp::derivative(ps, 2) + DiffOp::multiplication(v);
    return a * a + DiffOp::multiplication(w);
}

namespace detail {

// Polynomials in lambda with CoefPoly coefficients; index = lambda power.
using LambdaPoly = std::vector<CoefPoly>;

inline LambdaPoly lp_mul(const LambdaPoly& a, const LambdaPoly& b, const ParamSet& ps) {
    LambdaPoly out(a.size() + b.size() - 1, CoefPoly::zero(ps));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline LambdaPoly lp_dx(const LambdaPoly& a) {
    LambdaPoly out = a;
    for (CoefPoly& c : out) c = c.dx();
    return out;
}

inline LambdaPoly lp_scaled(const LambdaPoly& a, const CoefPoly& s) {
    LambdaPoly out = a;
    for (CoefPoly& c : out) c = c * s;
    return out;
}

inline void lp_add_into(LambdaPoly& a, const LambdaPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), CoefPoly::zero(a.front().params()));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
}

// Left side of the Mironov relation as a polynomial in lambda.
inline LambdaPoly mironov_lhs(const CoefPoly& v, const CoefPoly& w, const LambdaPoly& q,
                              const ParamSet& ps) {
    LambdaPoly qx = lp_dx(q), qxx = lp_dx(qx), qxxx = lp_dx(qxx), qxxxx = lp_dx(qxxx);
    LambdaPoly lambda_minus_w{-w, CoefPoly::one(ps)};

    LambdaPoly lhs = lp_mul(lambda_minus_w, lp_mul(q, q, ps), ps);
    lp_add_into(lhs, lp_scaled(lp_mul(qx, qx, ps), -v));
    lp_add_into(lhs, lp_scaled(lp_mul(qxx, qxx, ps), CoefPoly::constant(ps, Rat(1, 4))));
    lp_add_into(lhs, lp_scaled(lp_mul(qx, qxxx, ps), CoefPoly::constant(ps, Rat(-1, 2))));

    LambdaPoly inner = lp_scaled(qx, v.dx());
    lp_add_into(inner, lp_scaled(qxx, Rat(2) * v));
    lp_add_into(inner, lp_scaled(qxxxx, CoefPoly::constant(ps, Rat(1, 2))));
    lp_add_into(lhs, lp_mul(q, inner, ps));
    return lhs;
}

inline ParamSet merge_params(std::vector<const CoefPoly*> polys) {
    ParamSet cur;
    for (const CoefPoly* p : polys) {
        const ParamSet& ps = p->params();
        if (ps.subset_of(cur)) continue;
        if (cur.subset_of(ps)) {
            cur = ps;
            continue;
        }
        throw std::invalid_argument("incompatible paramsets " + cur.describe() + " and " +
                                    ps.describe());
    }
    return cur;
}

}  // namespace detail

struct MironovCheck {
    bool ok = true;
    int first_mismatch = -1;   // lowest mismatching lambda degree when !ok
    CoefPoly difference;       // lhs - rhs at that degree
};

// Exact identity check of the relation in the bivariate ring over (x, lambda).
inline MironovCheck verify_mironov_relation(const VW& vw, const QPoly& q,
                                            const HyperellipticCurve& curve) {
    if (q.genus != curve.genus)
        throw std::invalid_argument("verify_mironov_relation: genus of Q (" +
                                    std::to_string(q.genus) + ") != genus of curve (" +
                                    std::to_string(curve.genus) + ")");
    std::vector<const CoefPoly*> all{&vw.V, &vw.W};
    for (const CoefPoly& c : q.q) all.push_back(&c);
    for (const CoefPoly& c : curve.a) all.push_back(&c);
    ParamSet ps = detail::merge_params(all);

    detail::LambdaPoly qq(q.genus + 1, CoefPoly::zero(ps));
    for (std::size_t k = 0; k < q.q.size(); ++k) qq[k] = q.q[k].embedded_into(ps);
    qq[q.genus] = CoefPoly::one(ps);

    detail::LambdaPoly lhs =
        detail::mironov_lhs(vw.V.embedded_into(ps), vw.W.embedded_into(ps), qq, ps);

    detail::LambdaPoly rhs(2 * curve.genus + 2, CoefPoly::zero(ps));
    for (std::size_t k = 0; k < curve.a.size(); ++k) rhs[k] = curve.a[k].embedded_into(ps);
    rhs[2 * curve.genus + 1] = CoefPoly::one(ps);

    std::size_t width = std::max(lhs.size(), rhs.size());
    for (std::size_t k = 0; k < width; ++k) {
        CoefPoly l = k < lhs.size() ? lhs[k] : CoefPoly::zero(ps);
        CoefPoly r = k < rhs.size() ? rhs[k] : CoefPoly::zero(ps);
        if (!(l == r)) return {false, static_cast<int>(k), l - r};
    }
    return {true, -1, CoefPoly::zero(ps)};
}

// Genus-1 solver: finds Q = lambda + q0(x) and the curve constants from
// (V, W) alone, by degree-wise elimination. The lambda^2 coefficient forces
// q0 = (W + a2)/2; constancy of the lambda^1 coefficient pins a2; the
// remaining coefficients must then be x-free and become a1 and a0.
inline std::pair<QPoly, HyperellipticCurve> solve_mironov_g1(const VW& vw) {
    auto [v, w] = CoefPoly::aligned(vw.V, vw.W);
    const ParamSet& ps = v.params();

    CoefPoly g0 = Rat(-3, 4) * (w * w) + Rat(1, 2) * (v.dx() * w.dx()) + v * w.dx().dx() +
                  Rat(1, 4) * w.dx().dx().dx().dx();
    CoefPoly g0_var = g0.x_dependent_part();
    CoefPoly w_var = w.x_dependent_part();

    CoefPoly a2 = CoefPoly::zero(ps);
    if (!g0_var.is_zero()) {
        if (w_var.is_zero())
            throw std::domain_error(
                "solve_mironov_g1: no polynomial solution; lambda^1 coefficient cannot be made "
                "constant, offending part " + g0_var.str());
        auto ratio = exact_divide(Rat(2) * g0_var, w_var);
        if (!ratio || !ratio->is_constant())
            throw std::domain_error(
                "solve_mironov_g1: no polynomial solution; lambda^1 obstruction " +
                (ratio ? ratio->str() : g0_var.str()) + " is not an x-free constant");
        a2 = *ratio;
    }

    CoefPoly q0 = Rat(1, 2) * (w + a2);
    detail::LambdaPoly q{q0, CoefPoly::one(ps)};
    detail::LambdaPoly lhs = detail::mironov_lhs(v, w, q, ps);

    HyperellipticCurve curve;
    curve.genus = 1;
    curve.a.assign(3, CoefPoly::zero(ps));
    for (unsigned k = 0; k < 3; ++k) {
        auto constant = lhs[k].is_constant();
        if (!constant)
            throw std::domain_error("solve_mironov_g1: no polynomial solution; lambda^" +
                                    std::to_string(k) + " coefficient is not x-free: " +
                                    lhs[k].str());
        curve.a[k] = *constant;
    }

    QPoly qpoly{1, {q0}};
    MironovCheck check = verify_mironov_relation(vw, qpoly, curve);
    if (!check.ok) throw std::logic_error("solve_mironov_g1: self-check of the relation failed");
    return {qpoly, curve};
}

}  // namespace commop

#endif
