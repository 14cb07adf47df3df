#ifndef COMMOP_CHEBYSHEV_HPP
#define COMMOP_CHEBYSHEV_HPP

// Chebyshev polynomials of the first kind, exact coefficients via the
// three-term recurrence T_0 = 1, T_1 = z, T_r = 2 z T_{r-1} - T_{r-2}, with
// T_{-r} = T_r. The single variable is stored as the library's x.

#include <cstdlib>
#include <stdexcept>

#include "operator.hpp"
#include "polynomial.hpp"

namespace commop {

struct ChebPoly {
    unsigned degree = 0;
    CoefPoly poly;  // empty paramset, variable x
};

inline ChebPoly chebyshev(long r) {
    unsigned n = static_cast<unsigned>(std::labs(r));
    ParamSet none;
    CoefPoly prev = CoefPoly::one(none);   // T_0
    if (n == 0) return {0, prev};
    CoefPoly cur = CoefPoly::x(none);      // T_1
    CoefPoly two_x = CoefPoly::x(none) * Rat(2);
    for (unsigned k = 2; k <= n; ++k) {
        CoefPoly next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {n, cur};
}

// Substitutes q for the variable of p (both single-variable, no parameters).
inline CoefPoly poly_compose_x(const CoefPoly& p, const CoefPoly& q) {
    ParamSet none;
    CoefPoly acc = CoefPoly::zero(none);
    int d = p.deg_x();
    for (int e = d; e >= 0; --e) {  // Horner
        acc = acc * q;
        acc += CoefPoly::constant(none, p.coeff_of_x(static_cast<unsigned>(e)).rational_value());
    }
    return acc;
}

// The nesting law T_n(T_m) = T_{nm}, checked exactly.
inline bool cheb_nest_check(long n, long m) {
    return poly_compose_x(chebyshev(n).poly, chebyshev(m).poly) == chebyshev(n * m).poly;
}

enum class ChebVar { x, D };

// T_r evaluated at the multiplication operator x*Id or at the derivative D.
inline DiffOp cheb_operator(long r, ChebVar var, const ParamSet& ps = ParamSet{}) {
    ChebPoly t = chebyshev(r);
    DiffOp out = DiffOp::zero(ps);
    if (var == ChebVar::x) {
        out.set_coeff(0, t.poly.embedded_into(ps));
        return out;
    }
    for (const auto& [m, c] : t.poly.terms())
        out.add_to_coeff(m.x_exp, CoefPoly::constant(ps, c));
    return out;
}

}  // namespace commop

#endif
