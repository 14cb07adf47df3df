#ifndef COMMOP_SPECTRAL_HPP
#define COMMOP_SPECTRAL_HPP

// Spectral-curve machinery for commuting pairs. Any commuting pair (L, M)
// with 2 order(M) = (2g+1) order(L) and matched leading coefficients is
// tested against the hyperelliptic relation
//     M^2 = L^(2g+1) + a_2g L^2g + ... + a_1 L + a_0
// by descending reduction of M^2 against powers of L; the reduction doubles
// as the verification, since it must terminate with a zero remainder and
// x-free constants a_k.

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "operator.hpp"

namespace commop {

// mu^2 = lambda^(2g+1) + a_2g lambda^2g + ... + a_0, coefficients x-free
// (rational or parameter-only polynomials), leading coefficient 1 implicit.
struct HyperellipticCurve {
    unsigned genus = 1;
    std::vector<CoefPoly> a;  // size 2g+1: a[k] multiplies lambda^k

    std::string str(const std::string& lambda = "lambda") const {
        std::string s = lambda + "^" + std::to_string(2 * genus + 1);
        for (unsigned k = 2 * genus; k + 1 > 0; --k) {
            const CoefPoly& c = a[k];
            if (c.is_zero()) continue;
            s += " + (" + c.str() + ")";
            if (k == 1) s += "*" + lambda;
            if (k > 1) s += "*" + lambda + "^" + std::to_string(k);
        }
        return s;
    }

    // f(lambda) for a numeric curve.
    Rat eval(const Rat& lambda) const {
        Rat acc = rat_pow(lambda, 2 * genus + 1);
        for (std::size_t k = 0; k < a.size(); ++k) acc += a[k].rational_value() * rat_pow(lambda, k);
        return acc;
    }

    bool is_numeric() const {
        for (const CoefPoly& c : a)
            if (!c.is_rational()) return false;
        return true;
    }

    bool operator==(const HyperellipticCurve&) const = default;
};

// Right side of the curve relation as an operator: L^(2g+1) + sum a_k L^k.
inline DiffOp poly_in_op(const DiffOp& L, const HyperellipticCurve& curve) {
    DiffOp acc = op_pow(L, 2 * curve.genus + 1);
    DiffOp l_pow = DiffOp::identity(L.params());
    for (std::size_t k = 0; k < curve.a.size(); ++k) {
        if (k > 0) l_pow = l_pow * L;
        if (!curve.a[k].is_zero()) acc += curve.a[k] * l_pow;
    }
    return acc;
}

// Extracts the curve constants by reducing M^2 against powers of L. Errors
// when no positive integer genus fits the orders, when a reduction ratio is
// not x-free, or when the reduction leaves a nonzero remainder.
inline HyperellipticCurve hyperelliptic_reduce(const DiffOp& L, const DiffOp& M) {
    if (L.is_zero() || M.is_zero())
        throw std::invalid_argument("hyperelliptic_reduce: zero operator");
    if (!op_commutator(L, M).is_zero())
        throw std::domain_error("hyperelliptic_reduce: [L, M] != 0");
    unsigned n = *L.order(), m = *M.order();
    if ((2 * m) % n != 0)
        throw std::domain_error("hyperelliptic_reduce: orders " + std::to_string(n) + ", " +
                                std::to_string(m) + " admit no integer genus");
    unsigned q = (2 * m) / n;
    if (q % 2 == 0 || q < 3)
        throw std::domain_error("hyperelliptic_reduce: orders " + std::to_string(n) + ", " +
                                std::to_string(m) + " admit no positive integer genus");
    unsigned genus = (q - 1) / 2;

    std::vector<DiffOp> l_pow{DiffOp::identity(L.params())};
    std::vector<CoefPoly> lead_pow{CoefPoly::one(L.params())};
    for (unsigned k = 1; k <= q; ++k) {
        l_pow.push_back(l_pow.back() * L);
        lead_pow.push_back(lead_pow.back() * L.leading_coeff());
    }

    {
        CoefPoly lm = M.leading_coeff();
        auto [lhs, rhs] = CoefPoly::aligned(lm * lm, lead_pow[q]);
        if (!(lhs == rhs))
            throw std::domain_error(
                "hyperelliptic_reduce: M is not normalized (lead(M)^2 != lead(L)^(2g+1))");
    }

    HyperellipticCurve curve;
    curve.genus = genus;
    curve.a.assign(q, CoefPoly::zero(L.params()));

    DiffOp remainder = M * M;
    while (!remainder.is_zero()) {
        unsigned t = *remainder.order();
        if (t % n != 0 || t / n > q)
            throw std::domain_error(
                "hyperelliptic_reduce: the pair is not hyperelliptic (remainder order " +
                std::to_string(t) + " is not a reducible power of order(L))");
        unsigned k = t / n;
        auto ratio = exact_divide(remainder.leading_coeff(), lead_pow[k]);
        if (!ratio || !ratio->is_constant())
            throw std::domain_error(
                "hyperelliptic_reduce: leading ratio at L^" + std::to_string(k) +
                " is not an x-free constant: " +
                (ratio ? ratio->str() : remainder.leading_coeff().str()));
        if (k == q) {
            if (!(*ratio == CoefPoly::one(ratio->params())))
                throw std::domain_error("hyperelliptic_reduce: top coefficient is not monic");
        } else {
            curve.a[k] = *ratio;
        }
        remainder -= *ratio * l_pow[k];
    }
    return curve;
}

// gcd of the orders: the generic rank of the pair.
inline unsigned rank_of(const DiffOp& L, const DiffOp& M) {
    if (L.is_zero() || M.is_zero()) throw std::invalid_argument("rank_of: zero operator");
    return std::gcd(*L.order(), *M.order());
}

struct CurveReport {
    Rat discriminant;
    bool singular = false;
};

// Discriminant of lambda^(2g+1) + sum a_k lambda^k via the Sylvester
// resultant of f and f'; zero flags a singular spectral curve.
inline CurveReport curve_report(const HyperellipticCurve& curve) {
    if (!curve.is_numeric())
        throw std::invalid_argument("curve_report: curve coefficients must be numeric");
    unsigned d = 2 * curve.genus + 1;
    RatVec f(d + 1, Rat(0)), fp(d, Rat(0));  // coefficient of lambda^k at index k
    f[d] = 1;
    for (unsigned k = 0; k < d; ++k) f[k] = curve.a[k].rational_value();
    for (unsigned k = 1; k <= d; ++k) fp[k - 1] = Rat(static_cast<long>(k)) * f[k];

    std::size_t size = 2 * d - 1;
    RatMat syl(size, RatVec(size, Rat(0)));
    for (unsigned row = 0; row < d - 1; ++row)         // rows of f
        for (unsigned k = 0; k <= d; ++k) syl[row][row + d - k] = f[k];
    for (unsigned row = 0; row < d; ++row)             // rows of f'
        for (unsigned k = 0; k < d; ++k) syl[d - 1 + row][row + d - 1 - k] = fp[k];

    Rat res = determinant(std::move(syl));
    long sign_exp = static_cast<long>(d) * (d - 1) / 2;
    CurveReport rep;
    rep.discriminant = (sign_exp % 2 == 0) ? res : -res;  // lc(f) = 1
    rep.singular = sgn(rep.discriminant) == 0;
    return rep;
}

// A fully verified pair: commutation, the curve, and the generic rank.
struct CommutingPair {
    DiffOp L;
    DiffOp M;
    HyperellipticCurve curve;
    unsigned rank = 1;
    std::string provenance;  // family tag or "user"
};

// Assembles and certifies a CommutingPair; throws if [L,M] != 0, the curve
// reduction fails, or the round trip M^2 = f(L) does not close exactly.
inline CommutingPair make_commuting_pair(const DiffOp& L, const DiffOp& M,
                                         std::string provenance = "user") {
    CommutingPair pair{L, M, hyperelliptic_reduce(L, M), rank_of(L, M), std::move(provenance)};
    if (!(poly_in_op(L, pair.curve) == M * M))
        throw std::logic_error("make_commuting_pair: curve round trip failed");
    return pair;
}

}  // namespace commop

#endif
