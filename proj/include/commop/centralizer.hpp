#ifndef COMMOP_CENTRALIZER_HPP
#define COMMOP_CENTRALIZER_HPP

// Companion-operator search. Imposing [L, M] = 0 on a polynomial-coefficient
// ansatz M = sum c_{i,d} x^d D^i is a homogeneous linear system over Q in the
// unknowns c_{i,d}; its solution space is the centralizer of L truncated at
// order m and coefficient degree B. From that space select_M extracts the
// hyperelliptic representative: the element (unique up to sign) whose square
// is a polynomial in L.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "operator.hpp"

namespace commop {

struct AnsatzSpec {
    unsigned order = 1;                         // target order m
    std::optional<unsigned> degree_bound;       // B; heuristic when unset
    unsigned degree_cap = 64;                   // escalation ceiling for B
};

// Initial coefficient-degree bound: ceil(m * maxdeg_x(L) / order(L)) + 4.
// Covers every explicit family at desk scale; escalation doubles it.
inline unsigned default_degree_bound(const DiffOp& L, unsigned m) {
    unsigned n = *L.order();
    int deg = L.max_deg_x();
    if (deg < 0) deg = 0;
    unsigned b0 = (m * static_cast<unsigned>(deg) + n - 1) / n;
    return b0 + 4;
}

struct CentralizerBasis {
    std::vector<DiffOp> elements;  // each re-verified to commute with L
    unsigned degree_bound_used = 0;
    std::size_t dimension() const { return elements.size(); }
};

namespace detail {

inline CentralizerBasis solve_at_bound(const DiffOp& L, unsigned m, unsigned bound) {
    const ParamSet& ps = L.params();
    std::vector<std::pair<unsigned, unsigned>> unknowns;  // (derivative order i, x-degree d)
    unknowns.reserve(static_cast<std::size_t>(m + 1) * (bound + 1));
    for (unsigned i = 0; i <= m; ++i)
        for (unsigned d = 0; d <= bound; ++d) unknowns.emplace_back(i, d);

    // column u holds [L, x^d D^i]; rows are indexed by (order, x-degree) of
    // the commutator coefficients
    std::map<std::pair<unsigned, unsigned>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> columns(unknowns.size());
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        auto [i, d] = unknowns[u];
        DiffOp basis_op(ps);
        basis_op.set_coeff(i, CoefPoly::x(ps, d));
        DiffOp k = op_commutator(L, basis_op);
        for (const auto& [t, c] : k.coeffs()) {
            for (const auto& [mono, q] : c.terms()) {
                auto key = std::make_pair(t, mono.x_exp);
                auto [it, inserted] = row_of.try_emplace(key, row_of.size());
                columns[u].emplace_back(it->second, q);
            }
        }
    }

    RatMat system(row_of.size(), RatVec(unknowns.size(), Rat(0)));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [r, q] : columns[u]) system[r][u] = q;

    CentralizerBasis result;
    result.degree_bound_used = bound;
    for (const RatVec& v : null_space(std::move(system))) {
        DiffOp op(ps);
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            if (sgn(v[u]) == 0) continue;
            auto [i, d] = unknowns[u];
            op.add_to_coeff(i, Rat(v[u]) * CoefPoly::x(ps, d));
        }
        if (!op_commutator(L, op).is_zero())
            throw std::logic_error("solve_centralizer: solver returned a non-commuting element");
        result.elements.push_back(std::move(op));
    }
    return result;
}

inline bool has_element_of_order(const CentralizerBasis& basis, unsigned m) {
    for (const DiffOp& e : basis.elements)
        if (e.order() && *e.order() == m) return true;
    return false;
}

}  // namespace detail

// Exact basis of {M : [L, M] = 0, order(M) <= spec.order, deg_x <= B}. The
// degree bound escalates (doubling, capped) until the basis contains an
// element of the target order; a cap hit is reported, never truncated away.
inline CentralizerBasis solve_centralizer(const DiffOp& L, const AnsatzSpec& spec) {
    if (L.is_zero()) throw std::invalid_argument("solve_centralizer: L is zero");
    if (uses_parameters(L))
        throw std::invalid_argument(
            "solve_centralizer: all parameters of L must be instantiated to rationals");
    if (spec.order < 1) throw std::invalid_argument("solve_centralizer: target order must be >= 1");

    unsigned bound = spec.degree_bound ? *spec.degree_bound : default_degree_bound(L, spec.order);
    for (;;) {
        CentralizerBasis basis = detail::solve_at_bound(L, spec.order, bound);
        if (detail::has_element_of_order(basis, spec.order)) return basis;
        unsigned next = std::min(bound * 2, spec.degree_cap);
        if (next <= bound)
            throw std::domain_error("solve_centralizer: no element of order " +
                                    std::to_string(spec.order) +
                                    " up to the degree cap (last bound " + std::to_string(bound) +
                                    ")");
        bound = next;
    }
}

namespace detail {

// Rational q with lead(R) = q * divisor; errors tell the caller the pair is
// not hyperelliptic in this normalization.
inline Rat leading_ratio(const DiffOp& remainder, const CoefPoly& divisor, unsigned at_order) {
    auto q = exact_divide(remainder.leading_coeff(), divisor);
    if (!q || !q->is_rational())
        throw std::domain_error(
            "select_M: the pair is not hyperelliptic in this normalization "
            "(leading ratio at order " + std::to_string(at_order) + " is not a rational constant)");
    return q->rational_value();
}

}  // namespace detail

// Canonical companion of order m: scaled so lead(M)^2 = lead(L)^(2g+1) with a
// positive leading term, then corrected by polynomials in L so that M^2 is
// itself a polynomial in L. Writing X^2 = P(L) + X S(L) in the module
// Q[L] + X Q[L] (division by descending order), the correction is
// M = X - S(L)/2: the cross term cancels and M^2 = P(L) + S(L)^2/4.
// Leading coefficients may be non-constant polynomials (the r = 2, 3 family
// members are not monic); all divisions are exact in the coefficient ring.
inline DiffOp select_M(const CentralizerBasis& basis, const DiffOp& L, unsigned m) {
    unsigned n = *L.order();
    if ((2 * m) % n != 0 || ((2 * m) / n) % 2 == 0)
        throw std::invalid_argument("select_M: 2*" + std::to_string(m) + " must be an odd multiple of order(L)");
    unsigned g2p1 = (2 * m) / n;  // 2g+1

    const DiffOp* pick = nullptr;
    for (const DiffOp& e : basis.elements)
        if (e.order() && *e.order() == m) {
            pick = &e;
            break;
        }
    if (!pick) throw std::domain_error("select_M: basis has no element of order " + std::to_string(m));

    std::vector<CoefPoly> lead_pow{CoefPoly::one(L.params())};
    for (unsigned k = 1; k <= g2p1; ++k) lead_pow.push_back(lead_pow.back() * L.leading_coeff());

    // scale so that lead(X)^2 = lead(L)^(2g+1): t^2 = lead(L)^(2g+1) / lead(X)^2
    CoefPoly lead_X = pick->leading_coeff();
    auto t_squared = exact_divide(lead_pow[g2p1], lead_X * lead_X);
    if (!t_squared || !t_squared->is_rational())
        throw std::domain_error(
            "select_M: lead(L)^(2g+1) is not a rational-square multiple of lead(X)^2");
    auto t = rat_sqrt(t_squared->rational_value());
    if (!t || sgn(*t) == 0)
        throw std::domain_error("select_M: the leading normalization has no rational square root");
    if (sgn(leading_term(lead_X).second) < 0) *t = -*t;  // positive leading term
    DiffOp X = *t * (*pick);
    CoefPoly lead_M = X.leading_coeff();

    std::vector<DiffOp> l_pow{DiffOp::identity(L.params())};
    auto power_of_L = [&](unsigned k) -> const DiffOp& {
        while (l_pow.size() <= k) l_pow.push_back(l_pow.back() * L);
        return l_pow[k];
    };

    // divide X^2 by {L^k, X L^j} along descending order
    DiffOp remainder = X * X;
    DiffOp correction = DiffOp::zero(L.params());  // S(L)/2
    while (!remainder.is_zero()) {
        unsigned t_ord = *remainder.order();
        if (t_ord % n == 0 && t_ord / n <= g2p1) {
            unsigned k = t_ord / n;
            Rat c = detail::leading_ratio(remainder, lead_pow[k], t_ord);
            remainder -= c * power_of_L(k);
        } else if (t_ord >= m && (t_ord - m) % n == 0) {
            unsigned j = (t_ord - m) / n;
            Rat delta = detail::leading_ratio(remainder, lead_M * lead_pow[j], t_ord);
            remainder -= delta * (X * power_of_L(j));
            correction += (delta / 2) * power_of_L(j);
        } else {
            throw std::domain_error(
                "select_M: the pair is not hyperelliptic in this normalization (obstruction at order " +
                std::to_string(t_ord) + ")");
        }
    }
    DiffOp M = X - correction;
    if (!op_commutator(L, M).is_zero())
        throw std::logic_error("select_M: selected operator does not commute");
    return M;
}

}  // namespace commop

#endif
