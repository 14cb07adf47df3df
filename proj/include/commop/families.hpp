#ifndef COMMOP_FAMILIES_HPP
#define COMMOP_FAMILIES_HPP

// Constructors for the explicit commuting-operator families: the Dixmier rank
// 2 and rank 3 pairs of genus 1, Mironov's rank 2 and rank 3 operators of
// arbitrary genus, the Mokhov even-rank and 3k-rank operators, and the
// Chebyshev-generated operators of arbitrary rank r and genus g (both the
// (1-z^2)-form and the canonical-form variant built from T_r(D)).
//
// Everything is constructed by algebra (squaring the inner operator through
// the normal-form product), never from pre-expanded coefficient tables.

#include <optional>
#include <stdexcept>
#include <string>

#include "chebyshev.hpp"
#include "operator.hpp"

namespace commop {

enum class Family {
    dixmier_r2,
    dixmier_r3,
    mironov_r2,
    mironov_r3,
    mokhov_2k,
    mokhov_3k,
    cheb_z,
    cheb_canonical,
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::dixmier_r2: return "dixmier-r2";
        case Family::dixmier_r3: return "dixmier-r3";
        case Family::mironov_r2: return "mironov-r2";
        case Family::mironov_r3: return "mironov-r3";
        case Family::mokhov_2k: return "mokhov-2k";
        case Family::mokhov_3k: return "mokhov-3k";
        case Family::cheb_z: return "cheb-z";
        case Family::cheb_canonical: return "cheb-canonical";
    }
    return "?";
}

inline std::optional<Family> family_parse(const std::string& s) {
    for (Family f : {Family::dixmier_r2, Family::dixmier_r3, Family::mironov_r2,
                     Family::mironov_r3, Family::mokhov_2k, Family::mokhov_3k, Family::cheb_z,
                     Family::cheb_canonical})
        if (s == family_name(f)) return f;
    return std::nullopt;
}

// Integer knobs r, g, k plus the scalar parameters a, b, alpha. A scalar left
// unset stays symbolic (a fresh parameter of the same name); a set scalar may
// be any x-free polynomial in parameters, e.g. a rational or "alpha - 1/8".
struct FamilySpec {
    Family family = Family::dixmier_r2;
    unsigned r = 2;
    unsigned g = 1;
    unsigned k = 1;
    std::optional<CoefPoly> a;
    std::optional<CoefPoly> b;
    std::optional<CoefPoly> alpha;
};

// L plus, where the family carries one, the explicit companion operator M.
struct BuiltPair {
    DiffOp L;
    std::optional<DiffOp> M;
};

namespace detail {

inline CoefPoly scalar_or_symbol(const std::optional<CoefPoly>& v, const char* symbol,
                                 bool must_be_nonzero) {
    CoefPoly value = v ? *v : CoefPoly::param(ParamSet({symbol}), symbol);
    if (!value.is_constant())
        throw std::invalid_argument(std::string("family parameter '") + symbol +
                                    "' must be x-free, got " + value.str());
    if (must_be_nonzero && value.is_zero())
        throw std::invalid_argument(std::string("family parameter '") + symbol +
                                    "' must be nonzero");
    return value;
}

}  // namespace detail

inline BuiltPair build(const FamilySpec& spec) {
    if (spec.g < 1) throw std::invalid_argument("build: genus g must be >= 1");
    const Rat gg(static_cast<long>(spec.g) * (static_cast<long>(spec.g) + 1));  // g(g+1)

    switch (spec.family) {
        case Family::dixmier_r2:
        case Family::mironov_r2: {
            CoefPoly alpha = detail::scalar_or_symbol(spec.alpha, "alpha", false);
            const ParamSet& ps = alpha.params();
            Rat w = spec.family == Family::dixmier_r2 ? Rat(2) : gg;
            DiffOp A = DiffOp::derivative(ps, 2) +
                       DiffOp::multiplication(CoefPoly::x(ps, 3) + alpha);
            DiffOp L = A * A + DiffOp::multiplication(w * CoefPoly::x(ps));
            if (spec.family == Family::mironov_r2) return {L, std::nullopt};
            CoefPoly x = CoefPoly::x(ps);
            DiffOp M = A * A * A + Rat(3) * (x * DiffOp::derivative(ps, 2)) +
                       Rat(3) * DiffOp::derivative(ps, 1) +
                       DiffOp::multiplication(Rat(3) * x * (CoefPoly::x(ps, 3) + alpha));
            return {L, M};
        }

        case Family::dixmier_r3:
        case Family::mironov_r3: {
            CoefPoly alpha = detail::scalar_or_symbol(spec.alpha, "alpha", false);
            const ParamSet& ps = alpha.params();
            Rat w = spec.family == Family::dixmier_r3 ? Rat(2) : gg;
            CoefPoly x2a = CoefPoly::x(ps, 2) + alpha;
            DiffOp A = DiffOp::derivative(ps, 3) + DiffOp::multiplication(x2a);
            DiffOp L = A * A + w * DiffOp::derivative(ps, 1);
            if (spec.family == Family::mironov_r3) return {L, std::nullopt};
            DiffOp M = A * A * A + Rat(3) * DiffOp::derivative(ps, 4) +
                       x2a * (Rat(3) * DiffOp::derivative(ps, 1)) +
                       DiffOp::multiplication(Rat(3) * CoefPoly::x(ps));
            return {L, M};
        }

        case Family::mokhov_2k: {
            // the D^3 term dominates D^2k when k = 1, so the stated order 4k
            // (and the rank-2k claim) starts at k = 2
            if (spec.k < 2) throw std::invalid_argument("build: mokhov-2k needs k >= 2");
            CoefPoly alpha = detail::scalar_or_symbol(spec.alpha, "alpha", false);
            const ParamSet& ps = alpha.params();
            unsigned k = spec.k;
            DiffOp A = DiffOp::derivative(ps, 2 * k);
            A -= Rat(2) * (CoefPoly::x(ps) * DiffOp::derivative(ps, k));
            A -= Rat(static_cast<long>(k)) * DiffOp::derivative(ps, k - 1);
            A += DiffOp::derivative(ps, 3);
            A += DiffOp::multiplication(CoefPoly::x(ps, 2) + alpha);
            DiffOp L = A * A + gg * DiffOp::derivative(ps, 1);
            return {L, std::nullopt};
        }

        case Family::mokhov_3k: {
            if (spec.k < 1) throw std::invalid_argument("build: mokhov-3k needs k >= 1");
            CoefPoly alpha = detail::scalar_or_symbol(spec.alpha, "alpha", false);
            const ParamSet& ps = alpha.params();
            unsigned k = spec.k;
            DiffOp A = DiffOp::derivative(ps, 3 * k);
            A -= Rat(3) * (CoefPoly::x(ps) * DiffOp::derivative(ps, 2 * k));
            A -= Rat(3L * k) * DiffOp::derivative(ps, 2 * k - 1);
            A += Rat(3) * (CoefPoly::x(ps, 2) * DiffOp::derivative(ps, k));
            A += Rat(3L * k) * (CoefPoly::x(ps) * DiffOp::derivative(ps, k - 1));
            if (k >= 2) A += Rat(static_cast<long>(k) * (k - 1)) * DiffOp::derivative(ps, k - 2);
            A += DiffOp::derivative(ps, 2);
            A += DiffOp::multiplication(alpha - CoefPoly::x(ps, 3));
            DiffOp L = A * A - DiffOp::multiplication(gg * CoefPoly::x(ps));
            return {L, std::nullopt};
        }

        case Family::cheb_z: {
            if (spec.r < 1) throw std::invalid_argument("build: cheb-z needs r >= 1");
            CoefPoly a = detail::scalar_or_symbol(spec.a, "a", true);
            CoefPoly b = detail::scalar_or_symbol(spec.b, "b", false);
            ParamSet ps = union_params(a.params(), b.params());
            a = a.embedded_into(ps);
            b = b.embedded_into(ps);
            CoefPoly tr = chebyshev(spec.r).poly.embedded_into(ps);
            DiffOp inner =
                (CoefPoly::one(ps) - CoefPoly::x(ps, 2)) * DiffOp::derivative(ps, 2) -
                CoefPoly::x(ps) * DiffOp::derivative(ps, 1) + DiffOp::multiplication(a * tr + b);
            Rat rr(static_cast<long>(spec.r) * spec.r);
            DiffOp L = inner * inner - DiffOp::multiplication(rr * gg * (a * tr));
            return {L, std::nullopt};
        }

        case Family::cheb_canonical: {
            if (spec.r < 1) throw std::invalid_argument("build: cheb-canonical needs r >= 1");
            CoefPoly a = detail::scalar_or_symbol(spec.a, "a", true);
            CoefPoly b = detail::scalar_or_symbol(spec.b, "b", false);
            ParamSet ps = union_params(a.params(), b.params());
            a = a.embedded_into(ps);
            b = b.embedded_into(ps);
            DiffOp trD = cheb_operator(spec.r, ChebVar::D, ps);
            DiffOp inner = a * trD - CoefPoly::x(ps, 2) * DiffOp::derivative(ps, 2) -
                           Rat(3) * (CoefPoly::x(ps) * DiffOp::derivative(ps, 1)) +
                           DiffOp::multiplication(CoefPoly::x(ps, 2) + b);
            Rat rr(static_cast<long>(spec.r) * spec.r);
            DiffOp L = inner * inner - (rr * gg) * (a * trD);
            return {L, std::nullopt};
        }
    }
    throw std::invalid_argument("build: unknown family");
}

// When A - B is multiplication by a rational constant, returns it.
inline std::optional<Rat> additive_constant_difference(const DiffOp& a, const DiffOp& b) {
    DiffOp d = a - b;
    if (d.is_zero()) return Rat(0);
    if (*d.order() != 0) return std::nullopt;
    CoefPoly c = d.coeff(0);
    if (!c.is_rational()) return std::nullopt;
    return c.rational_value();
}

}  // namespace commop

#endif
