#ifndef COMMOP_OPERATOR_HPP
#define COMMOP_OPERATOR_HPP

// Ordinary differential operators sum c_i(x) D^i with CoefPoly coefficients,
// kept in normal form (multiplication operators to the left of derivatives).
// Together with x this realizes the Weyl algebra: the whole multiplication
// law is generated by the single relation D x = x D + 1.

#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace commop {

class DiffOp {
  public:
    DiffOp() = default;
    explicit DiffOp(ParamSet ps) : params_(std::move(ps)) {}

    static DiffOp zero(const ParamSet& ps) { return DiffOp(ps); }

    static DiffOp identity(const ParamSet& ps) { return multiplication(CoefPoly::one(ps)); }

    // D^i with constant coefficient 1.
    static DiffOp derivative(const ParamSet& ps, unsigned i = 1) {
        DiffOp op(ps);
        op.set_coeff(i, CoefPoly::one(ps));
        return op;
    }

    // The multiplication operator f(x)*Id.
    static DiffOp multiplication(const CoefPoly& f) {
        DiffOp op(f.params());
        op.set_coeff(0, f);
        return op;
    }

    const ParamSet& params() const { return params_; }
    const std::map<unsigned, CoefPoly>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Highest stored derivative order; nullopt is the zero operator's sentinel.
    std::optional<unsigned> order() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.rbegin()->first;
    }

    CoefPoly coeff(unsigned i) const {
        auto it = coeffs_.find(i);
        return it == coeffs_.end() ? CoefPoly::zero(params_) : it->second;
    }

    CoefPoly leading_coeff() const {
        if (coeffs_.empty()) throw std::invalid_argument("leading_coeff: zero operator");
        return coeffs_.rbegin()->second;
    }

    void set_coeff(unsigned i, const CoefPoly& c) {
        CoefPoly ce = c.params() == params_ ? c : c.embedded_into(params_);
        if (ce.is_zero())
            coeffs_.erase(i);
        else
            coeffs_.insert_or_assign(i, std::move(ce));
    }

    void add_to_coeff(unsigned i, const CoefPoly& c) { set_coeff(i, coeff(i) + c); }

    int max_deg_x() const {
        int d = -1;
        for (const auto& [i, c] : coeffs_) d = std::max(d, c.deg_x());
        return d;
    }

    bool operator==(const DiffOp&) const = default;

    DiffOp operator-() const {
        DiffOp out(params_);
        for (const auto& [i, c] : coeffs_) out.coeffs_.emplace(i, -c);
        return out;
    }

    friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
        auto [ae, be] = aligned(a, b);
        DiffOp out = ae;
        for (const auto& [i, c] : be.coeffs_) out.add_to_coeff(i, c);
        return out;
    }

    friend DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + (-b); }

    // Normal-form product. Leibniz:
    //   f D^i  *  g D^j  =  sum_{k=0..i} C(i,k) f g^(k) D^(i+j-k).
    friend DiffOp operator*(const DiffOp& a, const DiffOp& b) {
        auto [ae, be] = aligned(a, b);
        DiffOp out(ae.params_);
        unsigned max_i = ae.coeffs_.empty() ? 0 : ae.coeffs_.rbegin()->first;
        for (const auto& [j, g] : be.coeffs_) {
            // derivatives of g reused across all terms of a
            std::vector<CoefPoly> gd{g};
            for (unsigned k = 1; k <= max_i; ++k) {
                if (gd.back().is_zero()) break;
                gd.push_back(gd.back().dx());
            }
            for (const auto& [i, f] : ae.coeffs_) {
                for (unsigned k = 0; k <= i && k < gd.size(); ++k) {
                    if (gd[k].is_zero()) break;
                    out.add_to_coeff(i + j - k, Rat(binomial(i, k)) * (f * gd[k]));
                }
            }
        }
        return out;
    }

    DiffOp& operator+=(const DiffOp& b) { return *this = *this + b; }
    DiffOp& operator-=(const DiffOp& b) { return *this = *this - b; }
    DiffOp& operator*=(const DiffOp& b) { return *this = *this * b; }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            const auto& [i, c] = *it;
            if (!first) os << " + ";
            first = false;
            if (i == 0) {
                os << "(" << c.str() << ")";
            } else {
                std::string d = i == 1 ? "D" : "D^" + std::to_string(i);
                if (c == CoefPoly::one(params_))
                    os << d;
                else
                    os << "(" << c.str() << ")*" << d;
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const DiffOp& op) { return os << op.str(); }

    static std::pair<DiffOp, DiffOp> aligned(const DiffOp& a, const DiffOp& b) {
        if (a.params_ == b.params_) return {a, b};
        if (a.params_.subset_of(b.params_)) return {a.embedded_into(b.params_), b};
        if (b.params_.subset_of(a.params_)) return {a, b.embedded_into(a.params_)};
        throw std::invalid_argument("DiffOp: incompatible paramsets " + a.params_.describe() +
                                    " and " + b.params_.describe());
    }

    DiffOp embedded_into(const ParamSet& target) const {
        DiffOp out(target);
        for (const auto& [i, c] : coeffs_) out.set_coeff(i, c.embedded_into(target));
        return out;
    }

    DiffOp subst(const std::map<std::string, Rat>& bindings) const {
        DiffOp out;
        bool started = false;
        for (const auto& [i, c] : coeffs_) {
            CoefPoly cs = c.subst(bindings);
            if (!started) {
                out = DiffOp(cs.params());
                started = true;
            }
            out.set_coeff(i, cs);
        }
        if (!started) {
            // zero operator: the new paramset is the old one minus bound names
            std::vector<std::string> kept;
            for (const auto& n : params_.names())
                if (!bindings.count(n)) kept.push_back(n);
            out = DiffOp(ParamSet(kept));
        }
        return out;
    }

  private:
    ParamSet params_;
    std::map<unsigned, CoefPoly> coeffs_;
};

inline bool uses_parameters(const DiffOp& a) {
    for (const auto& [i, c] : a.coeffs())
        if (uses_parameters(c)) return true;
    return false;
}

inline DiffOp operator*(const CoefPoly& f, const DiffOp& a) { return DiffOp::multiplication(f) * a; }
inline DiffOp operator*(const Rat& s, const DiffOp& a) {
    return DiffOp::multiplication(CoefPoly::constant(a.params(), s)) * a;
}

// Left multiplication by a coefficient function (the spec's op_scale).
inline DiffOp op_scale(const DiffOp& a, const CoefPoly& f) { return f * a; }

inline DiffOp op_commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

inline DiffOp op_pow(const DiffOp& a, unsigned k) {
    DiffOp acc = DiffOp::identity(a.params());
    DiffOp base = a;
    while (k) {  // binary exponentiation; op_mul is associative
        if (k & 1u) acc = acc * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return acc;
}

// Formal adjoint: sum c_i D^i  ->  sum (-1)^i D^i o c_i, renormalized.
inline DiffOp formal_adjoint(const DiffOp& a) {
    DiffOp out = DiffOp::zero(a.params());
    for (const auto& [i, c] : a.coeffs()) {
        DiffOp term = DiffOp::derivative(a.params(), i) * DiffOp::multiplication(c);
        out = (i % 2 == 0) ? out + term : out - term;
    }
    return out;
}

struct CanonicalReport {
    bool is_monic = false;        // leading coefficient identically 1
    bool subleading_zero = false; // c_{n-1} identically 0
    bool is_canonical = false;    // both
};

inline CanonicalReport canonical_check(const DiffOp& a) {
    if (a.is_zero()) throw std::invalid_argument("canonical_check: zero operator");
    unsigned n = *a.order();
    CanonicalReport rep;
    rep.is_monic = a.leading_coeff() == CoefPoly::one(a.params());
    rep.subleading_zero = n == 0 || a.coeff(n - 1).is_zero();
    rep.is_canonical = rep.is_monic && rep.subleading_zero;
    return rep;
}

// The Weyl-algebra automorphism sigma with sigma(x) = D, sigma(D) = -x,
// applied monomialwise: x^e D^i -> D^e o (-x)^i, normal-ordered through the
// algebra's own multiplication. sigma is an automorphism and sigma^4 = id.
inline DiffOp weyl_automorphism(const DiffOp& a) {
    const ParamSet& ps = a.params();
    DiffOp out = DiffOp::zero(ps);
    for (const auto& [i, c] : a.coeffs()) {
        for (const auto& [m, q] : c.terms()) {
            // sigma(q * pi * x^e D^i) = q * pi * D^e o ((-1)^i x^i)
            CoefPoly xi = CoefPoly::x(ps, i) * Rat(i % 2 == 0 ? 1 : -1);
            CoefPoly pi(ps);
            pi.add_term(Monomial{0, m.p_exp}, q);
            out += DiffOp::multiplication(pi) *
                   (DiffOp::derivative(ps, m.x_exp) * DiffOp::multiplication(xi));
        }
    }
    return out;
}

}  // namespace commop

#endif
