#ifndef COMMOP_POLYNOMIAL_HPP
#define COMMOP_POLYNOMIAL_HPP

// Sparse exact polynomials in the distinguished variable x and a declared set
// of symbolic parameters (central constants such as alpha, a, b). This ring is
// the coefficient domain for every differential operator in the library.
//
// Canonical form: terms live in a std::map keyed by monomial under graded
// lexicographic order and zero coefficients are never stored, so structural
// equality coincides with mathematical equality.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rational.hpp"

namespace commop {

// Ordered list of distinct parameter names. Names must be nonempty, unique,
// and distinct from the variable "x" (and from "D", which the operator layer
// and the expression parser reserve for the derivative).
class ParamSet {
  public:
    ParamSet() = default;

    explicit ParamSet(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (names_[i].empty()) throw std::invalid_argument("ParamSet: empty parameter name");
            if (names_[i] == "x" || names_[i] == "D")
                throw std::invalid_argument("ParamSet: reserved name '" + names_[i] + "'");
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("ParamSet: duplicate parameter '" + names_[i] + "'");
        }
    }

    std::size_t size() const { return names_.size(); }
    bool empty() const { return names_.empty(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    bool contains(std::string_view name) const { return index_of(name).has_value(); }

    // True when every name of this set occurs in `other`.
    bool subset_of(const ParamSet& other) const {
        return std::all_of(names_.begin(), names_.end(),
                           [&](const std::string& n) { return other.contains(n); });
    }

    std::string describe() const {
        std::string s = "{";
        for (std::size_t i = 0; i < names_.size(); ++i) s += (i ? "," : "") + names_[i];
        return s + "}";
    }

    bool operator==(const ParamSet&) const = default;

  private:
    std::vector<std::string> names_;
};

// x^e * prod(param_i^p_exp[i]); p_exp.size() equals the ambient ParamSet size.
struct Monomial {
    unsigned x_exp = 0;
    std::vector<unsigned> p_exp;

    unsigned total_degree() const {
        unsigned t = x_exp;
        for (unsigned e : p_exp) t += e;
        return t;
    }

    bool operator==(const Monomial&) const = default;

    // Graded lexicographic: total degree first, then x, then the parameters in
    // ParamSet order. A fixed total order makes the term map canonical.
    bool operator<(const Monomial& o) const {
        unsigned ta = total_degree(), tb = o.total_degree();
        if (ta != tb) return ta < tb;
        if (x_exp != o.x_exp) return x_exp < o.x_exp;
        return p_exp < o.p_exp;
    }
};

class CoefPoly {
  public:
    CoefPoly() = default;
    explicit CoefPoly(ParamSet ps) : params_(std::move(ps)) {}

    static CoefPoly zero(const ParamSet& ps) { return CoefPoly(ps); }

    static CoefPoly constant(const ParamSet& ps, const Rat& c) {
        CoefPoly p(ps);
        p.add_term(Monomial{0, std::vector<unsigned>(ps.size(), 0)}, c);
        return p;
    }

    static CoefPoly one(const ParamSet& ps) { return constant(ps, Rat(1)); }

    static CoefPoly x(const ParamSet& ps, unsigned exp = 1) {
        CoefPoly p(ps);
        p.add_term(Monomial{exp, std::vector<unsigned>(ps.size(), 0)}, Rat(1));
        return p;
    }

    static CoefPoly param(const ParamSet& ps, std::string_view name) {
        auto idx = ps.index_of(name);
        if (!idx)
            throw std::invalid_argument("CoefPoly::param: '" + std::string(name) +
                                        "' not in paramset " + ps.describe());
        Monomial m{0, std::vector<unsigned>(ps.size(), 0)};
        m.p_exp[*idx] = 1;
        CoefPoly p(ps);
        p.add_term(m, Rat(1));
        return p;
    }

    const ParamSet& params() const { return params_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Degree in x; -1 for the zero polynomial.
    int deg_x() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.x_exp));
        return d;
    }

    void add_term(const Monomial& m, const Rat& c) {
        if (m.p_exp.size() != params_.size())
            throw std::invalid_argument("CoefPoly::add_term: monomial width mismatch");
        if (sgn(c) == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    // Re-keys the terms into a paramset that contains every parameter this
    // polynomial actually uses. Rationals (empty paramset) embed anywhere.
    CoefPoly embedded_into(const ParamSet& target) const {
        if (params_ == target) return *this;
        std::vector<std::optional<std::size_t>> remap(params_.size());
        for (std::size_t i = 0; i < params_.size(); ++i) remap[i] = target.index_of(params_.name(i));
        CoefPoly out(target);
        for (const auto& [m, c] : terms_) {
            Monomial nm{m.x_exp, std::vector<unsigned>(target.size(), 0)};
            for (std::size_t i = 0; i < m.p_exp.size(); ++i) {
                if (m.p_exp[i] == 0) continue;
                if (!remap[i])
                    throw std::invalid_argument("CoefPoly: parameter '" + params_.name(i) +
                                                "' does not exist in paramset " + target.describe());
                nm.p_exp[*remap[i]] += m.p_exp[i];
            }
            out.add_term(nm, c);
        }
        return out;
    }

    bool operator==(const CoefPoly&) const = default;

    CoefPoly operator-() const {
        CoefPoly out(params_);
        for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
        return out;
    }

    friend CoefPoly operator+(const CoefPoly& a, const CoefPoly& b) {
        auto [ae, be] = aligned(a, b);
        CoefPoly out = ae;
        for (const auto& [m, c] : be.terms_) out.add_term(m, c);
        return out;
    }

    friend CoefPoly operator-(const CoefPoly& a, const CoefPoly& b) {
        auto [ae, be] = aligned(a, b);
        CoefPoly out = ae;
        for (const auto& [m, c] : be.terms_) out.add_term(m, -c);
        return out;
    }

    friend CoefPoly operator*(const CoefPoly& a, const CoefPoly& b) {
        auto [ae, be] = aligned(a, b);
        CoefPoly out(ae.params_);
        for (const auto& [ma, ca] : ae.terms_) {
            for (const auto& [mb, cb] : be.terms_) {
                Monomial m{ma.x_exp + mb.x_exp, ma.p_exp};
                for (std::size_t i = 0; i < m.p_exp.size(); ++i) m.p_exp[i] += mb.p_exp[i];
                out.add_term(m, ca * cb);
            }
        }
        return out;
    }

    friend CoefPoly operator*(const CoefPoly& a, const Rat& s) {
        CoefPoly out(a.params_);
        if (sgn(s) == 0) return out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, c * s);
        return out;
    }
    friend CoefPoly operator*(const Rat& s, const CoefPoly& a) { return a * s; }

    CoefPoly& operator+=(const CoefPoly& b) { return *this = *this + b; }
    CoefPoly& operator-=(const CoefPoly& b) { return *this = *this - b; }
    CoefPoly& operator*=(const CoefPoly& b) { return *this = *this * b; }

    // Formal d/dx; parameters are constants.
    CoefPoly dx() const {
        CoefPoly out(params_);
        for (const auto& [m, c] : terms_) {
            if (m.x_exp == 0) continue;
            out.add_term(Monomial{m.x_exp - 1, m.p_exp}, c * Rat(m.x_exp));
        }
        return out;
    }

    // Replaces bound parameters by exact rationals; the result lives in the
    // paramset with the bound names removed.
    CoefPoly subst(const std::map<std::string, Rat>& bindings) const {
        std::vector<std::optional<Rat>> value(params_.size());
        for (const auto& [name, v] : bindings) {
            auto idx = params_.index_of(name);
            if (!idx)
                throw std::invalid_argument("CoefPoly::subst: unknown parameter '" + name +
                                            "' (paramset " + params_.describe() + ")");
            value[*idx] = v;
        }
        std::vector<std::string> kept;
        for (std::size_t i = 0; i < params_.size(); ++i)
            if (!value[i]) kept.push_back(params_.name(i));
        CoefPoly out{ParamSet(kept)};
        for (const auto& [m, c] : terms_) {
            Rat coeff = c;
            Monomial nm{m.x_exp, std::vector<unsigned>(kept.size(), 0)};
            std::size_t k = 0;
            for (std::size_t i = 0; i < params_.size(); ++i) {
                if (value[i])
                    coeff *= rat_pow(*value[i], m.p_exp[i]);
                else
                    nm.p_exp[k++] = m.p_exp[i];
            }
            out.add_term(nm, coeff);
        }
        return out;
    }

    // The x-free part iff the polynomial has x-degree <= 0; absent otherwise.
    std::optional<CoefPoly> is_constant() const {
        if (deg_x() > 0) return std::nullopt;
        return *this;
    }

    // True when the polynomial is a plain rational (no x, no parameters).
    bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0); }

    // The value of a rational polynomial; throws if x or a parameter occurs.
    Rat rational_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_rational())
            throw std::invalid_argument("CoefPoly::rational_value: not a rational constant: " + str());
        return terms_.begin()->second;
    }

    // Coefficient of x^e as a polynomial in the parameters only (x-degree 0).
    CoefPoly coeff_of_x(unsigned e) const {
        CoefPoly out(params_);
        for (const auto& [m, c] : terms_)
            if (m.x_exp == e) out.add_term(Monomial{0, m.p_exp}, c);
        return out;
    }

    // Splits into the x-free part and the remainder.
    CoefPoly x_free_part() const { return coeff_of_x(0); }
    CoefPoly x_dependent_part() const { return *this - coeff_of_x(0); }

    // Evaluates at a rational x; parameters must be absent.
    Rat eval_at_x(const Rat& v) const {
        Rat acc(0);
        for (const auto& [m, c] : terms_) {
            for (unsigned e : m.p_exp)
                if (e) throw std::invalid_argument("CoefPoly::eval_at_x: symbolic parameter present");
            acc += c * rat_pow(v, m.x_exp);
        }
        return acc;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        // print leading monomials first
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rat a = abs(c);
            if (first) {
                if (sgn(c) < 0) os << "-";
                first = false;
            } else {
                os << (sgn(c) < 0 ? " - " : " + ");
            }
            std::vector<std::string> factors;
            if (m.x_exp == 1) factors.push_back("x");
            else if (m.x_exp > 1) factors.push_back("x^" + std::to_string(m.x_exp));
            for (std::size_t i = 0; i < m.p_exp.size(); ++i) {
                if (m.p_exp[i] == 1) factors.push_back(params_.name(i));
                else if (m.p_exp[i] > 1) factors.push_back(params_.name(i) + "^" + std::to_string(m.p_exp[i]));
            }
            if (factors.empty()) {
                os << rat_str(a);
            } else {
                bool coef_shown = !(a == 1);
                if (coef_shown) os << rat_str(a);
                for (std::size_t i = 0; i < factors.size(); ++i) {
                    if (coef_shown || i) os << "*";
                    os << factors[i];
                }
            }
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CoefPoly& p) { return os << p.str(); }

    // Chooses a common paramset for two operands, embedding as needed.
    static std::pair<CoefPoly, CoefPoly> aligned(const CoefPoly& a, const CoefPoly& b) {
        if (a.params_ == b.params_) return {a, b};
        if (a.params_.subset_of(b.params_)) return {a.embedded_into(b.params_), b};
        if (b.params_.subset_of(a.params_)) return {a, b.embedded_into(a.params_)};
        throw std::invalid_argument("CoefPoly: incompatible paramsets " + a.params_.describe() +
                                    " and " + b.params_.describe());
    }

  private:
    ParamSet params_;
    std::map<Monomial, Rat> terms_;
};

// Smallest paramset containing both; keeps the larger set's order when one
// contains the other, otherwise merges and sorts for determinism.
inline ParamSet union_params(const ParamSet& a, const ParamSet& b) {
    if (a.subset_of(b)) return b;
    if (b.subset_of(a)) return a;
    std::vector<std::string> names = a.names();
    for (const auto& n : b.names())
        if (!a.contains(n)) names.push_back(n);
    std::sort(names.begin(), names.end());
    return ParamSet(names);
}

// True when some term carries a symbolic parameter.
inline bool uses_parameters(const CoefPoly& p) {
    for (const auto& [m, c] : p.terms())
        for (unsigned e : m.p_exp)
            if (e) return true;
    return false;
}

// Leading term under the graded-lex order; undefined on zero.
inline std::pair<Monomial, Rat> leading_term(const CoefPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("leading_term: zero polynomial");
    return *p.terms().rbegin();
}

// Exact division p / q in the polynomial ring; nullopt when q does not divide
// p. Single-divisor multivariate division: the leading term of any multiple of
// q is divisible by the leading term of q, so the loop is sound and complete.
inline std::optional<CoefPoly> exact_divide(const CoefPoly& p, const CoefPoly& q) {
    if (q.is_zero()) throw std::invalid_argument("exact_divide: division by zero");
    auto [pe, qe] = CoefPoly::aligned(p, q);
    const auto [qm, qc] = leading_term(qe);
    CoefPoly rem = pe, quot(pe.params());
    while (!rem.is_zero()) {
        const auto [rm, rc] = leading_term(rem);
        if (rm.x_exp < qm.x_exp) return std::nullopt;
        Monomial t{rm.x_exp - qm.x_exp, rm.p_exp};
        for (std::size_t i = 0; i < t.p_exp.size(); ++i) {
            if (t.p_exp[i] < qm.p_exp[i]) return std::nullopt;
            t.p_exp[i] -= qm.p_exp[i];
        }
        CoefPoly mono(pe.params());
        mono.add_term(t, rc / qc);
        quot += mono;
        rem -= mono * qe;
    }
    return quot;
}

}  // namespace commop

#endif
