#ifndef COMMOP_IO_HPP
#define COMMOP_IO_HPP

// Interchange: the versioned operator document (lossless JSON, rationals as
// lowest-term strings), a small expression parser for operators and
// polynomials ("(D^2 + x^3 + alpha)^2 + 2*x"), and the report type shared by
// the command-line subcommands.

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "operator.hpp"
#include "selfadjoint.hpp"
#include "spectral.hpp"

namespace commop {

inline constexpr const char* kOperatorFormat = "commop-operator";
inline constexpr int kOperatorVersion = 1;

inline nlohmann::json operator_to_json(const DiffOp& op) {
    nlohmann::json doc;
    doc["format"] = kOperatorFormat;
    doc["version"] = kOperatorVersion;
    doc["params"] = op.params().names();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [i, c] : op.coeffs()) {
        nlohmann::json coeff = nlohmann::json::array();
        for (const auto& [m, q] : c.terms()) {
            nlohmann::json monos = nlohmann::json::array();
            for (std::size_t p = 0; p < m.p_exp.size(); ++p)
                if (m.p_exp[p] > 0)
                    monos.push_back({op.params().name(p), m.p_exp[p]});
            coeff.push_back({{"c", rat_str(q)}, {"x", m.x_exp}, {"p", monos}});
        }
        terms.push_back({{"order", i}, {"coeff", coeff}});
    }
    doc["terms"] = terms;
    return doc;
}

inline DiffOp operator_from_json(const nlohmann::json& doc) {
    if (!doc.is_object() || doc.value("format", "") != kOperatorFormat)
        throw std::invalid_argument("operator document: missing format tag '" +
                                    std::string(kOperatorFormat) + "'");
    if (doc.value("version", 0) != kOperatorVersion)
        throw std::invalid_argument("operator document: unsupported version");
    try {
        ParamSet ps(doc.at("params").get<std::vector<std::string>>());
        DiffOp op(ps);
        for (const auto& term : doc.at("terms")) {
            unsigned order = term.at("order").get<unsigned>();
            CoefPoly c(ps);
            for (const auto& mono : term.at("coeff")) {
                Monomial m{mono.at("x").get<unsigned>(), std::vector<unsigned>(ps.size(), 0)};
                for (const auto& pe : mono.at("p")) {
                    auto idx = ps.index_of(pe.at(0).get<std::string>());
                    if (!idx)
                        throw std::invalid_argument("operator document: parameter '" +
                                                    pe.at(0).get<std::string>() +
                                                    "' not in the document paramset");
                    m.p_exp[*idx] += pe.at(1).get<unsigned>();
                }
                c.add_term(m, rat_parse(mono.at("c").get<std::string>()));
            }
            op.add_to_coeff(order, c);
        }
        return op;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("operator document is malformed: ") + e.what());
    }
}

inline void save_operator(const DiffOp& op, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << operator_to_json(op).dump(2) << "\n";
}

inline DiffOp load_operator(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
    return operator_from_json(doc);
}

// ---------------------------------------------------------------------------
// Expression parser. Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*        '/' needs a rational divisor
//   factor := atom ['^' integer]
//   atom   := integer | 'x' | 'D' | name | '(' expr ')'
// Multiplication is the normal-form operator product, so "D*x" is x*D + 1.

namespace detail {

struct ExprParser {
    std::string_view text;
    std::size_t pos = 0;
    const ParamSet& ps;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& why) {
        throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + why +
                                    " in '" + std::string(text) + "'");
    }

    Int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected an integer");
        return Int(std::string(text.substr(start, pos - start)));
    }

    std::string name() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }

    DiffOp atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return DiffOp::multiplication(CoefPoly::constant(ps, Rat(integer())));
        if (c == '(') {
            ++pos;
            DiffOp inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id = name();
            if (id == "x") return DiffOp::multiplication(CoefPoly::x(ps));
            if (id == "D") return DiffOp::derivative(ps, 1);
            if (!ps.contains(id)) fail("unknown symbol '" + id + "'");
            return DiffOp::multiplication(CoefPoly::param(ps, id));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    DiffOp factor() {
        DiffOp base = atom();
        if (eat('^')) {
            Int e = integer();
            if (!e.fits_uint_p()) fail("exponent too large");
            return op_pow(base, e.get_ui());
        }
        return base;
    }

    DiffOp term() {
        DiffOp acc = factor();
        for (;;) {
            if (eat('*')) {
                acc = acc * factor();
            } else if (eat('/')) {
                DiffOp d = factor();
                if (d.is_zero()) fail("division by zero");
                if (*d.order() != 0 || !d.coeff(0).is_rational())
                    fail("divisor must be a rational constant");
                acc = (Rat(1) / d.coeff(0).rational_value()) * acc;
            } else {
                return acc;
            }
        }
    }

    DiffOp expr() {
        bool neg = eat('-');
        DiffOp acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }
};

}  // namespace detail

// Names occurring in the expression other than x and D, sorted and deduped.
inline std::vector<std::string> scan_parameter_names(const std::string& text) {
    std::set<std::string> found;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
                ++i;
            std::string id = text.substr(start, i - start);
            if (id != "x" && id != "D") found.insert(id);
        } else {
            ++i;
        }
    }
    return {found.begin(), found.end()};
}

inline DiffOp parse_operator(const std::string& text, const ParamSet& ps) {
    detail::ExprParser p{text, 0, ps};
    DiffOp result = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return result;
}

inline DiffOp parse_operator(const std::string& text) {
    return parse_operator(text, ParamSet(scan_parameter_names(text)));
}

inline CoefPoly parse_poly(const std::string& text, const ParamSet& ps) {
    DiffOp op = parse_operator(text, ps);
    if (op.is_zero()) return CoefPoly::zero(ps);
    if (*op.order() != 0)
        throw std::invalid_argument("expected a polynomial (no D): '" + text + "'");
    return op.coeff(0);
}

inline CoefPoly parse_poly(const std::string& text) {
    return parse_poly(text, ParamSet(scan_parameter_names(text)));
}

// Splits an x-and-lambda polynomial into a monic QPoly in lambda.
inline QPoly qpoly_from_poly(const CoefPoly& poly, const std::string& lambda_name = "lambda") {
    auto idx = poly.params().index_of(lambda_name);
    if (!idx) throw std::invalid_argument("Q polynomial must mention '" + lambda_name + "'");
    std::vector<std::string> rest;
    for (const auto& n : poly.params().names())
        if (n != lambda_name) rest.push_back(n);
    ParamSet qps(rest);
    unsigned genus = 0;
    for (const auto& [m, c] : poly.terms()) genus = std::max(genus, m.p_exp[*idx]);
    if (genus == 0) throw std::invalid_argument("Q polynomial must have positive lambda-degree");
    std::vector<CoefPoly> slices(genus + 1, CoefPoly::zero(qps));
    for (const auto& [m, c] : poly.terms()) {
        Monomial nm{m.x_exp, std::vector<unsigned>(qps.size(), 0)};
        std::size_t k = 0;
        for (std::size_t p = 0; p < m.p_exp.size(); ++p)
            if (p != *idx) nm.p_exp[k++] = m.p_exp[p];
        slices[m.p_exp[*idx]].add_term(nm, c);
    }
    if (!(slices[genus] == CoefPoly::one(qps)))
        throw std::invalid_argument("Q polynomial must be monic in lambda, leading coefficient " +
                                    slices[genus].str());
    QPoly q{genus, {}};
    for (unsigned k = 0; k < genus; ++k) q.q.push_back(slices[k]);
    return q;
}

// Parses "a_{2g}, ..., a_1, a_0" (high to low, odd length) into a curve.
inline HyperellipticCurve parse_curve(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() % 2 == 0)
        throw std::invalid_argument(
            "curve needs an odd number of coefficients a_2g..a_0, got " +
            std::to_string(parts.size()));
    HyperellipticCurve curve;
    curve.genus = static_cast<unsigned>((parts.size() - 1) / 2);
    curve.a.assign(parts.size(), CoefPoly{});
    for (std::size_t i = 0; i < parts.size(); ++i) {
        CoefPoly c = parse_poly(parts[i]);
        if (!c.is_constant())
            throw std::invalid_argument("curve coefficient '" + parts[i] + "' is not x-free");
        curve.a[parts.size() - 1 - i] = c;
    }
    return curve;
}

inline std::string curve_tuple_str(const HyperellipticCurve& curve) {
    std::string s = "(";
    for (std::size_t k = curve.a.size(); k-- > 0;) {
        s += curve.a[k].str();
        if (k > 0) s += ", ";
    }
    return s + ")";
}

inline nlohmann::json curve_to_json(const HyperellipticCurve& curve) {
    nlohmann::json a = nlohmann::json::array();
    for (std::size_t k = curve.a.size(); k-- > 0;) a.push_back(curve.a[k].str());
    return {{"genus", curve.genus}, {"equation", curve.str()}, {"a_high_to_low", a}};
}

inline nlohmann::json matrix_to_json(const RatMat& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
        nlohmann::json r = nlohmann::json::array();
        for (const Rat& q : row) r.push_back(rat_str(q));
        rows.push_back(r);
    }
    return rows;
}

// Shared result object: every human-readable line is backed by a structured
// fact, so the JSON rendering always contains what the text asserts.
struct RunReport {
    std::string command;
    nlohmann::json data = nlohmann::json::object();
    std::vector<std::string> lines;

    explicit RunReport(std::string cmd) : command(std::move(cmd)) { data["command"] = command; }

    void fact(const std::string& key, const nlohmann::json& value, const std::string& line) {
        data[key] = value;
        lines.push_back(line);
    }

    void print(std::ostream& os, bool as_json) const {
        if (as_json) {
            os << data.dump(2) << "\n";
        } else {
            for (const auto& l : lines) os << l << "\n";
        }
    }
};

}  // namespace commop

#endif
