// commop: build, verify, and certify commuting differential operators with
// polynomial coefficients, exactly.
//
// Exit codes: 0 = success / verified, 1 = a mathematical verification failed
// (nonzero commutator, non-hyperelliptic pair, uncertified rank, ...),
// 2 = usage or input error.

#include <CLI11.hpp>

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "commop.hpp"
#include "commop/io.hpp"

namespace {

using namespace commop;

bool g_json = false;

void emit(const RunReport& report) { report.print(std::cout, g_json); }

int fail_math(RunReport& report, const std::string& message) {
    report.fact("error", message, "FAIL: " + message);
    emit(report);
    return 1;
}

CoefPoly parse_scalar_flag(const std::string& text) {
    CoefPoly value = parse_poly(text);
    if (!value.is_constant())
        throw std::invalid_argument("scalar flag value '" + text + "' is not x-free");
    return value;
}

std::string order_str(const DiffOp& op) {
    return op.order() ? std::to_string(*op.order()) : std::string("-inf");
}

int cmd_build(const std::string& family_str, unsigned r, unsigned g, unsigned k,
              const std::optional<std::string>& a, const std::optional<std::string>& b,
              const std::optional<std::string>& alpha, const std::string& out,
              const std::optional<std::string>& companion_out) {
    auto family = family_parse(family_str);
    if (!family) throw CLI::ValidationError("unknown family '" + family_str + "'");
    FamilySpec spec;
    spec.family = *family;
    spec.r = r;
    spec.g = g;
    spec.k = k;
    if (a) spec.a = parse_scalar_flag(*a);
    if (b) spec.b = parse_scalar_flag(*b);
    if (alpha) spec.alpha = parse_scalar_flag(*alpha);

    BuiltPair built = build(spec);
    save_operator(built.L, out);

    RunReport report("build");
    report.fact("family", family_str, "family: " + family_str);
    report.fact("order", *built.L.order(), "order(L) = " + order_str(built.L));
    report.fact("L", built.L.str(), "L = " + built.L.str());
    report.fact("output", out, "wrote " + out);
    if (companion_out) {
        if (!built.M)
            throw CLI::ValidationError("family '" + family_str +
                                       "' has no explicit companion operator");
        save_operator(*built.M, *companion_out);
        report.fact("companion_order", *built.M->order(), "order(M) = " + order_str(*built.M));
        report.fact("companion_output", *companion_out, "wrote " + *companion_out);
    }
    emit(report);
    return 0;
}

int cmd_cheb(long r) {
    ChebPoly t = chebyshev(r);
    RunReport report("cheb");
    report.fact("degree", t.degree, "degree: " + std::to_string(t.degree));
    report.fact("poly", t.poly.str(), "T = " + t.poly.str());
    emit(report);
    return 0;
}

int cmd_commutator(const std::string& a_path, const std::string& b_path) {
    auto [a, b] = DiffOp::aligned(load_operator(a_path), load_operator(b_path));
    DiffOp k = op_commutator(a, b);
    RunReport report("commutator");
    report.fact("commutator", k.str(), "[A, B] = " + k.str());
    report.fact("zero", k.is_zero(), k.is_zero() ? "operators commute" : "operators do NOT commute");
    emit(report);
    return k.is_zero() ? 0 : 1;
}

int cmd_adjoint(const std::string& path, const std::optional<std::string>& out) {
    DiffOp a = load_operator(path);
    DiffOp adj = formal_adjoint(a);
    RunReport report("adjoint");
    report.fact("adjoint", adj.str(), "A* = " + adj.str());
    report.fact("self_adjoint", adj == a, adj == a ? "A is self-adjoint" : "A is not self-adjoint");
    if (out) {
        save_operator(adj, *out);
        report.fact("output", *out, "wrote " + *out);
    }
    emit(report);
    return 0;
}

int cmd_canonical_check(const std::string& path) {
    CanonicalReport rep = canonical_check(load_operator(path));
    RunReport report("canonical-check");
    report.fact("is_monic", rep.is_monic,
                rep.is_monic ? "leading coefficient is 1" : "leading coefficient is not 1");
    report.fact("subleading_zero", rep.subleading_zero,
                rep.subleading_zero ? "subleading coefficient is 0"
                                    : "subleading coefficient is nonzero");
    report.fact("is_canonical", rep.is_canonical,
                rep.is_canonical ? "operator is in standard canonical form"
                                 : "operator is NOT in standard canonical form");
    emit(report);
    return rep.is_canonical ? 0 : 1;
}

int cmd_weyl_auto(const std::string& path, const std::string& out) {
    DiffOp image = weyl_automorphism(load_operator(path));
    save_operator(image, out);
    RunReport report("weyl-auto");
    report.fact("image", image.str(), "sigma(A) = " + image.str());
    report.fact("output", out, "wrote " + out);
    emit(report);
    return 0;
}

int cmd_find_m(const std::string& path, unsigned order, std::optional<unsigned> degree,
               unsigned cap, const std::string& out) {
    DiffOp L = load_operator(path);
    RunReport report("find-m");
    AnsatzSpec spec;
    spec.order = order;
    spec.degree_bound = degree;
    spec.degree_cap = cap;
    try {
        CentralizerBasis basis = solve_centralizer(L, spec);
        report.fact("dimension", basis.dimension(),
                    "centralizer dimension (order <= " + std::to_string(order) +
                        "): " + std::to_string(basis.dimension()));
        report.fact("degree_bound", basis.degree_bound_used,
                    "coefficient degree bound: " + std::to_string(basis.degree_bound_used));
        DiffOp M = select_M(basis, L, order);
        save_operator(M, out);
        report.fact("order", *M.order(), "order(M) = " + order_str(M));
        report.fact("M", M.str(), "M = " + M.str());
        report.fact("output", out, "wrote " + out);
    } catch (const std::domain_error& e) {
        return fail_math(report, e.what());
    }
    emit(report);
    return 0;
}

int cmd_curve(const std::string& l_path, const std::string& m_path) {
    auto [L, M] = DiffOp::aligned(load_operator(l_path), load_operator(m_path));
    RunReport report("curve");
    try {
        HyperellipticCurve curve = hyperelliptic_reduce(L, M);
        report.fact("genus", curve.genus, "genus: " + std::to_string(curve.genus));
        report.fact("curve", curve_to_json(curve), "mu^2 = " + curve.str());
        report.fact("a", curve_tuple_str(curve),
                    "(a_" + std::to_string(2 * curve.genus) + ", ..., a_0) = " +
                        curve_tuple_str(curve));
        if (curve.is_numeric()) {
            CurveReport diag = curve_report(curve);
            report.fact("discriminant", rat_str(diag.discriminant),
                        "discriminant: " + rat_str(diag.discriminant));
            report.fact("singular", diag.singular,
                        diag.singular ? "singular spectral curve" : "nonsingular spectral curve");
        }
    } catch (const std::domain_error& e) {
        return fail_math(report, e.what());
    }
    emit(report);
    return 0;
}

int cmd_verify_pair(const std::string& l_path, const std::string& m_path) {
    auto [L, M] = DiffOp::aligned(load_operator(l_path), load_operator(m_path));
    RunReport report("verify-pair");
    DiffOp k = op_commutator(L, M);
    report.fact("commute", k.is_zero(),
                k.is_zero() ? "[L, M] = 0" : "[L, M] != 0: " + k.str());
    if (!k.is_zero()) {
        emit(report);
        return 1;
    }
    try {
        HyperellipticCurve curve = hyperelliptic_reduce(L, M);
        bool roundtrip = poly_in_op(L, curve) == M * M;
        report.fact("curve", curve_to_json(curve), "mu^2 = " + curve.str());
        report.fact("roundtrip", roundtrip,
                    roundtrip ? "M^2 = f(L) verified exactly" : "curve round trip FAILED");
        report.fact("rank", rank_of(L, M),
                    "orders (" + order_str(L) + ", " + order_str(M) + "), rank " +
                        std::to_string(rank_of(L, M)));
        if (!roundtrip) {
            emit(report);
            return 1;
        }
    } catch (const std::domain_error& e) {
        return fail_math(report, e.what());
    }
    emit(report);
    return 0;
}

int cmd_mironov_verify(const std::string& v_str, const std::string& w_str,
                       const std::string& q_str, const std::string& curve_str) {
    std::vector<std::string> names = scan_parameter_names(v_str + " " + w_str + " " + q_str + " " +
                                                          curve_str + " lambda");
    ParamSet ps(names);
    CoefPoly v = parse_poly(v_str, ps), w = parse_poly(w_str, ps);
    QPoly q = qpoly_from_poly(parse_poly(q_str, ps));
    HyperellipticCurve curve = parse_curve(curve_str);
    RunReport report("mironov-verify");
    MironovCheck check = verify_mironov_relation({v, w}, q, curve);
    report.fact("genus", q.genus, "genus: " + std::to_string(q.genus));
    report.fact("ok", check.ok,
                check.ok ? "relation holds exactly"
                         : "relation FAILS first at lambda^" + std::to_string(check.first_mismatch) +
                               " (difference " + check.difference.str() + ")");
    emit(report);
    return check.ok ? 0 : 1;
}

int cmd_mironov_solve(const std::string& v_str, const std::string& w_str) {
    std::vector<std::string> names = scan_parameter_names(v_str + " " + w_str);
    ParamSet ps(names);
    CoefPoly v = parse_poly(v_str, ps), w = parse_poly(w_str, ps);
    RunReport report("mironov-solve-g1");
    try {
        auto [q, curve] = solve_mironov_g1({v, w});
        report.fact("Q", "lambda + (" + q.q[0].str() + ")", "Q = lambda + (" + q.q[0].str() + ")");
        report.fact("curve", curve_to_json(curve), "mu^2 = " + curve.str());
        report.fact("a", curve_tuple_str(curve), "(a_2, a_1, a_0) = " + curve_tuple_str(curve));
    } catch (const std::domain_error& e) {
        return fail_math(report, e.what());
    }
    emit(report);
    return 0;
}

int cmd_certify_rank(const std::string& l_path, const std::string& m_path,
                     const std::string& lambda_str) {
    auto [L, M] = DiffOp::aligned(load_operator(l_path), load_operator(m_path));
    Rat lambda = rat_parse(lambda_str);
    RunReport report("certify-rank");
    try {
        HyperellipticCurve curve = hyperelliptic_reduce(L, M);
        RankCertificate cert = certify_rank(L, M, curve, lambda);
        report.fact("lambda", rat_str(cert.lambda), "lambda = " + rat_str(cert.lambda));
        report.fact("f_lambda", rat_str(cert.f_lambda), "f(lambda) = " + rat_str(cert.f_lambda));
        report.fact("m_action", matrix_to_json(cert.action.matrix),
                    "M-action matrix is " + std::to_string(cert.action.matrix.size()) + "x" +
                        std::to_string(cert.action.matrix.size()));
        std::string cp = "(mu^2 - " + rat_str(cert.f_lambda) + ")^" + std::to_string(cert.rank);
        report.fact("charpoly_matches", cert.charpoly_matches,
                    cert.charpoly_matches ? "charpoly = " + cp : "charpoly does NOT equal " + cp);
        report.fact("square_matches", cert.square_matches,
                    cert.square_matches ? "matrix^2 = f(lambda) * I"
                                        : "matrix^2 != f(lambda) * I");
        report.fact("eigenspace_dims",
                    {{"plus", cert.dim_plus}, {"minus", cert.dim_minus}},
                    "eigenspace dimensions at +-sqrt(f): " + std::to_string(cert.dim_plus) + ", " +
                        std::to_string(cert.dim_minus));
        if (!cert.warning.empty()) report.fact("warning", cert.warning, "warning: " + cert.warning);
        report.fact("rank", cert.rank, "rank: " + std::to_string(cert.rank));
        report.fact("certified", cert.certified,
                    cert.certified ? "rank " + std::to_string(cert.rank) + " certified"
                                   : "rank NOT certified");
        emit(report);
        return cert.certified ? 0 : 1;
    } catch (const std::domain_error& e) {
        return fail_math(report, e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact commuting differential operators: families, companion search, "
                 "spectral curves, rank certification"};
    app.require_subcommand(1);
    app.add_flag("--json", g_json, "emit the structured report instead of text");

    // build
    std::string family, build_out;
    unsigned flag_r = 2, flag_g = 1, flag_k = 1;
    std::optional<std::string> flag_a, flag_b, flag_alpha, companion_out;
    auto* build_cmd = app.add_subcommand("build", "construct a family operator");
    build_cmd->add_option("family", family,
                          "dixmier-r2|dixmier-r3|mironov-r2|mironov-r3|mokhov-2k|mokhov-3k|"
                          "cheb-z|cheb-canonical")
        ->required();
    build_cmd->add_option("--r", flag_r, "rank parameter r (Chebyshev families)");
    build_cmd->add_option("--g", flag_g, "genus g");
    build_cmd->add_option("--k", flag_k, "k (Mokhov families)");
    build_cmd->add_option("--a", flag_a, "value for a (x-free expression; default symbolic)");
    build_cmd->add_option("--b", flag_b, "value for b (default symbolic)");
    build_cmd->add_option("--alpha", flag_alpha, "value for alpha (default symbolic)");
    build_cmd->add_option("-o,--output", build_out, "operator document to write")->required();
    build_cmd->add_option("--companion", companion_out,
                          "also write the explicit companion M (Dixmier families)");

    // cheb
    long cheb_r = 0;
    auto* cheb_cmd = app.add_subcommand("cheb", "print a Chebyshev polynomial of the first kind");
    cheb_cmd->add_option("r", cheb_r, "degree (negative allowed)")->required();

    // commutator
    std::string path_a, path_b;
    auto* comm_cmd = app.add_subcommand("commutator", "print [A, B]; exit 0 iff it is zero");
    comm_cmd->add_option("A", path_a)->required();
    comm_cmd->add_option("B", path_b)->required();

    // adjoint
    std::string adj_path;
    std::optional<std::string> adj_out;
    auto* adj_cmd = app.add_subcommand("adjoint", "formal adjoint");
    adj_cmd->add_option("A", adj_path)->required();
    adj_cmd->add_option("-o,--output", adj_out, "save the adjoint");

    // canonical-check
    std::string canon_path;
    auto* canon_cmd =
        app.add_subcommand("canonical-check", "monic with vanishing subleading coefficient?");
    canon_cmd->add_option("A", canon_path)->required();

    // weyl-auto
    std::string weyl_path, weyl_out;
    auto* weyl_cmd =
        app.add_subcommand("weyl-auto", "apply the Weyl-algebra automorphism x -> D, D -> -x");
    weyl_cmd->add_option("A", weyl_path)->required();
    weyl_cmd->add_option("-o,--output", weyl_out)->required();

    // find-m
    std::string findm_path, findm_out;
    unsigned findm_order = 0, findm_cap = 64;
    std::optional<unsigned> findm_degree;
    auto* findm_cmd =
        app.add_subcommand("find-m", "solve [L, M] = 0 for the companion of a given order");
    findm_cmd->add_option("L", findm_path)->required();
    findm_cmd->add_option("--order", findm_order, "target order of M")->required();
    findm_cmd->add_option("--degree", findm_degree, "coefficient degree bound (default heuristic)");
    findm_cmd->add_option("--degree-cap", findm_cap, "escalation cap for the degree bound");
    findm_cmd->add_option("-o,--output", findm_out)->required();

    // curve
    std::string curve_l, curve_m;
    auto* curve_cmd =
        app.add_subcommand("curve", "extract the hyperelliptic spectral curve of a pair");
    curve_cmd->add_option("L", curve_l)->required();
    curve_cmd->add_option("M", curve_m)->required();

    // verify-pair
    std::string verify_l, verify_m;
    auto* verify_cmd = app.add_subcommand(
        "verify-pair", "check [L, M] = 0 and the exact curve round trip M^2 = f(L)");
    verify_cmd->add_option("L", verify_l)->required();
    verify_cmd->add_option("M", verify_m)->required();

    // mironov-verify
    std::string mv_v, mv_w, mv_q, mv_curve;
    auto* mv_cmd = app.add_subcommand("mironov-verify",
                                      "check the self-adjoint rank-2 relation for (V, W, Q, curve)");
    mv_cmd->add_option("--V", mv_v, "potential V(x)")->required();
    mv_cmd->add_option("--W", mv_w, "potential W(x)")->required();
    mv_cmd->add_option("--Q", mv_q, "monic polynomial in lambda, e.g. 'lambda + x'")->required();
    mv_cmd->add_option("--curve", mv_curve, "a_2g,...,a_0 (high to low)")->required();

    // mironov-solve-g1
    std::string ms_v, ms_w;
    auto* ms_cmd = app.add_subcommand("mironov-solve-g1",
                                      "solve the genus-1 relation for Q and the curve from (V, W)");
    ms_cmd->add_option("--V", ms_v)->required();
    ms_cmd->add_option("--W", ms_w)->required();

    // certify-rank
    std::string cr_l, cr_m, cr_lambda;
    auto* cr_cmd = app.add_subcommand(
        "certify-rank", "certify the joint eigenspace structure at a rational spectral point");
    cr_cmd->add_option("L", cr_l)->required();
    cr_cmd->add_option("M", cr_m)->required();
    cr_cmd->add_option("--lambda", cr_lambda, "rational spectral point p/q")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage errors are always exit 2
    }

    try {
        if (*build_cmd)
            return cmd_build(family, flag_r, flag_g, flag_k, flag_a, flag_b, flag_alpha, build_out,
                             companion_out);
        if (*cheb_cmd) return cmd_cheb(cheb_r);
        if (*comm_cmd) return cmd_commutator(path_a, path_b);
        if (*adj_cmd) return cmd_adjoint(adj_path, adj_out);
        if (*canon_cmd) return cmd_canonical_check(canon_path);
        if (*weyl_cmd) return cmd_weyl_auto(weyl_path, weyl_out);
        if (*findm_cmd) return cmd_find_m(findm_path, findm_order, findm_degree, findm_cap, findm_out);
        if (*curve_cmd) return cmd_curve(curve_l, curve_m);
        if (*verify_cmd) return cmd_verify_pair(verify_l, verify_m);
        if (*mv_cmd) return cmd_mironov_verify(mv_v, mv_w, mv_q, mv_curve);
        if (*ms_cmd) return cmd_mironov_solve(ms_v, ms_w);
        if (*cr_cmd) return cmd_certify_rank(cr_l, cr_m, cr_lambda);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
