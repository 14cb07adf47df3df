#ifndef COMMOP_EIGENSPACE_HPP
#define COMMOP_EIGENSPACE_HPP

// Exact certification of the joint eigenspace structure at a rational
// spectral point. The kernel of L - lambda is computed as truncated power
// series at the ordinary point x = 0 (Krichever-normalized: the i-th
// derivative of psi_j at 0 is delta_ij); M acts on that kernel as an exact
// rational matrix whose spectrum must match the curve mu^2 = f(lambda) with
// multiplicity equal to the rank. No tolerances anywhere: every assertion is
// an equality of exact rationals.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "operator.hpp"
#include "spectral.hpp"

namespace commop {

struct PowerSeries {
    int valid_to = -1;        // coefficients are exact through x^valid_to
    std::vector<Rat> coeff;   // size valid_to + 1

    Rat at(std::size_t k) const { return k < coeff.size() ? coeff[k] : Rat(0); }
};

namespace detail {

// x-coefficient table of a numeric operator: table[i][d] multiplies x^d D^i.
inline std::map<unsigned, std::vector<Rat>> dense_coeffs(const DiffOp& a) {
    if (uses_parameters(a))
        throw std::invalid_argument("series arithmetic needs all parameters instantiated");
    std::map<unsigned, std::vector<Rat>> table;
    for (const auto& [i, c] : a.coeffs()) {
        std::vector<Rat> row(static_cast<std::size_t>(c.deg_x()) + 1, Rat(0));
        for (const auto& [m, q] : c.terms()) row[m.x_exp] = q;
        table.emplace(i, std::move(row));
    }
    return table;
}

// falling factorial a (a-1) ... (a-i+1)
inline Rat falling(unsigned a, unsigned i) {
    Rat f(1);
    for (unsigned t = 0; t < i; ++t) f *= Rat(static_cast<long>(a - t));
    return f;
}

}  // namespace detail

// A(s) for a truncated series; the result is exact through valid_to - order(A).
inline PowerSeries apply_series(const DiffOp& a, const PowerSeries& s) {
    if (a.is_zero()) return {s.valid_to, std::vector<Rat>(s.coeff.size(), Rat(0))};
    unsigned ord = *a.order();
    int out_valid = s.valid_to - static_cast<int>(ord);
    if (out_valid < 0)
        throw std::invalid_argument("apply_series: series validity " + std::to_string(s.valid_to) +
                                    " too small for operator order " + std::to_string(ord));
    auto table = detail::dense_coeffs(a);
    PowerSeries out{out_valid, std::vector<Rat>(static_cast<std::size_t>(out_valid) + 1, Rat(0))};
    for (const auto& [i, row] : table) {
        for (std::size_t d = 0; d < row.size(); ++d) {
            if (sgn(row[d]) == 0) continue;
            for (int k = static_cast<int>(d); k <= out_valid; ++k) {
                unsigned src = static_cast<unsigned>(k) - static_cast<unsigned>(d) + i;
                out.coeff[k] += row[d] * detail::falling(src, i) * s.at(src);
            }
        }
    }
    return out;
}

struct SeriesKernel {
    Rat lambda;
    int truncation = 0;               // N
    std::vector<PowerSeries> basis;   // size order(L); psi_j = x^j/j! + O(x^n)
};

// Power-series basis of ker(L - lambda) at the ordinary point x = 0, exact
// rationals throughout. Each basis element satisfies (L - lambda) psi = 0
// through coefficient N - order(L).
inline SeriesKernel series_kernel(const DiffOp& L, const Rat& lambda, int trunc) {
    if (L.is_zero() || *L.order() < 1)
        throw std::invalid_argument("series_kernel: operator order must be >= 1");
    unsigned n = *L.order();
    if (trunc < static_cast<int>(n))
        throw std::invalid_argument("series_kernel: truncation " + std::to_string(trunc) +
                                    " below operator order " + std::to_string(n));
    auto table = detail::dense_coeffs(L);
    {
        const std::vector<Rat>& top = table.at(n);
        if (sgn(top[0]) == 0)
            throw std::domain_error(
                "series_kernel: leading coefficient vanishes at x = 0 (singular point; "
                "recentering is not supported)");
    }
    // fold the spectral shift into the order-0 coefficient
    {
        auto it = table.find(0);
        if (it == table.end() && sgn(lambda) != 0) table.emplace(0, std::vector<Rat>{-lambda});
        else if (it != table.end()) it->second[0] -= lambda;
    }

    SeriesKernel kernel{lambda, trunc, {}};
    for (unsigned j = 0; j < n; ++j) {
        PowerSeries psi{trunc, std::vector<Rat>(static_cast<std::size_t>(trunc) + 1, Rat(0))};
        psi.coeff[j] = Rat(1) / Rat(factorial(j));
        for (int t = 0; t + static_cast<int>(n) <= trunc; ++t) {
            // coefficient of x^t in (L - lambda) psi determines psi_{t+n}
            Rat acc(0);
            for (const auto& [i, row] : table) {
                for (std::size_t d = 0; d < row.size() && static_cast<int>(d) <= t; ++d) {
                    if (sgn(row[d]) == 0) continue;
                    unsigned src = static_cast<unsigned>(t) - static_cast<unsigned>(d) + i;
                    if (src == static_cast<unsigned>(t) + n && i == n && d == 0) continue;
                    acc += row[d] * detail::falling(src, i) * psi.at(src);
                }
            }
            Rat pivot = table.at(n)[0] * detail::falling(static_cast<unsigned>(t) + n, n);
            psi.coeff[static_cast<std::size_t>(t) + n] = -acc / pivot;
        }
        kernel.basis.push_back(std::move(psi));
    }
    return kernel;
}

struct MActionMatrix {
    RatMat matrix;   // entry (i, j): i-th normalized derivative at 0 of M psi_j
    Rat lambda;
    Rat f_lambda;    // curve value at lambda
};

// The action of M on ker(L - lambda) in the normalized basis. M preserves the
// kernel, so M psi_j = sum_i (d^i/dx^i (M psi_j))(0) psi_i exactly. The margin
// only pads the truncation; results are independent of it past the default.
inline MActionMatrix m_action(const DiffOp& L, const DiffOp& M, const Rat& lambda,
                              const HyperellipticCurve& curve, int margin = 4) {
    if (L.is_zero() || M.is_zero()) throw std::invalid_argument("m_action: zero operator");
    if (margin < 0) throw std::invalid_argument("m_action: margin must be >= 0");
    if (!op_commutator(L, M).is_zero())
        throw std::domain_error("m_action: [L, M] != 0, M does not preserve the kernel");
    unsigned n = *L.order();
    int trunc = static_cast<int>(n + *M.order()) + margin;
    SeriesKernel kernel = series_kernel(L, lambda, trunc);
    MActionMatrix out{RatMat(n, RatVec(n, Rat(0))), lambda, curve.eval(lambda)};
    for (unsigned j = 0; j < n; ++j) {
        PowerSeries w = apply_series(M, kernel.basis[j]);
        for (unsigned i = 0; i < n; ++i) out.matrix[i][j] = Rat(factorial(i)) * w.at(i);
    }
    return out;
}

struct RankCertificate {
    Rat lambda;
    Rat f_lambda;
    MActionMatrix action;
    RatVec charpoly_coeffs;          // monic, index = power of mu
    unsigned rank = 0;               // gcd(order L, order M)
    bool generic = false;            // f(lambda) != 0
    bool charpoly_matches = false;   // charpoly == (mu^2 - f)^rank
    bool square_matches = false;     // matrix^2 == f * I
    bool multiplicity_ok = false;    // dim ker(A -+ sqrt(f) I) == rank, both branches
    std::size_t dim_plus = 0;
    std::size_t dim_minus = 0;
    bool certified = false;
    std::string warning;
};

// Certifies the spectral claim at lambda: the characteristic polynomial of
// the M-action matrix is (mu^2 - f(lambda))^r, the matrix squares to
// f(lambda) I, and both eigenvalue branches mu = +-sqrt(f(lambda)) carry
// eigenspaces of dimension exactly r (worked over Q or over Q(sqrt(f))).
inline RankCertificate certify_rank(const DiffOp& L, const DiffOp& M,
                                    const HyperellipticCurve& curve, const Rat& lambda) {
    RankCertificate cert;
    cert.lambda = lambda;
    cert.action = m_action(L, M, lambda, curve);
    cert.f_lambda = cert.action.f_lambda;
    cert.rank = rank_of(L, M);
    cert.generic = sgn(cert.f_lambda) != 0;

    const RatMat& a = cert.action.matrix;
    std::size_t n = a.size();
    cert.charpoly_coeffs = charpoly(a);

    // (mu^2 - f)^r, expanded
    bool matches = n == 2 * static_cast<std::size_t>(cert.rank);
    if (matches) {
        RatVec expect(n + 1, Rat(0));
        for (unsigned i = 0; i <= cert.rank; ++i)
            expect[2 * i] = Rat(binomial(cert.rank, i)) *
                            rat_pow(-cert.f_lambda, cert.rank - i);
        matches = expect == cert.charpoly_coeffs;
    }
    cert.charpoly_matches = matches;

    RatMat sq = mat_mul(a, a);
    cert.square_matches = true;
    for (std::size_t i = 0; i < n && cert.square_matches; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat want = i == j ? cert.f_lambda : Rat(0);
            if (!(sq[i][j] == want)) {
                cert.square_matches = false;
                break;
            }
        }

    if (!cert.generic) {
        cert.warning =
            "f(lambda) = 0: branch point of the curve, eigenvalue structure degenerates; "
            "choose a generic rational lambda";
        cert.dim_plus = cert.dim_minus = eigenspace_dim(a, Rat(0));
        cert.multiplicity_ok = false;
        cert.certified = false;
        return cert;
    }

    if (auto root = rat_sqrt(cert.f_lambda)) {
        cert.dim_plus = eigenspace_dim(a, *root);
        cert.dim_minus = eigenspace_dim(a, -*root);
    } else {
        cert.dim_plus = eigenspace_dim_quadext(a, cert.f_lambda, +1);
        cert.dim_minus = eigenspace_dim_quadext(a, cert.f_lambda, -1);
    }
    cert.multiplicity_ok = cert.dim_plus == cert.rank && cert.dim_minus == cert.rank;
    cert.certified = cert.charpoly_matches && cert.square_matches && cert.multiplicity_ok;
    return cert;
}

}  // namespace commop

#endif
