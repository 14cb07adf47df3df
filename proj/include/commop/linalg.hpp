#ifndef COMMOP_LINALG_HPP
#define COMMOP_LINALG_HPP

// Dense exact linear algebra over the rationals: reduced row echelon form,
// null spaces, determinants, characteristic polynomials (Faddeev-LeVerrier),
// and Gaussian rank over a quadratic extension Q(sqrt(d)) for eigenspace
// dimension counts at irrational eigenvalues.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace commop {

using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline RatMat mat_identity(std::size_t n) {
    RatMat I(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

inline RatMat mat_mul(const RatMat& a, const RatMat& b) {
    std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    RatMat c(n, RatVec(m, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (sgn(a[i][l]) == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline Rat mat_trace(const RatMat& a) {
    Rat t(0);
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RatMat& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    std::size_t rows = m.size(), cols = m[0].size(), row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t pr = row;
        while (pr < rows && sgn(m[pr][col]) == 0) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[row]);
        Rat inv = 1 / m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || sgn(m[i][col]) == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t mat_rank(RatMat m) { return rref(m).size(); }

// Basis of the right null space {v : m v = 0}. Rows are scaled to integers
// and eliminated fraction-free with content stripping (gcd of each row
// divided out) and sparsest-pivot-row selection; the kernel is then read off
// by back substitution. Produces exactly the RREF kernel basis: one vector
// per free column, with a 1 there and 0 at the other free columns.
inline std::vector<RatVec> null_space(RatMat m_in) {
    if (m_in.empty()) return {};
    const std::size_t rows = m_in.size(), cols = m_in[0].size();

    std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int scale(1);
        for (const Rat& q : m_in[i]) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t j = 0; j < cols; ++j)
            m[i][j] = m_in[i][j].get_num() * (scale / m_in[i][j].get_den());
    }
    auto strip_content = [](std::vector<Int>& row) {
        Int g(0);
        for (const Int& v : row) {
            if (sgn(v) == 0) continue;
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            if (g == 1) return;
        }
        if (sgn(g) == 0 || g == 1) return;
        for (Int& v : row) v /= g;
    };

    std::vector<std::size_t> pivot_cols;
    std::size_t next = 0;
    for (std::size_t col = 0; col < cols && next < rows; ++col) {
        std::size_t best = rows;
        std::size_t best_nnz = 0;
        for (std::size_t i = next; i < rows; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            std::size_t nnz = 0;
            for (std::size_t j = col; j < cols; ++j) nnz += sgn(m[i][j]) != 0;
            if (best == rows || nnz < best_nnz) {
                best = i;
                best_nnz = nnz;
            }
        }
        if (best == rows) continue;
        std::swap(m[best], m[next]);
        const std::vector<Int>& p = m[next];
        for (std::size_t i = next + 1; i < rows; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), p[col].get_mpz_t(), m[i][col].get_mpz_t());
            Int fa = p[col] / g, fb = m[i][col] / g;
            for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] * fa - p[j] * fb;
            strip_content(m[i]);
        }
        pivot_cols.push_back(col);
        ++next;
    }

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVec v(cols, Rat(0));
        v[free_col] = 1;
        for (std::size_t k = pivot_cols.size(); k-- > 0;) {
            Rat acc(0);
            for (std::size_t j = pivot_cols[k] + 1; j < cols; ++j) {
                if (sgn(m[k][j]) == 0 || sgn(v[j]) == 0) continue;
                acc += Rat(m[k][j]) * v[j];
            }
            v[pivot_cols[k]] = -acc / Rat(m[k][pivot_cols[k]]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

inline Rat determinant(RatMat m) {
    std::size_t n = m.size();
    Rat det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pr = col;
        while (pr < n && sgn(m[pr][col]) == 0) ++pr;
        if (pr == n) return Rat(0);
        if (pr != col) {
            std::swap(m[pr], m[col]);
            det = -det;
        }
        det *= m[col][col];
        Rat inv = 1 / m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            Rat f = m[i][col] * inv;
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

// Monic characteristic polynomial det(mu I - A); coefficient k is the
// coefficient of mu^k. Faddeev-LeVerrier, exact over Q.
inline RatVec charpoly(const RatMat& a) {
    std::size_t n = a.size();
    RatVec c(n + 1, Rat(0));
    c[n] = 1;
    RatMat m = mat_identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        RatMat am = mat_mul(a, m);
        Rat ck = -mat_trace(am) / Rat(static_cast<long>(k));
        c[n - k] = ck;
        for (std::size_t i = 0; i < n; ++i) am[i][i] += ck;
        m = std::move(am);
    }
    return c;
}

// dim ker(A - mu I) over Q.
inline std::size_t eigenspace_dim(const RatMat& a, const Rat& mu) {
    RatMat m = a;
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] -= mu;
    return m.size() - mat_rank(std::move(m));
}

// Elements u + v sqrt(d) of Q(sqrt(d)); valid as a field only when d is not
// the square of a rational (negative d included).
struct QuadExt {
    Rat u, v;
    bool is_zero() const { return sgn(u) == 0 && sgn(v) == 0; }
};

inline QuadExt qe_mul(const QuadExt& a, const QuadExt& b, const Rat& d) {
    return {a.u * b.u + d * a.v * b.v, a.u * b.v + a.v * b.u};
}

inline QuadExt qe_inv(const QuadExt& a, const Rat& d) {
    Rat den = a.u * a.u - d * a.v * a.v;
    if (sgn(den) == 0) throw std::domain_error("QuadExt: d is a rational square, not a field");
    return {a.u / den, -a.v / den};
}

// dim ker(A - s sqrt(d) I) over Q(sqrt(d)), s = +1 or -1.
inline std::size_t eigenspace_dim_quadext(const RatMat& a, const Rat& d, int s) {
    std::size_t n = a.size();
    std::vector<std::vector<QuadExt>> m(n, std::vector<QuadExt>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = {a[i][j], i == j ? Rat(-s) : Rat(0)};
    std::size_t rank = 0, row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && m[pr][col].is_zero()) ++pr;
        if (pr == n) continue;
        std::swap(m[pr], m[row]);
        QuadExt inv = qe_inv(m[row][col], d);
        for (std::size_t j = col; j < n; ++j) m[row][j] = qe_mul(m[row][j], inv, d);
        for (std::size_t i = row + 1; i < n; ++i) {
            if (m[i][col].is_zero()) continue;
            QuadExt f = m[i][col];
            for (std::size_t j = col; j < n; ++j) {
                QuadExt t = qe_mul(f, m[row][j], d);
                m[i][j] = {m[i][j].u - t.u, m[i][j].v - t.v};
            }
        }
        ++rank;
        ++row;
    }
    return n - rank;
}

}  // namespace commop

#endif
