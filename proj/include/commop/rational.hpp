#ifndef COMMOP_RATIONAL_HPP
#define COMMOP_RATIONAL_HPP

// Exact rational scalars. GMP does the heavy lifting; this header pins the
// conventions the rest of the library relies on: values are always in lowest
// terms with a positive denominator, and construction is funneled through
// canonicalizing factories (raw mpq_class(n, d) does NOT canonicalize).

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace commop {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat(const Int& num, const Int& den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "-p", or "p/q"; whitespace is not accepted.
inline Rat rat_parse(const std::string& text) {
    Rat q;
    if (text.empty() || q.set_str(text, 10) != 0)
        throw std::invalid_argument("rat_parse: not a rational: '" + text + "'");
    if (q.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

// Lowest-terms rendering, "p" or "p/q".
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// Exact square root when the argument is the square of a rational.
inline std::optional<Rat> rat_sqrt(const Rat& q) {
    if (sgn(q) < 0) return std::nullopt;
    if (sgn(q) == 0) return Rat(0);
    const Int num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Int rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return rat(rn, rd);
}

inline Rat rat_pow(const Rat& q, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), q.get_den_mpz_t(), e);
    return r;  // powers of canonical values are canonical
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace commop

#endif
