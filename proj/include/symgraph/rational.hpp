#ifndef SYMGRAPH_RATIONAL_HPP
#define SYMGRAPH_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace symgraph {

// Exact rationals throughout; no floating point anywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

// mpq_class's two-integer constructor does not reduce; this does.
inline Rat make_rat(long num, long den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat r = 1;
    Rat b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Int factorial(unsigned long n) {
    Int f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

// C(n, k) for possibly large n; returns 0 for k < 0 or k > n.
inline Int binomial(const Int& n, long k) {
    if (k < 0 || n < k) return 0;
    Int b;
    mpz_bin_ui(b.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    return b;
}

inline Int lcm_upto(const Int& n) {
    Int l = 1;
    for (Int k = 2; k <= n; ++k) {
        Int g;
        mpz_lcm(g.get_mpz_t(), l.get_mpz_t(), k.get_mpz_t());
        l = g;
    }
    return l;
}

}  // namespace symgraph

#endif
