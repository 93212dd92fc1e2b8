// Exact arithmetic helpers shared by every module: big integers and
// rationals (GMP), integer roots, and comparisons against rational powers
// so that no inequality in the library ever goes through floating point.
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lo {

using Int = mpz_class;
using Rat = mpq_class;

// reduced rational literal
inline Rat frac(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat rpow(const Rat& base, unsigned long e) {
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
    r.canonicalize();
    return r;
}

// floor of the e-th root of a >= 0
inline Int iroot_floor(const Int& a, unsigned long e) {
    Int r;
    mpz_root(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

// floor(n^{p/q}) for integers n >= 0, p >= 0, q >= 1
inline Int floor_int_pow(const Int& n, unsigned long p, unsigned long q) {
    return iroot_floor(ipow(n, p), q);
}

// smallest integer t >= 0 with t*t >= r, for rational r >= 0
inline Int ceil_sqrt(const Rat& r) {
    if (r <= 0) return 0;
    Int lo_t = iroot_floor(floor_rat(r), 2);
    while (Rat(lo_t * lo_t) < r) ++lo_t;
    return lo_t;
}

// sign of (x - y * base^{p/q}) for positive rationals x, y, integer base >= 1,
// integer exponent p (any sign), q >= 1.  Entirely in integer arithmetic.
inline int cmp_rat_pow(const Rat& x, const Rat& y, const Int& base, long p, unsigned long q) {
    if (x <= 0 || y <= 0 || base < 1)
        throw std::invalid_argument("cmp_rat_pow: positive quantities required");
    Rat lhs = rpow(x, q);
    Rat rhs = rpow(y, q);
    if (p >= 0)
        rhs *= Rat(ipow(base, static_cast<unsigned long>(p)));
    else
        lhs *= Rat(ipow(base, static_cast<unsigned long>(-p)));
    return cmp(lhs, rhs);
}

// exact rational lower bound of ln(k), k >= 1, via the truncated
// atanh series ln k = 2 * sum z^(2j+1)/(2j+1), z = (k-1)/(k+1).
// All omitted terms are positive, so the truncation is a lower bound.
inline Rat ln_lower(const Int& k, int terms = 32) {
    if (k <= 1) return Rat(0);
    Rat z(k - 1, k + 1);
    z.canonicalize();
    Rat z2 = z * z;
    Rat pow = z;
    Rat acc = 0;
    for (int j = 0; j < terms; ++j) {
        acc += pow / Rat(2 * j + 1);
        pow *= z2;
    }
    return 2 * acc;
}

inline Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm_int(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int abs_int(const Int& a) { return a >= 0 ? a : Int(-a); }

// "p/q" (or "p" when the denominator is 1); used everywhere rationals are
// serialized, so reports never contain floats.
inline std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: '" + s + "'");
    r.canonicalize();
    return r;
}

} // namespace lo
