#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>

#include "rankin/errors.hpp"

namespace rankin {

using Q = mpq_class;

inline constexpr int kInfVal = INT_MAX;

inline Q rat(long n, long d = 1) {
    Q r(n, d);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Q& x) { return x.get_str(); }

inline Q parse_rational(const std::string& s) {
    Q r;
    if (r.set_str(s, 10) != 0) throw DomainError("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

// p-adic valuation of an integer; kInfVal for zero.
inline int valuation(const mpz_class& z, long p) {
    if (z == 0) return kInfVal;
    mpz_class t = abs(z);
    return static_cast<int>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), mpz_class(p).get_mpz_t()));
}

inline int valuation(const Q& x, long p) {
    if (x == 0) return kInfVal;
    return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

inline Q qpow(long q, int e) {
    mpz_class b;
    mpz_ui_pow_ui(b.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Q(b) : Q(mpz_class(1), b);
}

inline Q qpow(const Q& x, int e) {
    Q r(1);
    Q b = e >= 0 ? x : Q(1) / x;
    for (int k = e < 0 ? -e : e; k; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

// Unique r = sum_{j < m} r_j p^j (0 <= r_j < p) with v(x - r) >= m.
inline Q padic_truncate(const Q& x, int m, long p) {
    int v = valuation(x, p);
    if (v >= m) return Q(0);
    // x = p^v * u / w with p not dividing w; digits v..m-1 come from u * w^{-1} mod p^{m-v}.
    mpz_class P(p);
    mpz_class num = x.get_num(), den = x.get_den();
    mpz_class pv;
    if (v >= 0) {
        mpz_pow_ui(pv.get_mpz_t(), P.get_mpz_t(), v);
        num /= pv;
    } else {
        mpz_pow_ui(pv.get_mpz_t(), P.get_mpz_t(), -v);
        den /= pv;
    }
    mpz_class mod;
    mpz_pow_ui(mod.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(m - v));
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class u = (num * inv) % mod;
    if (u < 0) u += mod;
    Q r(u);
    return r * qpow(p, v);
}

// Fractional part {x}_p in [0, 1): x - {x}_p lies in Z_p.
inline Q padic_frac(const Q& x, long p) { return padic_truncate(x, 0, p); }

inline bool in_ideal(const Q& x, int m, long p) { return valuation(x, p) >= m; }

}  // namespace rankin
