#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rankin/exactalg/monomial.hpp"
#include "rankin/localfield/field.hpp"

namespace rankin {

/// A character of k^x.
/// p-adic: x -> a^{v(x)} |x|^{t + sigma s}, with t and sigma half-integers (sigma multiplies the symbolic s).
/// real: x -> sgn(x)^eps |x|^t.
struct MultChar {
    bool padic = true;
    Scalar a{1};
    Q t{0};
    Q sigma{0};
    int eps = 0;

    static MultChar unr(const Scalar& a, const Q& t = Q(0)) {
        if (a.is_zero()) throw DomainError("MultChar: Satake parameter must be nonzero");
        check_half(t);
        return {true, a, t, Q(0), 0};
    }
    /// |.|^s times an unramified character: the twist chi_s.
    static MultChar unr_s(const Scalar& a, const Q& sigma = Q(1), const Q& t = Q(0)) {
        MultChar c = unr(a, t);
        check_half(sigma);
        c.sigma = sigma;
        return c;
    }
    static MultChar real(int eps, const Q& t = Q(0)) {
        if (eps != 0 && eps != 1) throw DomainError("MultChar: eps must be 0 or 1");
        return {false, Scalar(1), t, Q(0), eps};
    }

    static void check_half(const Q& t) {
        if (Q(t * 2).get_den() != 1) throw DomainError("MultChar: twist must be a half-integer in the exact path");
    }

    /// Value at the uniformizer as a monomial in Y: a q^{-t} Y^{2 sigma}.
    Monomial at_uniformizer(long q) const {
        if (!padic) throw UnsupportedFieldError("MultChar: real character has no uniformizer");
        int two_t = static_cast<int>(Q(t * 2).get_num().get_si());
        int two_sigma = static_cast<int>(Q(sigma * 2).get_num().get_si());
        return Monomial(a * Scalar::sqrtq_pow(q, -two_t), two_sigma);
    }

    /// Numeric value at the uniformizer for complex s.
    std::complex<double> at_uniformizer_numeric(long q, std::complex<double> s) const {
        double lq = std::log(static_cast<double>(q));
        return a.to_complex(q) * std::exp(-(t.get_d() + sigma.get_d() * s) * lq);
    }

    MultChar inverse() const {
        MultChar c = *this;
        if (padic) c.a = a.inverse();
        c.t = -t;
        c.sigma = -sigma;
        return c;
    }
    friend MultChar operator*(const MultChar& x, const MultChar& y) {
        if (x.padic != y.padic) throw DomainError("MultChar: mixing real and p-adic characters");
        MultChar c = x;
        c.a = x.a * y.a;
        c.t = x.t + y.t;
        c.sigma = x.sigma + y.sigma;
        c.eps = (x.eps + y.eps) % 2;
        return c;
    }
    /// omega |.|^u
    MultChar twisted(const Q& u) const {
        MultChar c = *this;
        c.t += u;
        return c;
    }
    MultChar with_s(const Q& sigma_add) const {
        MultChar c = *this;
        c.sigma += sigma_add;
        return c;
    }

    /// omega(-1)
    int at_minus_one() const { return padic ? 1 : (eps ? -1 : 1); }

    friend bool operator==(const MultChar& x, const MultChar& y) {
        return x.padic == y.padic && x.a == y.a && x.t == y.t && x.sigma == y.sigma && x.eps == y.eps;
    }

    std::string str() const {
        if (!padic) return "sgn^" + std::to_string(eps) + "|.|^" + t.get_str();
        std::string s = "unr(" + a.str() + ")";
        if (t != 0) s += "|.|^" + t.get_str();
        if (sigma != 0) s += "|.|^(" + sigma.get_str() + "s)";
        return s;
    }
};

using CharTuple = std::vector<MultChar>;

/// ex(omega) = t - log_q |a| (p-adic), t (real); the s-shift is excluded.
inline double ex(const MultChar& w, long q = 0) {
    if (!w.padic) return w.t.get_d();
    if (q <= 0) q = w.a.q();
    double mod = std::abs(w.a.to_complex(q));
    if (std::abs(std::log(mod)) < 1e-15) return w.t.get_d();
    if (q <= 0) throw DomainError("ex: q required for a non-unitary Satake parameter");
    return w.t.get_d() - std::log(mod) / std::log(static_cast<double>(q));
}

/// omega(x) for x != 0 as an exact RatFun in Y.
inline RatFun char_eval(const MultChar& w, const Q& x, long q, const Q& s_shift = Q(0)) {
    if (x == 0) throw DomainError("char_eval: x = 0");
    if (!w.padic) throw UnsupportedFieldError("char_eval: real character");
    MultChar c = w.with_s(s_shift);
    return c.at_uniformizer(q).ratfun_pow(valuation(x, q));
}

inline CharTuple hat_dual(const CharTuple& a) {
    CharTuple out;
    for (auto it = a.rbegin(); it != a.rend(); ++it) out.push_back(it->inverse());
    return out;
}

/// prod over j < i, i + j <= n of (nu_i nu'_j)(-1).
inline int sgn_product(const CharTuple& nu, const CharTuple& nup) {
    int n = static_cast<int>(nu.size()), np = static_cast<int>(nup.size());
    if (np != n && np != n - 1) throw DomainError("sgn_product: lengths must be (n, n) or (n, n-1)");
    int s = 1;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j < i && j <= np; ++j)
            if (i + j <= n) s *= nu[i - 1].at_minus_one() * nup[j - 1].at_minus_one();
    return s;
}

}  // namespace rankin
