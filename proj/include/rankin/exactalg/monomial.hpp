#pragma once

#include <complex>
#include <string>

#include "rankin/exactalg/ratfun.hpp"

namespace rankin {

/// c * Y^k with c nonzero; the value of an unramified character at a uniformizer.
struct Monomial {
    Scalar c{1};
    int k = 0;

    Monomial() = default;
    Monomial(Scalar c_, int k_) : c(std::move(c_)), k(k_) {
        if (c.is_zero()) throw AlgebraError("Monomial: zero coefficient");
    }

    static Monomial one() { return {}; }
    bool is_one() const { return k == 0 && c.is_one(); }

    friend Monomial operator*(const Monomial& x, const Monomial& y) { return {x.c * y.c, x.k + y.k}; }
    Monomial inverse() const { return {c.inverse(), -k}; }
    Monomial pow(int e) const { return {c.pow(e), k * e}; }

    RatFun ratfun() const { return RatFun::monomial(c, k); }
    RatFun ratfun_pow(int e) const { return RatFun::monomial(c.pow(e), k * e); }

    std::complex<double> eval_s(std::complex<double> s, long q) const {
        return c.to_complex(q) * std::exp(-s * std::log(static_cast<double>(q)) * (k / 2.0));
    }

    friend bool operator==(const Monomial& x, const Monomial& y) { return x.k == y.k && x.c == y.c; }
    friend bool operator<(const Monomial& x, const Monomial& y) {
        if (x.k != y.k) return x.k < y.k;
        return x.c < y.c;
    }

    std::string str() const { return "(" + c.str() + ")*Y^" + std::to_string(k); }
};

}  // namespace rankin
