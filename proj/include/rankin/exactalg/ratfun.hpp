#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "rankin/exactalg/poly.hpp"

namespace rankin {

/// Reduced quotient num/den of polynomials in Y = q^{-s/2}; den is monic.
class RatFun {
public:
    RatFun() : num_(), den_(Scalar(1)) {}
    RatFun(const Scalar& c) : num_(c), den_(Scalar(1)) {}  // NOLINT
    RatFun(long c) : RatFun(Scalar(c)) {}                  // NOLINT
    RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { canonicalize(); }

    /// c * Y^k for any integer k.
    static RatFun monomial(const Scalar& c, int k) {
        if (c.is_zero()) return RatFun();
        if (k >= 0) return RatFun(Poly::monomial(c, k), Poly(Scalar(1)), Raw{});
        return RatFun(Poly(c), Poly::monomial(Scalar(1), -k), Raw{});
    }
    static RatFun Y() { return monomial(Scalar(1), 1); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    Scalar constant_value() const {
        if (!is_constant()) throw AlgebraError("RatFun: not a constant");
        return num_.coeff(0);
    }

    friend RatFun operator+(const RatFun& x, const RatFun& y) {
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        if (x.den_ == y.den_) return RatFun(x.num_ + y.num_, x.den_);
        return RatFun(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
    }
    RatFun operator-() const { return RatFun(-num_, den_, Raw{}); }
    friend RatFun operator-(const RatFun& x, const RatFun& y) { return x + (-y); }
    friend RatFun operator*(const RatFun& x, const RatFun& y) {
        if (x.is_zero() || y.is_zero()) return RatFun();
        if (x.den_.degree() == 0 && y.den_.degree() == 0) return RatFun(x.num_ * y.num_, Poly(Scalar(1)), Raw{});
        return RatFun(x.num_ * y.num_, x.den_ * y.den_);
    }
    RatFun inverse() const {
        if (is_zero()) throw AlgebraError("RatFun: inverse of zero");
        return RatFun(den_, num_);
    }
    friend RatFun operator/(const RatFun& x, const RatFun& y) { return x * y.inverse(); }
    RatFun& operator+=(const RatFun& y) { return *this = *this + y; }
    RatFun& operator-=(const RatFun& y) { return *this = *this - y; }
    RatFun& operator*=(const RatFun& y) { return *this = *this * y; }
    RatFun& operator/=(const RatFun& y) { return *this = *this / y; }

    RatFun pow(int e) const {
        RatFun r(1);
        RatFun b = e >= 0 ? *this : inverse();
        for (int k = e < 0 ? -e : e; k; k >>= 1) {
            if (k & 1) r *= b;
            if (k > 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const RatFun& x, const RatFun& y) { return x.num_ == y.num_ && x.den_ == y.den_; }
    friend bool operator!=(const RatFun& x, const RatFun& y) { return !(x == y); }

    long q_of() const {
        long q = num_.q_of();
        return q ? q : den_.q_of();
    }

    /// Floating evaluation at Y = y; r maps to sqrt(q).
    std::complex<double> eval(std::complex<double> y, long q = 0) const {
        if (!q) q = q_of();
        std::complex<double> d = den_.eval(y, q);
        double scale = 0;
        for (int k = 0; k <= den_.degree(); ++k) scale += std::abs(den_.coeff(k).to_complex(q)) * std::pow(std::abs(y), k);
        if (std::abs(d) <= 1e-12 * std::max(1.0, scale))
            throw PoleError("RatFun: evaluation at a root of the denominator, Y = (" + std::to_string(y.real()) + "," +
                                std::to_string(y.imag()) + ")",
                            y.real(), y.imag());
        return num_.eval(y, q) / d;
    }

    /// Value at s (complex), Y = q^{-s/2}.
    std::complex<double> eval_s(std::complex<double> s, long q) const {
        std::complex<double> y = std::exp(-s * std::log(static_cast<double>(q)) / 2.0);
        return eval(y, q);
    }

    /// Substitute s -> 1 - s, i.e. Y -> q^{-1/2} / Y.
    RatFun reflect(long q) const {
        if (is_zero()) return *this;
        Scalar rinv = Scalar::r(q).inverse();
        // P(rinv / Y) = Y^{-deg P} * sum_k p_k rinv^k Y^{deg P - k}
        Poly n = num_.dilate(rinv).reversed();
        Poly d = den_.dilate(rinv).reversed();
        int shift = den_.degree() - num_.degree();
        if (shift >= 0) return RatFun(n.shifted(shift), d);
        return RatFun(n, d.shifted(-shift));
    }

    /// Normalized "num(Y) / den(Y)".
    std::string str() const { return "[" + num_.str() + "] / [" + den_.str() + "]"; }
    friend std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.str(); }

private:
    struct Raw {};
    RatFun(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}

    void canonicalize() {
        if (den_.is_zero()) throw AlgebraError("RatFun: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly(Scalar(1));
            return;
        }
        if (den_.degree() > 0) {
            Poly g = Poly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = Poly::divmod(num_, g).first;
                den_ = Poly::divmod(den_, g).first;
            }
        }
        Scalar l = den_.lead();
        if (!l.is_one()) {
            Scalar inv = l.inverse();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Poly num_, den_;
};

inline RatFun ratfun_canonicalize(const Poly& num, const Poly& den) { return RatFun(num, den); }

}  // namespace rankin
