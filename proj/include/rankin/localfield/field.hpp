#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "rankin/exactalg/scalar.hpp"

namespace rankin {

struct LocalField {
    enum class Kind { padic, real };
    Kind kind = Kind::padic;
    long p = 0;

    static LocalField padic(long p) {
        if (p < 2) throw DomainError("LocalField: p must be prime");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw DomainError("LocalField: p must be prime, got " + std::to_string(p));
        return {Kind::padic, p};
    }
    static LocalField real() { return {Kind::real, 0}; }

    bool is_padic() const { return kind == Kind::padic; }
    long q() const { return p; }

    std::string str() const { return is_padic() ? "Q_" + std::to_string(p) : "R"; }

    void require_padic(const char* what) const {
        if (!is_padic()) throw UnsupportedFieldError(std::string(what) + ": real field not supported");
    }
};

inline double abs_val(const Q& x, long p) {
    if (x == 0) return 0.0;
    return std::pow(static_cast<double>(p), -valuation(x, p));
}

/// Integral of psi(c u) over p^m O: q^{-m} if v(c) + m >= 0, else 0.
inline Scalar psi_ball_integral(const LocalField& F, const Q& c, int m) {
    F.require_padic("psi_ball_integral");
    int v = valuation(c, F.p);
    if (v == kInfVal || v + m >= 0) return Scalar(qpow(F.p, -m));
    return Scalar(0);
}

/// psi(x) = exp(2 pi i {x}_p) as a complex double.
inline std::complex<double> psi_numeric(const Q& x, long p) {
    Q f = padic_frac(x, p);
    double t = 2.0 * std::numbers::pi * f.get_d();
    return {std::cos(t), std::sin(t)};
}

/// psi on the real line: exp(-2 pi i x).
inline std::complex<double> psi_real(double x) {
    double t = -2.0 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

/// Exact psi(x) when it lies in {1, i, -1, -i}; throws otherwise.
inline Scalar psi_exact(const Q& x, long p) {
    Q f = padic_frac(x, p);
    Q four = f * 4;
    if (four.get_den() != 1)
        throw CapabilityError("psi value is a root of unity outside the coefficient field; use the numeric path");
    switch (static_cast<int>(four.get_num().get_si())) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

}  // namespace rankin
