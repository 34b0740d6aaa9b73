#pragma once

#include <boost/math/quadrature/exp_sinh.hpp>
#include <complex>
#include <optional>

#include "rankin/characters.hpp"
#include "rankin/exactalg/expsum.hpp"
#include "rankin/localfield/real_schwartz.hpp"
#include "rankin/localfield/schwartz.hpp"

namespace rankin {

/// Ball beta + p^e O in k.
struct Ball {
    Q center;
    int depth;
};

/// Intersection of two balls (ultrametric: nested or disjoint).
inline std::optional<Ball> intersect(const Ball& a, const Ball& b, long p) {
    int dist = valuation(a.center - b.center, p);
    if (dist < std::min(a.depth, b.depth)) return std::nullopt;
    return a.depth >= b.depth ? a : b;
}

/// Integral over y in beta + p^e O, y != 0, of psi(gamma y) X^{v(y)} d^x y (vol O^x = 1 - 1/q).
inline RatFun tate_ball(const Q& gamma, const Ball& ball, const Monomial& X, long p, ConvergenceLog* log = nullptr) {
    LocalField F = LocalField::padic(p);
    Q beta = padic_truncate(ball.center, ball.depth, p);
    int e = ball.depth;
    if (beta != 0) {
        int vb = valuation(beta, p);
        Scalar vol = psi_ball_integral(F, gamma, e);
        if (vol.is_zero()) return RatFun();
        Scalar phase = psi_exact(gamma * beta, p);
        return RatFun(phase * vol * Scalar(qpow(p, vb))) * X.ratfun_pow(vb);
    }
    Scalar unit_vol(Q(1) - Q(1, p));
    ExpSum shells = ExpSum::geometric(X, RatFun(unit_vol));
    if (gamma == 0) return shells.sum_from(e, log);
    int g = valuation(gamma, p);
    RatFun acc = shells.sum_from(std::max(e, -g), log);
    if (e <= -g - 1) acc -= RatFun(Scalar(Q(1, p))) * X.ratfun_pow(-g - 1);
    return acc;
}

/// Integral over k^x of X^{v(h)} phi(h r) d^x h for phi on k^{1 x b} and a nonzero row r.
inline RatFun tate_line(const Schwartz& phi, const std::vector<Q>& r, const Monomial& X, ConvergenceLog* log = nullptr) {
    long p = phi.p();
    if (phi.rows() != 1 || phi.cols() != static_cast<int>(r.size())) throw DimensionError("tate_line: shape mismatch");
    RatFun acc;
    for (const auto& t : phi.terms()) {
        std::optional<Ball> ball;
        bool empty = false, constrained = false;
        Q gamma(0);
        for (std::size_t i = 0; i < r.size() && !empty; ++i) {
            gamma += t.c[i] * r[i];
            if (r[i] == 0) {
                empty = valuation(t.d[i], p) < t.m[i];
                continue;
            }
            Ball b{t.d[i] / r[i], t.m[i] - valuation(r[i], p)};
            if (!constrained) {
                ball = b;
                constrained = true;
            } else {
                ball = intersect(*ball, b, p);
                empty = !ball.has_value();
            }
        }
        if (empty) continue;
        if (!constrained) throw DomainError("tate_line: zero row vector");
        acc += RatFun(t.coeff) * tate_ball(gamma, *ball, X, p, log);
    }
    return acc;
}

/// Tate zeta integral Z(s, omega, phi) = int phi(x) omega(x) |x|^s d^x x, exact in Y.
inline RatFun tate_zeta(const MultChar& w, const Schwartz& phi, ConvergenceLog* log = nullptr) {
    if (!w.padic) throw UnsupportedFieldError("tate_zeta: exact path is p-adic only");
    long p = phi.p();
    if (phi.rows() != 1 || phi.cols() != 1) throw DimensionError("tate_zeta: phi must live on k");
    return tate_line(phi, {Q(1)}, w.with_s(Q(1)).at_uniformizer(p), log);
}

/// Real Tate integral int phi(x) sgn(x)^eps |x|^{t+s} d^x x by double-exponential quadrature, s real.
inline std::complex<double> tate_zeta_real(const MultChar& w, const RealSchwartz& phi, double s) {
    if (w.padic) throw UnsupportedFieldError("tate_zeta_real: real character required");
    const auto& c = phi.coeffs();
    double u = s + w.t.get_d();
    int lowest = -1;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (static_cast<int>(k % 2) == w.eps && std::abs(c[k]) > 0) {
            lowest = static_cast<int>(k);
            break;
        }
    if (lowest < 0) return 0.0;
    if (u + lowest <= 0) throw DivergenceError("tate_zeta_real: integrand not integrable at 0 for this s");
    double sign = w.eps ? -1.0 : 1.0;
    auto sym = [&](double x) { return phi(x) + sign * phi(-x); };
    boost::math::quadrature::exp_sinh<double> integrator;
    double tol = 1e-13;
    double re = integrator.integrate([&](double x) { return sym(x).real() * std::pow(x, u - 1); }, tol);
    double im = integrator.integrate([&](double x) { return sym(x).imag() * std::pow(x, u - 1); }, tol);
    return {re, im};
}

}  // namespace rankin
