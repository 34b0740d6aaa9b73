#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "rankin/characters.hpp"
#include "rankin/integrals/tate.hpp"

namespace rankin {

/// c * prod_j (pi^{-(a_j s + b_j)/2} Gamma((a_j s + b_j)/2))^{e_j}, evaluated at real s.
struct ArchFactor {
    struct Term {
        int a;
        double b;
        int e;
    };
    std::complex<double> c = 1.0;
    std::vector<Term> terms;

    static ArchFactor gamma_r(int a, double b, int e = 1) { return {1.0, {{a, b, e}}}; }

    std::complex<double> eval(double s) const {
        double log_mod = 0;
        double sign = 1;
        for (const auto& t : terms) {
            double x = (t.a * s + t.b) / 2;
            if (x <= 0 && x == std::floor(x)) throw PoleError("ArchFactor: Gamma pole", s, 0);
            double g = std::tgamma(x);
            if (g < 0 && t.e % 2) sign = -sign;
            log_mod += t.e * (-x * std::log(std::numbers::pi) + std::lgamma(x));
        }
        return c * sign * std::exp(log_mod);
    }

    friend ArchFactor operator*(ArchFactor x, const ArchFactor& y) {
        x.c *= y.c;
        x.terms.insert(x.terms.end(), y.terms.begin(), y.terms.end());
        return x;
    }
    ArchFactor inverse() const {
        ArchFactor r{1.0 / c, terms};
        for (auto& t : r.terms) t.e = -t.e;
        return r;
    }
    /// s -> 1 - s
    ArchFactor reflect() const {
        ArchFactor r = *this;
        for (auto& t : r.terms) {
            t.b += t.a;
            t.a = -t.a;
        }
        return r;
    }

    std::string str() const {
        std::ostringstream os;
        os.precision(17);
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (const auto& t : terms)
            os << "*GammaR(" << (t.a > 0 ? "s" : "-s") << (t.b < 0 ? "" : "+") << t.b << ")^" << t.e;
        return os.str();
    }
};

/// A local factor: exact RatFun in Y (p-adic) or a Gamma-product descriptor (real).
struct FactorValue {
    bool padic = true;
    RatFun exact{1};
    ArchFactor arch;

    static FactorValue one(bool padic) {
        FactorValue f;
        f.padic = padic;
        return f;
    }
    static FactorValue of(const RatFun& r) { return {true, r, {}}; }
    static FactorValue of(const ArchFactor& a) { return {false, RatFun(1), a}; }

    friend FactorValue operator*(const FactorValue& x, const FactorValue& y) {
        if (x.padic != y.padic) throw DomainError("FactorValue: mixing p-adic and real factors");
        return x.padic ? of(x.exact * y.exact) : of(x.arch * y.arch);
    }
    FactorValue scaled(int sign) const {
        FactorValue r = *this;
        if (padic) r.exact *= RatFun(sign);
        else r.arch.c *= sign;
        return r;
    }
    FactorValue inverse() const { return padic ? of(exact.inverse()) : of(arch.inverse()); }
    FactorValue reflect(long q) const { return padic ? of(exact.reflect(q)) : of(arch.reflect()); }

    std::complex<double> eval(double s, long q) const { return padic ? exact.eval_s(s, q) : arch.eval(s); }
    std::string str() const { return padic ? exact.str() : arch.str(); }
};

struct LocalFactors {
    FactorValue L, eps, gamma;
};

namespace detail {
inline RatFun padic_L(const MultChar& w, long q) {
    RatFun x = w.at_uniformizer(q).ratfun() * RatFun::monomial(Scalar(1), 2);
    return (RatFun(1) - x).inverse();
}
}  // namespace detail

/// L, epsilon and gamma of omega with respect to the fixed additive character.
inline LocalFactors local_factors(const MultChar& w, long q = 0) {
    if (w.padic) {
        if (q <= 0) throw DomainError("local_factors: q required for a p-adic character");
        RatFun L = detail::padic_L(w, q);
        RatFun Ld = detail::padic_L(w.inverse(), q).reflect(q);
        return {FactorValue::of(L), FactorValue::of(RatFun(1)), FactorValue::of(Ld / L)};
    }
    double b = w.t.get_d() + w.eps;
    ArchFactor L = ArchFactor::gamma_r(1, b);
    ArchFactor Ld = ArchFactor::gamma_r(-1, 1 - w.t.get_d() + w.eps);
    ArchFactor eps;
    eps.c = w.eps ? std::complex<double>(0, -1) : 1.0;
    return {FactorValue::of(L), FactorValue::of(eps), FactorValue::of(eps * Ld * L.inverse())};
}

struct PairProducts {
    FactorValue L, gamma, eps;
};

/// L(s, nu x nu') over all pairs; gamma and epsilon over pairs with i + j <= n.
inline PairProducts pair_products(const CharTuple& nu, const CharTuple& nup, long q = 0) {
    int n = static_cast<int>(nu.size()), np = static_cast<int>(nup.size());
    if (n == 0) throw DomainError("pair_products: empty tuple");
    if (np != n && np != n - 1) throw DomainError("pair_products: lengths must be (n, n) or (n, n-1)");
    bool padic = nu[0].padic;
    PairProducts out{FactorValue::one(padic), FactorValue::one(padic), FactorValue::one(padic)};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= np; ++j) {
            LocalFactors f = local_factors(nu[i - 1] * nup[j - 1], q);
            out.L = out.L * f.L;
            if (i + j <= n) {
                out.gamma = out.gamma * f.gamma;
                out.eps = out.eps * f.eps;
            }
        }
    return out;
}

/// sgn(nu; nu') times the gamma product.
inline FactorValue Gamma_psi(const CharTuple& nu, const CharTuple& nup, long q = 0) {
    return pair_products(nu, nup, q).gamma.scaled(sgn_product(nu, nup));
}

struct IdentityCheck {
    bool equal = false;
    std::string lhs, rhs;
    double max_rel_err = 0;
};

namespace detail {
inline const std::vector<double>& real_sample_points() {
    static const std::vector<double> pts{0.23, 0.41, 0.58, 0.77, 1.35};
    return pts;
}

/// Points where both sides of the real functional equation converge for the test functions used.
inline const std::vector<double>& fe_sample_points() {
    static const std::vector<double> pts{0.2, 0.35, 0.5, 0.65, 0.8};
    return pts;
}

inline IdentityCheck compare_numeric(const FactorValue& a, const FactorValue& b, double tol) {
    IdentityCheck r{true, a.str(), b.str(), 0};
    for (double s : real_sample_points()) {
        auto x = a.eval(s, 0), y = b.eval(s, 0);
        double err = std::abs(x - y) / std::max(1.0, std::abs(y));
        r.max_rel_err = std::max(r.max_rel_err, err);
    }
    r.equal = r.max_rel_err <= tol;
    return r;
}

inline IdentityCheck compare(const FactorValue& a, const FactorValue& b, double tol = 1e-10) {
    if (a.padic) return {a.exact == b.exact, a.str(), b.str(), 0};
    return compare_numeric(a, b, tol);
}
}  // namespace detail

/// gamma(s, w) gamma(1 - s, w^{-1}) = w(-1)
inline IdentityCheck check_gamma_reflection(const MultChar& w, long q = 0) {
    FactorValue lhs = local_factors(w, q).gamma * local_factors(w.inverse(), q).gamma.reflect(q);
    return detail::compare(lhs, FactorValue::one(w.padic).scaled(w.at_minus_one()));
}

/// Gamma(s; nu; nu') = Gamma(1 - s; nu'^; mu^) prod_j nu'_j(-1)^n prod_{i, j <= n-1} gamma(s, nu_i nu'_j)
inline IdentityCheck check_gamma_lemma(const CharTuple& nu, const CharTuple& nup, long q = 0) {
    int n = static_cast<int>(nu.size());
    if (n < 2 || static_cast<int>(nup.size()) != n - 1) throw DomainError("check_gamma_lemma: need n >= 2, n' = n - 1");
    CharTuple mu(nu.begin(), nu.end() - 1);
    FactorValue lhs = Gamma_psi(nu, nup, q);
    FactorValue rhs = Gamma_psi(hat_dual(nup), hat_dual(mu), q).reflect(q);
    int sign = 1;
    for (const auto& w : nup)
        if (n % 2 == 1) sign *= w.at_minus_one();
    for (int i = 0; i < n - 1; ++i)
        for (int j = 0; j < n - 1; ++j) rhs = rhs * local_factors(nu[i] * nup[j], q).gamma;
    return detail::compare(lhs, rhs.scaled(sign), 1e-9);
}

/// Epsilon factor recovered from the functional equation with phi and its transform (conj selects psi-bar).
inline std::complex<double> epsilon_from_fe_real(const MultChar& w, const RealSchwartz& phi, double s, bool conj) {
    LocalFactors f = local_factors(w), fd = local_factors(w.inverse());
    auto lhs = tate_zeta_real(w.inverse(), phi.fourier(conj), 1 - s) / fd.L.eval(1 - s, 0);
    auto rhs = tate_zeta_real(w, phi, s) / f.L.eval(s, 0);
    return lhs / rhs;
}

inline RatFun epsilon_from_fe_padic(const MultChar& w, const Schwartz& phi, bool conj) {
    long q = phi.p();
    RatFun lhs = tate_zeta(w.inverse(), phi.fourier(conj)).reflect(q) * detail::padic_L(w.inverse(), q).reflect(q).inverse();
    RatFun rhs = tate_zeta(w, phi) * detail::padic_L(w, q).inverse();
    return lhs / rhs;
}

/// eps(s, w, psi-bar) = w(-1) eps(s, w, psi), each side recovered from the functional equation.
inline IdentityCheck check_psi_conjugation(const MultChar& w, long q = 0) {
    if (w.padic) {
        Schwartz phi = Schwartz::lattice(q, 1, 1);
        RatFun bar = epsilon_from_fe_padic(w, phi, true), plain = epsilon_from_fe_padic(w, phi, false);
        RatFun rhs = plain * RatFun(w.at_minus_one());
        return {bar == rhs, bar.str(), rhs.str(), 0};
    }
    RealSchwartz phi = w.eps ? RealSchwartz::monomial(1) : RealSchwartz::gaussian();
    IdentityCheck r{true, "", "", 0};
    // both zeta integrals converge for -t - eps < s < 1 - t + eps
    double lo = -w.t.get_d() - w.eps, width = 1 + 2 * w.eps;
    for (double x : detail::fe_sample_points()) {
        double s = lo + width * x;
        auto bar = epsilon_from_fe_real(w, phi, s, true);
        auto plain = epsilon_from_fe_real(w, phi, s, false) * double(w.at_minus_one());
        r.max_rel_err = std::max(r.max_rel_err, std::abs(bar - plain) / std::abs(plain));
        std::ostringstream a, b;
        a << bar;
        b << plain;
        r.lhs = a.str();
        r.rhs = b.str();
    }
    r.equal = r.max_rel_err <= 1e-8;
    return r;
}

}  // namespace rankin
