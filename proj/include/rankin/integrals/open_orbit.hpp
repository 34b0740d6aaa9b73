#pragma once

#include "rankin/integrals/strip.hpp"
#include "rankin/integrals/tate.hpp"
#include "rankin/iwasawa.hpp"

namespace rankin {

/// |det|^{t + sigma s}
inline MultChar det_twist(const Q& sigma, const Q& t) { return MultChar::unr_s(Scalar(1), sigma, t); }

namespace detail {
inline Q vol_K2(long q) { return (Q(1) - Q(1, q)) * (Q(1) - Q(1, q * q)); }
inline RatFun unit_vol(long q) { return RatFun(Scalar(Q(1) - Q(1, q))); }

/// Spherical closed form of int_{G_2} f°_alpha(z_2 g) f°_beta(g) 1_{p^e O^2}(e_2 g) |det g|^X dg,
/// from the strata b = [[t1,0],[u,t2]]: m1 < e forces v(t1 + u) = m1, otherwise v(t1 + u) runs over shells >= e.
inline RatFun lambda_nn_spherical(const CharTuple& alpha, const CharTuple& beta, int e, const Monomial& X, long q,
                                  ConvergenceLog* log) {
    auto ma = spherical_slots(alpha, q), mb = spherical_slots(beta, q);
    Monomial qm(Scalar(Q(q)), 0), invq(Scalar(Q(1, q)), 0);
    Monomial rho = ma[0] * ma[1].inverse();
    Monomial P1 = mb[0] * X * ma[1], P2 = mb[1] * X * qm * ma[1];
    RatFun S1 = RatFun(Scalar(qpow(q, -e))) * ExpSum::geometric(P1 * rho).sum_upto(e - 1, log);
    RatFun T1 = ExpSum::geometric(P2).sum_from(e, log);
    RatFun S2 = ExpSum::geometric(P1).sum_from(e, log);
    ExpSum J2 = ExpSum::geometric(rho * invq, unit_vol(q)).partial_from(e) + ExpSum::geometric(rho * invq);
    RatFun T2 = J2.twist(P2).sum_from(e, log);
    return RatFun(Scalar(vol_K2(q))) * (S1 * T1 + S2 * T2);
}
}  // namespace detail

/// Lambda for shape (n, n-1): int_{G_{n-1}} f(z_n diag(h,1)) f'(z_{n-1} h) |det h|^{twist} dh, n <= 2.
/// At n = 2 with f right-K(N)-invariant, shells v(h) = m split into |m| < N (unit classes mod p^N enumerated),
/// m >= N (f(z_2 diag(h,1)) = f(kappa_0) mu_2^m) and m <= -max(N,1) (f(1) mu_1^m).
inline IntegralResult lambda_nnp(const Section& f, const Section& fp, const MultChar& twist = det_twist(Q(1), Q(-1, 2))) {
    if (fp->rank != f->rank - 1) throw DimensionError("lambda_nnp: need ranks (n, n-1)");
    if (fp->rank > 0 && fp->p != f->p) throw DomainError("lambda_nnp: residue characteristic mismatch");
    IntegralResult r;
    long p = f->p;
    if (f->rank == 1) {
        r.exact = section_eval(f, Mat::identity(1)) * section_eval(fp, Mat::identity(0));
        return r;
    }
    if (f->rank != 2) throw CapabilityError("lambda_nnp: exact path supports n <= 2");
    int N = f->level;
    RatFun fp1 = section_eval(fp, Mat::identity(1));
    Monomial step = fp->chars[0].at_uniformizer(p) * twist.at_uniformizer(p);
    auto mu = spherical_slots(f->chars, p);
    Mat kappa0{{Q(0), Q(1)}, {Q(-1), Q(0)}};

    RatFun acc;
    RatFun upper = section_eval(f, kappa0);
    if (!upper.is_zero()) acc += upper * ExpSum::geometric(mu[1] * step).sum_from(N, &r.log);
    RatFun lower = section_eval(f, Mat::identity(2));
    if (!lower.is_zero()) acc += lower * ExpSum::geometric(mu[0] * step).sum_upto(-std::max(N, 1), &r.log);
    acc *= fp1;

    if (N > 0) {
        long count = qpow(p, N).get_num().get_si();
        Q units(count - count / p);
        for (int m = -N + 1; m <= N - 1; ++m) {
            RatFun shell;
            Q pm = qpow(p, m);
            for (long u = 1; u < count; ++u) {
                if (u % p == 0) continue;
                Q h = pm * u;
                shell += section_eval(f, Mat{{h, Q(1)}, {Q(0), Q(1)}}) * section_eval(fp, Mat{{h}});
            }
            acc += shell * twist.at_uniformizer(p).ratfun_pow(m) * RatFun(Scalar(Q(1) / units));
        }
    }
    r.exact = acc * detail::unit_vol(p);
    return r;
}

/// Lambda for shape (n, n): int_{G_n} f1(z_n g) f2(diag(z_{n-1},1) g) phi(e_n g) |det g|^{twist} dg, n <= 2.
/// At n = 2 phi must be a right-K-stable lattice combination and at most one section may fail K-invariance;
/// the K-projection then reduces to the spherical closed form.
inline IntegralResult lambda_nn(const Section& f1, const Section& f2, const Schwartz& phi,
                                const MultChar& twist = det_twist(Q(1), Q(0))) {
    if (f1->rank != f2->rank) throw DimensionError("lambda_nn: need equal ranks");
    if (phi.rows() != 1 || phi.cols() != f1->rank) throw DimensionError("lambda_nn: phi must live on k^{1 x n}");
    long p = f1->p;
    IntegralResult r;
    if (f1->rank == 1) {
        Monomial X = (f1->chars[0] * f2->chars[0] * twist).at_uniformizer(p);
        r.exact = section_eval(f1, Mat::identity(1)) * section_eval(f2, Mat::identity(1)) * tate_line(phi, {Q(1)}, X, &r.log);
        return r;
    }
    if (f1->rank != 2) throw CapabilityError("lambda_nn: exact path supports n <= 2");
    if (!phi.right_K_stable()) throw CapabilityError("lambda_nn: exact path needs a right-K-stable lattice combination");
    if (f1->level > 0 && f2->level > 0)
        throw CapabilityError("lambda_nn: exact path allows at most one non-K-invariant section");
    RatFun pref = k_average(f1) * k_average(f2);
    if (pref.is_zero()) return r;
    Monomial X = twist.at_uniformizer(p);
    RatFun acc;
    for (const auto& [depths, coeff] : phi.row_lattice_terms())
        acc += RatFun(coeff) * detail::lambda_nn_spherical(f1->chars, f2->chars, depths[0], X, p, &r.log);
    r.exact = pref * acc;
    return r;
}

}  // namespace rankin
