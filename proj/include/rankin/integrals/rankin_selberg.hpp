#pragma once

#include "rankin/factors.hpp"
#include "rankin/integrals/open_orbit.hpp"
#include "rankin/integrals/whittaker.hpp"

namespace rankin {

namespace detail {
inline void require_spherical_leaves(const Section& f, const char* who) {
    if (f->level != 0) throw CapabilityError(std::string(who) + ": exact path needs right-K-invariant sections");
}
}  // namespace detail

/// Z for shape (n, n-1): int_{N_{n-1} \ G_{n-1}} W_f(diag(h,1)) W'_{f'}(h) |det h|^{s - 1/2} dh, n <= 2.
inline IntegralResult rs_Z_nnm1(const Section& f, const Section& fp) {
    if (fp->rank != f->rank - 1) throw DimensionError("rs_Z: need ranks (n, n-1)");
    IntegralResult r;
    if (f->rank == 1) {
        r.exact = section_eval(f, Mat::identity(1)) * section_eval(fp, Mat::identity(0));
        return r;
    }
    if (f->rank != 2) throw CapabilityError("rs_Z: exact path supports n <= 2");
    detail::require_spherical_leaves(f, "rs_Z");
    long p = f->p;
    RatFun pref = section_eval(f, Mat::identity(2)) * section_eval(fp, Mat::identity(1));
    if (pref.is_zero()) return r;
    Monomial step = fp->chars[0].at_uniformizer(p) * det_twist(Q(1), Q(-1, 2)).at_uniformizer(p);
    r.exact = pref * detail::unit_vol(p) * whittaker_expsum(f->chars, p).twist(step).sum_from(0, &r.log);
    return r;
}

/// Z for shape (n, n): int_{N_n \ G_n} W_f(g) W'_{f'}(g) phi(e_n g) |det g|^s dg, n <= 2.
/// At n = 2 the torus sum uses W(diag(t1,t2)) = omega(t2) W(diag(t1/t2,1)) with the modulus q^{m1-m2}.
inline IntegralResult rs_Z_nn(const Section& f, const Section& fp, const Schwartz& phi) {
    if (f->rank != fp->rank) throw DimensionError("rs_Z: need equal ranks");
    if (phi.rows() != 1 || phi.cols() != f->rank) throw DimensionError("rs_Z: phi must live on k^{1 x n}");
    long p = f->p;
    IntegralResult r;
    if (f->rank == 1) {
        Monomial X = (f->chars[0] * fp->chars[0] * det_twist(Q(1), Q(0))).at_uniformizer(p);
        r.exact = section_eval(f, Mat::identity(1)) * section_eval(fp, Mat::identity(1)) * tate_line(phi, {Q(1)}, X, &r.log);
        return r;
    }
    if (f->rank != 2) throw CapabilityError("rs_Z: exact path supports n <= 2");
    detail::require_spherical_leaves(f, "rs_Z");
    detail::require_spherical_leaves(fp, "rs_Z");
    if (!phi.right_K_stable()) throw CapabilityError("rs_Z: exact path needs a right-K-stable lattice combination");
    RatFun pref = section_eval(f, Mat::identity(2)) * section_eval(fp, Mat::identity(2));
    if (pref.is_zero()) return r;
    Monomial X = det_twist(Q(1), Q(0)).at_uniformizer(p);
    Monomial central = f->chars[0].at_uniformizer(p) * f->chars[1].at_uniformizer(p) * fp->chars[0].at_uniformizer(p) *
                       fp->chars[1].at_uniformizer(p) * X * X;
    ExpSum WW = whittaker_expsum(f->chars, p) * whittaker_expsum(fp->chars, p);
    RatFun diag_sum = WW.twist(X * Monomial(Scalar(Q(p)), 0)).sum_from(0, &r.log);
    RatFun acc;
    for (const auto& [depths, coeff] : phi.row_lattice_terms())
        acc += RatFun(coeff) * ExpSum::geometric(central).sum_from(depths[0], &r.log);
    r.exact = pref * RatFun(Scalar(detail::vol_K2(p))) * acc * diag_sum;
    return r;
}

/// Z / L(s, nu x nu')
inline RatFun rs_Z_normalized(const IntegralResult& z, const CharTuple& nu, const CharTuple& nup, long q) {
    return z.exact * pair_products(nu, nup, q).L.exact.inverse();
}

}  // namespace rankin
