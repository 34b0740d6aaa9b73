#pragma once

#include "rankin/exactalg/expsum.hpp"
#include "rankin/iwasawa.hpp"
#include "rankin/localfield/field.hpp"

namespace rankin {

/// W_f(diag(p^m, 1)) = int_k f([[1,u],[0,1]] diag(p^m,1)) psi-bar(u) du for a right-K-invariant rank-2 section,
/// summed over the ball v(u) >= m and the shells v(u) = j < m (shells below -1 integrate psi to zero).
inline RatFun whittaker_value(const Section& f, int m) {
    if (f->rank != 2) throw CapabilityError("whittaker_value: exact path supports rank 2 only");
    if (f->level != 0) throw CapabilityError("whittaker_value: exact path needs a right-K-invariant section");
    long p = f->p;
    LocalField F = LocalField::padic(p);
    Q pm = qpow(p, m);
    RatFun acc = section_eval(f, Mat::diag({pm, Q(1)})) * RatFun(psi_ball_integral(F, Q(1), m));
    for (int j = -1; j < m; ++j) {
        Scalar shell = psi_ball_integral(F, Q(1), j) - psi_ball_integral(F, Q(1), j + 1);
        if (shell.is_zero()) continue;
        acc += section_eval(f, Mat{{pm, qpow(p, j)}, {Q(0), Q(1)}}) * RatFun(shell);
    }
    return acc;
}

/// Value of W_{f°} at diag(p^m, 1) for the spherical vector of I_nu.
inline RatFun jacquet_whittaker(const CharTuple& nu, int m, long q) {
    if (nu.size() != 2) throw CapabilityError("jacquet_whittaker: exact path supports rank 2 only");
    return whittaker_value(spherical(q, nu), m);
}

/// m -> W_{f°}(diag(p^m, 1)) as an exponential sum, valid for m >= 0.
/// With slots mu_1, mu_2: (mu_1/q)^m - mu_1^{-1} mu_2^{m+1} + (1 - 1/q) mu_2^m sum_{j<m} (mu_1/(mu_2 q))^j.
inline ExpSum whittaker_expsum(const CharTuple& nu, long q) {
    if (nu.size() != 2) throw CapabilityError("whittaker_expsum: rank 2 only");
    auto mu = spherical_slots(nu, q);
    Monomial invq(Scalar(Q(1, q)), 0);
    ExpSum w = ExpSum::geometric(mu[0] * invq);
    w += ExpSum::geometric(mu[1], -(mu[0].inverse() * mu[1]).ratfun());
    ExpSum shells = ExpSum::geometric(mu[0] * mu[1].inverse() * invq, RatFun(Scalar(Q(1) - Q(1, q))));
    w += shells.partial_from(0).twist(mu[1]);
    return w;
}

}  // namespace rankin
