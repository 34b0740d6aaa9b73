#pragma once

#include <algorithm>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "rankin/characters.hpp"
#include "rankin/exactalg/expsum.hpp"

namespace rankin {

/// {s : lower < Re(s) < upper}
struct StripInterval {
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();

    bool empty() const { return lower >= upper; }
    bool contains(double re) const { return lower < re && re < upper; }

    /// k evenly spaced interior real parts, clipped to a finite window.
    std::vector<double> interior_points(int k, double pad = 0.15) const {
        double lo = std::isfinite(lower) ? lower : upper - 2;
        double hi = std::isfinite(upper) ? upper : lo + 2;
        if (!std::isfinite(lo)) lo = -1, hi = 1;
        std::vector<double> out;
        double a = lo + pad * (hi - lo), b = hi - pad * (hi - lo);
        for (int i = 0; i < k; ++i) out.push_back(k == 1 ? (a + b) / 2 : a + (b - a) * i / (k - 1));
        return out;
    }
};

/// Convergence strip of the open-orbit and Rankin-Selberg integrals.
inline StripInterval omega_strip(const CharTuple& nu, const CharTuple& nup, long q = 0) {
    int n = static_cast<int>(nu.size()), np = static_cast<int>(nup.size());
    if (np != n && np != n - 1) throw DomainError("omega_strip: lengths must be (n, n) or (n, n-1)");
    StripInterval r;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= np; ++j) {
            double e = ex(nu[i - 1], q) + ex(nup[j - 1], q);
            if (i + j <= n) r.upper = std::min(r.upper, 1 - e);
            else r.lower = std::max(r.lower, -e);
        }
    return r;
}

/// Exact result with the formal ratios used by geometric continuation, or a truncated numeric value.
struct IntegralResult {
    bool is_exact = true;
    RatFun exact;
    ConvergenceLog log;

    std::complex<double> value = 0;
    int cutoff = 0;
    double last_shell = 0;
    std::vector<double> shell_profile;  // magnitude per |m| = 0..cutoff
    bool divergence_warning = false;

    /// Formal summation was literally convergent at s.
    bool literal_at(std::complex<double> s, long q) const { return log.literal_at(s, q); }
};

}  // namespace rankin
