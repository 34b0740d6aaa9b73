#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace rankin {

/// P(x) e^{-pi x^2} on the real line; coefficients lowest degree first.
class RealSchwartz {
public:
    using C = std::complex<double>;

    RealSchwartz() : p_{1.0} {}
    explicit RealSchwartz(std::vector<C> coeffs) : p_(std::move(coeffs)) {}

    static RealSchwartz gaussian() { return RealSchwartz(); }
    static RealSchwartz monomial(int k) {
        std::vector<C> v(k + 1, 0.0);
        v[k] = 1.0;
        return RealSchwartz(v);
    }

    const std::vector<C>& coeffs() const { return p_; }

    C operator()(double x) const {
        C acc = 0;
        for (int k = static_cast<int>(p_.size()) - 1; k >= 0; --k) acc = acc * x + p_[k];
        return acc * std::exp(-std::numbers::pi * x * x);
    }

    /// Transform against psi(xy) = e^{-2 pi i x y}, or its conjugate.
    /// Uses F(y^{k+1} g) = (+-i/2pi) (H_k)' -+ i x H_k for F(y^k g) = H_k g.
    RealSchwartz fourier(bool conj = false) const {
        const C unit = conj ? C(0, -1) : C(0, 1);
        std::vector<C> h{1.0};
        std::vector<C> out(1, 0.0);
        for (std::size_t k = 0; k < p_.size(); ++k) {
            if (out.size() < h.size()) out.resize(h.size(), 0.0);
            for (std::size_t j = 0; j < h.size(); ++j) out[j] += p_[k] * h[j];
            std::vector<C> next(h.size() + 1, 0.0);
            for (std::size_t j = 1; j < h.size(); ++j) next[j - 1] += unit / (2 * std::numbers::pi) * C(double(j)) * h[j];
            for (std::size_t j = 0; j < h.size(); ++j) next[j + 1] -= unit * h[j];
            h = std::move(next);
        }
        return RealSchwartz(out);
    }

    /// Smallest k with a nonzero coefficient (controls integrability at 0).
    int order_at_zero() const {
        for (std::size_t k = 0; k < p_.size(); ++k)
            if (std::abs(p_[k]) > 0) return static_cast<int>(k);
        return -1;
    }

private:
    std::vector<C> p_;
};

}  // namespace rankin
