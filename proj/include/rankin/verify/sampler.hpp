#pragma once

#include <cstdint>
#include <random>

#include "rankin/characters.hpp"
#include "rankin/localfield/schwartz.hpp"
#include "rankin/matrices.hpp"

namespace rankin {

/// Seeded source of random test parameters. Heights stay small so RatFun degrees stay low.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : g_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::mt19937_64& engine() { return g_; }

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
    double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g_); }

    Q rational(int h = 7) { return rat(uniform(-h, h), uniform(1, h)); }

    Q nonzero_rational(int h = 7) {
        for (;;)
            if (Q x = rational(h); x != 0) return x;
    }

    Scalar gaussian(int h = 7) {
        for (;;)
            if (Scalar s(rational(h), rational(h)); !s.is_zero()) return s;
    }

    /// Modulus-one Gaussian rational from a Pythagorean triple.
    Scalar unit_gaussian() {
        static const int trip[][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}, {12, 35, 37}};
        const auto& t = trip[uniform(0, 5)];
        Q re = rat(t[0], t[2]), im = rat(t[1], t[2]);
        if (uniform(0, 1)) std::swap(re, im);
        if (uniform(0, 1)) re = -re;
        if (uniform(0, 1)) im = -im;
        return Scalar(re, im);
    }

    MultChar unr(bool unit = false) { return MultChar::unr(unit ? unit_gaussian() : gaussian()); }

    CharTuple tuple(int n, bool unit = false) {
        CharTuple t;
        for (int i = 0; i < n; ++i) t.push_back(unr(unit));
        return t;
    }

    /// Lattice, coset, or phase-shifted lattice on k^{1x1}.
    Schwartz phi_line(long p, int shape) {
        switch (shape % 3) {
            case 0: return Schwartz::lattice(p, 1, 1, uniform(-1, 1));
            case 1: return Schwartz::coset(p, 1, 1, 1, {rat(uniform(1, p - 1), uniform(1, 7))});
            default: return Schwartz::elem(p, 1, 1, {rational() / p}, {Q(0)}, {0});
        }
    }

    /// Right-K-stable combination of row lattices on k^{1 x cols}.
    Schwartz phi_row(long p, int cols, bool combo = false) {
        Schwartz phi = Schwartz::lattice(p, 1, cols, uniform(-1, 1));
        if (combo) phi = phi + Schwartz::lattice(p, 1, cols, uniform(0, 2)).scaled(Scalar(rational(4)));
        return phi;
    }

    /// Upper-triangular rational matrix with p-adic spread at most one.
    Mat translate(int n, long p) {
        Mat h = Mat::identity(n);
        for (int i = 0; i < n; ++i) {
            Q u(uniform(1, 6));
            if (u.get_num() % p == 0) u = 1;
            h(i, i) = u * qpow(p, uniform(-1, 1));
        }
        for (int i = 0; i < n; ++i)
            for (int k = i + 1; k < n; ++k) h(i, k) = rat(uniform(-4, 4), uniform(0, 1) ? 1 : p);
        return h;
    }

private:
    std::mt19937_64 g_;
    std::uint64_t seed_;
};

}  // namespace rankin
