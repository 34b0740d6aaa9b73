#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rankin/localfield/real_schwartz.hpp"
#include "rankin/localfield/schwartz.hpp"
#include "test_util.hpp"

using namespace rankin;

namespace {

const LocalField F5 = LocalField::padic(5);

std::complex<double> riemann_ball(long p, const Q& c, int m, int depth) {
    Q step = qpow(p, m);
    long count = qpow(p, depth - m).get_num().get_si();
    std::complex<double> acc = 0;
    for (long u = 0; u < count; ++u) acc += psi_numeric(c * step * Q(u), p);
    return acc * qpow(p, -depth).get_d();
}

Schwartz rand_elem(std::mt19937_64& g, long p, int rows, int cols) {
    std::uniform_int_distribution<int> depth(-2, 2), pick(0, 2);
    std::size_t n = static_cast<std::size_t>(rows) * cols;
    std::vector<Q> c(n), d(n);
    std::vector<int> m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = depth(g);
        if (pick(g) == 0) c[i] = testutil::rand_rat(g, 6) * qpow(p, -m[i] - 1);
        else d[i] = testutil::rand_rat(g, 6);
        if (c[i] != 0 && d[i] != 0) d[i] = 0;
    }
    return Schwartz::elem(p, rows, cols, c, d, m, Scalar(testutil::rand_rat(g) + 1));
}

}  // namespace

TEST(Field, Validation) {
    EXPECT_THROW(LocalField::padic(6), DomainError);
    EXPECT_THROW(psi_ball_integral(LocalField::real(), Q(1), 0), UnsupportedFieldError);
}

TEST(Field, PsiBallExamples) {
    EXPECT_EQ(psi_ball_integral(F5, Q(1), 0), Scalar(1));
    EXPECT_EQ(psi_ball_integral(F5, rat(1, 5), 0), Scalar(0));
    EXPECT_EQ(psi_ball_integral(F5, rat(1, 5), 1), Scalar(rat(1, 5)));
}

TEST(Field, PsiBallMatchesRiemannSum) {
    for (long p : {2L, 3L, 5L}) {
        for (int vc = -3; vc <= 1; ++vc)
            for (int m = -2; m <= 2; ++m) {
                Q c = qpow(p, vc) * rat(p == 2 ? 3 : 2, 1);
                Scalar exact = psi_ball_integral(LocalField::padic(p), c, m);
                EXPECT_TRUE(exact.is_zero() || exact == Scalar(qpow(p, -m)));
                int depth = std::max(m, -vc) + 2;
                auto approx = riemann_ball(p, c, m, depth);
                EXPECT_NEAR(approx.real(), exact.to_complex().real(), 1e-9);
                EXPECT_NEAR(approx.imag(), 0.0, 1e-9);
            }
    }
}

TEST(Field, PsiExactRootsOfUnity) {
    EXPECT_EQ(psi_exact(rat(1, 2), 2), Scalar(-1));
    EXPECT_EQ(psi_exact(rat(1, 4), 2), Scalar::i());
    EXPECT_EQ(psi_exact(Q(7), 5), Scalar(1));
    EXPECT_THROW(psi_exact(rat(1, 5), 5), CapabilityError);
}

TEST(Schwartz, FourierExamples) {
    Schwartz one = Schwartz::lattice(5, 1, 1, 0);
    EXPECT_EQ(one.fourier(), one);
    EXPECT_EQ(Schwartz::lattice(5, 1, 1, 1).fourier(), Schwartz::lattice(5, 1, 1, -1).scaled(Scalar(rat(1, 5))));
    Q c = rat(3, 25);
    Schwartz phase = Schwartz::elem(5, 1, 1, {c}, {Q(0)}, {0});
    EXPECT_TRUE(Schwartz::equivalent(phase.fourier(), Schwartz::coset(5, 1, 1, 0, {-c})));
}

TEST(Schwartz, FourierPointwise) {
    // F(phi)(y) = int phi(x) psi(x y) dx checked by a Riemann sum over the support.
    Schwartz phi = Schwartz::elem(5, 1, 1, {rat(2, 5)}, {Q(0)}, {0}) + Schwartz::coset(5, 1, 1, 1, {rat(1, 5)});
    Schwartz hat = phi.fourier();
    for (Q y : {Q(0), rat(1, 5), rat(3, 5), rat(2, 25), Q(1), rat(-7, 5)}) {
        // support of phi lies in 5^{-1}O; sample 5^{-1}O / 5^{depth}O
        std::complex<double> acc = 0;
        const int depth = 3;
        long count = qpow(5, depth + 1).get_num().get_si();
        for (long u = 0; u < count; ++u) {
            Q x = Q(u) * qpow(5, -1);
            acc += phi.eval_numeric({x}) * psi_numeric(x * y, 5);
        }
        acc *= qpow(5, -depth).get_d();
        auto exact = hat.eval_numeric({y});
        EXPECT_NEAR(std::abs(acc - exact), 0.0, 1e-9) << y.get_str();
    }
}

TEST(Schwartz, DoubleFourierIsNegation) {
    std::mt19937_64 g(3);
    for (int k = 0; k < 20; ++k) {
        Schwartz phi = rand_elem(g, 5, 1, 2);
        for (bool conj : {false, true})
            EXPECT_TRUE(Schwartz::equivalent(phi.fourier(conj).fourier(conj), phi.negate_arg())) << phi.str();
    }
}

TEST(Schwartz, TransformExamples) {
    EXPECT_EQ(Schwartz::lattice(5, 2, 1).transpose(), Schwartz::lattice(5, 1, 2));
    Schwartz phi = Schwartz::lattice(5, 1, 2, 1);
    EXPECT_EQ(phi.right_translate(Mat::identity(2)), phi);
    Schwartz t = Schwartz::lattice(5, 1, 1).right_translate(Mat{{Q(5)}});
    EXPECT_EQ(t, Schwartz::lattice(5, 1, 1, -1));
    for (Q x : {Q(1), rat(1, 5), rat(1, 25)}) EXPECT_EQ(t.eval_exact({x}), Schwartz::lattice(5, 1, 1).eval_exact({x * 5}));
}

TEST(Schwartz, TranslateComposes) {
    std::mt19937_64 g(5);
    std::vector<Mat> mats = {Mat{{Q(0), Q(1)}, {Q(1), Q(0)}}, Mat{{Q(5), Q(0)}, {Q(0), rat(1, 5)}},
                             Mat{{Q(1), Q(1)}, {Q(0), Q(1)}}, Mat{{Q(2), Q(0)}, {Q(0), Q(-3)}}};
    for (int k = 0; k < 20; ++k) {
        Schwartz phi = rand_elem(g, 5, 1, 2);
        const Mat& a = mats[k % mats.size()];
        const Mat& b = mats[(k / 2 + 1) % mats.size()];
        Schwartz lhs, rhs;
        try {
            lhs = phi.right_translate(b).right_translate(a);
            rhs = phi.right_translate(a * b);
        } catch (const CapabilityError&) {
            continue;
        }
        EXPECT_TRUE(Schwartz::equivalent(lhs, rhs)) << phi.str();
        for (int t = 0; t < 10; ++t) {
            std::vector<Q> x{testutil::rand_rat(g, 30) / 5, testutil::rand_rat(g, 30) / 5};
            std::vector<Q> xab{x[0] * (a * b)(0, 0) + x[1] * (a * b)(1, 0), x[0] * (a * b)(0, 1) + x[1] * (a * b)(1, 1)};
            EXPECT_LT(std::abs(rhs.eval_numeric(x) - phi.eval_numeric(xab)), 1e-9);
        }
    }
}

TEST(Schwartz, EvalAgreesAfterRefinement) {
    std::mt19937_64 g(9);
    for (int k = 0; k < 10; ++k) {
        Schwartz phi = rand_elem(g, 3, 1, 1);
        Schwartz r = phi.refined();
        for (int t = 0; t < 20; ++t) {
            std::vector<Q> x{testutil::rand_rat(g, 40) / 9};
            EXPECT_LT(std::abs(phi.eval_numeric(x) - r.eval_numeric(x)), 1e-9);
        }
    }
}

TEST(RealSchwartz, GaussianSelfDual) {
    RealSchwartz g = RealSchwartz::gaussian().fourier();
    EXPECT_NEAR(std::abs(g.coeffs()[0] - 1.0), 0.0, 1e-14);
    RealSchwartz x = RealSchwartz::monomial(1).fourier();
    EXPECT_NEAR(std::abs(x.coeffs()[1] - std::complex<double>(0, -1)), 0.0, 1e-14);
    RealSchwartz xc = RealSchwartz::monomial(1).fourier(true);
    EXPECT_NEAR(std::abs(xc.coeffs()[1] - std::complex<double>(0, 1)), 0.0, 1e-14);
}

TEST(RealSchwartz, FourierMatchesQuadrature) {
    RealSchwartz f({1.0, 0.5, -2.0, 0.25});
    RealSchwartz h = f.fourier();
    for (double y : {0.0, 0.3, -1.1, 2.0}) {
        std::complex<double> acc = 0;
        const double dx = 1e-3;
        for (double x = -8; x <= 8; x += dx) acc += f(x) * psi_real(x * y) * dx;
        EXPECT_NEAR(std::abs(acc - h(y)), 0.0, 1e-9);
    }
    RealSchwartz back = h.fourier();
    for (double x : {0.2, -0.7}) EXPECT_NEAR(std::abs(back(x) - f(-x)), 0.0, 1e-10);
}
