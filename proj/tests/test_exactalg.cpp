#include <gtest/gtest.h>

#include <cmath>

#include "rankin/exactalg/expsum.hpp"
#include "test_util.hpp"

using namespace rankin;
using testutil::rand_ratfun;
using testutil::rand_scalar;

namespace {
const RatFun Yf = RatFun::Y();
}

TEST(Rational, ValuationAndTruncation) {
    EXPECT_EQ(valuation(rat(50, 3), 5), 2);
    EXPECT_EQ(valuation(rat(3, 25), 5), -2);
    EXPECT_EQ(valuation(Q(0), 5), kInfVal);
    // 1/3 in Z_5: 1/3 = 2 + 3*5 + 1*25 + ...
    EXPECT_EQ(padic_truncate(rat(1, 3), 2, 5), Q(17));
    EXPECT_EQ(padic_truncate(rat(1, 5), 0, 5), rat(1, 5));
    EXPECT_EQ(padic_frac(rat(7, 5), 5), rat(2, 5));
    EXPECT_EQ(padic_frac(rat(-1, 5), 5), rat(4, 5));
    EXPECT_EQ(padic_truncate(Q(50), 1, 5), Q(0));
}

TEST(Scalar, InverseExact) {
    std::mt19937_64 g(11);
    for (int k = 0; k < 1000; ++k) {
        long q = (k % 3 == 0) ? 2 : (k % 3 == 1 ? 5 : 7);
        Scalar x = rand_scalar(g, q);
        if (x.is_zero()) continue;
        EXPECT_TRUE((x * x.inverse()).is_one()) << x.str();
    }
}

TEST(Scalar, RSquaredIsQ) {
    Scalar r = Scalar::r(5);
    EXPECT_EQ(r * r, Scalar(5));
    EXPECT_EQ(Scalar::sqrtq_pow(5, 3), Scalar(Q(0), Q(0), Q(5), Q(0), 5));
    EXPECT_EQ(Scalar::sqrtq_pow(5, -1) * r, Scalar(1));
}

TEST(Scalar, ParseAndPrint) {
    Scalar a = parse_scalar("2/3+1/3i");
    EXPECT_EQ(a, Scalar(rat(2, 3), rat(1, 3)));
    EXPECT_EQ(a.str(), "2/3+1/3*i");
    Scalar b = parse_scalar("1/2-3*i+2*r-1/5*i*r", 7);
    EXPECT_EQ(parse_scalar(b.str(), 7), b);
    EXPECT_EQ(parse_scalar("-i"), Scalar(Q(0), Q(-1)));
}

TEST(RatFun, CanonicalizeExamples) {
    RatFun f(Poly({Scalar(-1), Scalar(0), Scalar(1)}), Poly({Scalar(-1), Scalar(1)}));
    EXPECT_EQ(f, Yf + RatFun(1));
    RatFun h(Poly({Scalar(0), Scalar(2)}), Poly(Scalar(2)));
    EXPECT_EQ(h, Yf);
    RatFun a = RatFun(1) - RatFun(Scalar(rat(2, 3))) * Yf * Yf;
    RatFun one = a * a.inverse();
    EXPECT_EQ(one, RatFun(1));
    EXPECT_NEAR(std::abs(one.eval(1.0 / 7) - 1.0), 0.0, 1e-15);
    EXPECT_EQ(RatFun(f.num(), f.den()), f);
}

TEST(RatFun, ZeroDenominatorIsError) {
    EXPECT_THROW(RatFun(Poly(Scalar(1)), Poly()), AlgebraError);
}

TEST(RatFun, EvalExamples) {
    EXPECT_NEAR((Yf * Yf).eval(0.2).real(), 0.04, 1e-15);
    EXPECT_NEAR((RatFun(1) / (RatFun(1) - Yf)).eval(0.5).real(), 2.0, 1e-15);
    EXPECT_NEAR((RatFun(Scalar::r(5)) * Yf).eval(1.0).real(), 2.2360680, 1e-7);
    EXPECT_THROW((RatFun(1) / (RatFun(1) - Yf)).eval(1.0), PoleError);
}

TEST(RatFun, MultiplyDivideRoundTrip) {
    std::mt19937_64 g(5);
    for (int k = 0; k < 40; ++k) {
        RatFun f = rand_ratfun(g, 5), h = rand_ratfun(g, 5);
        if (h.is_zero()) continue;
        EXPECT_EQ(f * h / h, f);
    }
}

TEST(RatFun, EvalIsAdditive) {
    std::mt19937_64 g(6);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int k = 0; k < 40; ++k) {
        RatFun f = rand_ratfun(g, 7), h = rand_ratfun(g, 7);
        std::complex<double> y(u(g), u(g));
        try {
            auto lhs = (f + h).eval(y);
            auto rhs = f.eval(y) + h.eval(y);
            EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(lhs)));
        } catch (const PoleError&) {
        }
    }
}

TEST(RatFun, ReflectIsInvolution) {
    std::mt19937_64 g(8);
    for (int k = 0; k < 20; ++k) {
        RatFun f = rand_ratfun(g, 5);
        EXPECT_EQ(f.reflect(5).reflect(5), f);
    }
    // Y -> q^{-1/2}/Y: evaluate at s and 1-s
    RatFun f = rand_ratfun(g, 5);
    double s = 0.37;
    EXPECT_LT(std::abs(f.reflect(5).eval_s(s, 5) - f.eval_s(1 - s, 5)), 1e-9);
}

TEST(ExpSum, GeometricSums) {
    Monomial x(Scalar(rat(1, 3)), 2);
    ExpSum e = ExpSum::geometric(x);
    RatFun s = e.sum_from(2);
    RatFun expect = x.ratfun_pow(2) / (RatFun(1) - x.ratfun());
    EXPECT_EQ(s, expect);
    // partial sums agree with direct evaluation
    ExpSum p = e.partial_from(-1);
    for (int m = -1; m < 5; ++m) EXPECT_EQ(p.at(m), e.sum_range(-1, m - 1));
    // two-sided: sum_{m<=U} x^m + sum_{m>U} x^m is the formal sum of a bilateral series = 0
    EXPECT_EQ(e.sum_upto(3) + e.sum_from(4), RatFun());
}

TEST(ExpSum, DegenerateRatioThrows) {
    ExpSum e(RatFun(1));
    EXPECT_THROW(e.sum_from(0), DegenerateError);
    EXPECT_EQ(e.sum_range(0, 4), RatFun(5));
}
