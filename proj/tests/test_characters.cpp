#include <gtest/gtest.h>

#include <cmath>

#include "rankin/characters.hpp"
#include "test_util.hpp"

using namespace rankin;

TEST(Characters, ExExamples) {
    EXPECT_DOUBLE_EQ(ex(MultChar::unr(Scalar::i(), rat(1, 2)), 5), 0.5);
    EXPECT_DOUBLE_EQ(ex(MultChar::real(1, rat(1, 2))), 0.5);
    double e = ex(MultChar::unr(Scalar(2)), 5);
    EXPECT_NEAR(e, -0.4306765, 1e-7);
    // |omega(p^3)| = q^{-3 ex}
    double mod = std::abs(MultChar::unr(Scalar(2)).at_uniformizer(5).c.pow(3).to_complex(5));
    EXPECT_NEAR(mod, std::pow(5.0, -3 * e), 1e-12);
}

TEST(Characters, CharEvalExamples) {
    Scalar a(rat(2, 3), rat(1, 3));
    EXPECT_EQ(char_eval(MultChar::unr(a), Q(5), 5), RatFun(a));
    EXPECT_EQ(char_eval(MultChar::unr(a, rat(1, 2)), Q(25), 5), RatFun(a * a * Scalar(rat(1, 5))));
    Scalar c(3);
    EXPECT_EQ(char_eval(MultChar::unr_s(c), Q(5), 5), RatFun::monomial(c, 2));
    EXPECT_EQ(char_eval(MultChar::unr(c), Q(5), 5, Q(1)), RatFun::monomial(c, 2));
    EXPECT_THROW(char_eval(MultChar::unr(c), Q(0), 5), DomainError);
}

TEST(Characters, MultiplicativeOnValuations) {
    std::mt19937_64 g(2);
    for (int k = 0; k < 50; ++k) {
        MultChar w = MultChar::unr(testutil::rand_nonzero_gaussian(g), rat(k % 3, 2));
        Q x = testutil::rand_rat(g) * 5, y = testutil::rand_rat(g) / 25;
        if (x == 0 || y == 0) continue;
        EXPECT_EQ(char_eval(w, x * y, 5), char_eval(w, x, 5) * char_eval(w, y, 5));
        EXPECT_EQ(char_eval(w.inverse(), x, 5), char_eval(w, x, 5).inverse());
    }
}

TEST(Characters, InverseAndSigns) {
    MultChar w = MultChar::unr(Scalar(2), rat(1, 2));
    EXPECT_EQ(w.inverse().a, Scalar(rat(1, 2)));
    EXPECT_EQ(w.inverse().t, rat(-1, 2));
    MultChar s = MultChar::real(1, rat(1, 3));
    EXPECT_EQ(s.inverse().eps, 1);
    EXPECT_EQ(s.inverse().t, rat(-1, 3));
    EXPECT_EQ(w.at_minus_one(), 1);
    EXPECT_EQ(s.at_minus_one(), -1);
    EXPECT_THROW(MultChar::unr(Scalar(0)), DomainError);
    EXPECT_THROW(MultChar::unr(Scalar(1), rat(1, 3)), DomainError);
}

TEST(Characters, HatDualInvolution) {
    CharTuple a{MultChar::unr(Scalar(2)), MultChar::unr(Scalar(3), rat(1, 2)), MultChar::unr(Scalar::i())};
    CharTuple h = hat_dual(a);
    EXPECT_EQ(h[0], a[2].inverse());
    EXPECT_EQ(hat_dual(h), a);
}

TEST(Characters, SignProduct) {
    CharTuple u{MultChar::unr(Scalar(2)), MultChar::unr(Scalar(3)), MultChar::unr(Scalar(5))};
    EXPECT_EQ(sgn_product(u, u), 1);
    MultChar sgn = MultChar::real(1), triv = MultChar::real(0);
    EXPECT_EQ(sgn_product({sgn, sgn}, {sgn}), 1);
    EXPECT_EQ(sgn_product({sgn, triv, sgn}, {sgn, triv, triv}), -1);
    EXPECT_THROW(sgn_product({sgn, triv, sgn}, {sgn}), DomainError);
}
