#include <gtest/gtest.h>

#include "rankin/matrices.hpp"
#include "test_util.hpp"

using namespace rankin;

namespace {
Mat rand_mat(std::mt19937_64& g, int k) {
    for (;;) {
        Mat m(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m(i, j) = testutil::rand_rat(g, 9);
        if (m.det() != 0) return m;
    }
}
}  // namespace

TEST(Matrices, SmallZ) {
    EXPECT_EQ(make_z(1), Mat::identity(1));
    EXPECT_EQ(make_z(2), (Mat{{Q(1), Q(1)}, {Q(0), Q(1)}}));
    EXPECT_EQ(make_z(3), (Mat{{Q(1), Q(2), Q(1)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}}));
}

TEST(Matrices, Z3ByBlocks) {
    // independent block product: diag(w2, 1) * diag(z1^{-1}, 1_2) * [[z2^t w2 z2, e], [0, 1]]
    Mat f1{{Q(0), Q(1), Q(0)}, {Q(1), Q(0), Q(0)}, {Q(0), Q(0), Q(1)}};
    Mat f3{{Q(0), Q(1), Q(0)}, {Q(1), Q(2), Q(1)}, {Q(0), Q(0), Q(1)}};
    EXPECT_EQ(f1 * f3, make_z(3));
}

TEST(Matrices, ZRecursionUnimodular) {
    for (int k = 2; k <= 10; ++k) {
        Mat z = make_z(k);
        EXPECT_TRUE(z.is_integer());
        Q d = z.det();
        EXPECT_TRUE(d == 1 || d == -1) << k;
        EXPECT_TRUE(z.inverse().is_integer());
        auto f = detail::z_factors(k, make_z(k - 1), make_z(k - 2));
        EXPECT_EQ(f[0] * f[1] * f[2], z);
    }
}

TEST(Matrices, WAndIota) {
    Mat w = make_w(3);
    EXPECT_EQ(w * w, Mat::identity(3));
    std::mt19937_64 g(1);
    for (int t = 0; t < 20; ++t) {
        Mat a = rand_mat(g, 3), b = rand_mat(g, 3);
        EXPECT_EQ(iota(iota(a)), a);
        EXPECT_EQ(iota(a * b), iota(a) * iota(b));
        EXPECT_EQ(hat_conj(hat_conj(a)), a);
        EXPECT_EQ((a * a.inverse()), Mat::identity(3));
    }
}

TEST(Matrices, Errors) {
    EXPECT_THROW(Mat({{Q(1), Q(2)}, {Q(2), Q(4)}}).inverse(), AlgebraError);
    EXPECT_THROW(Mat::identity(2) * Mat::identity(3), DimensionError);
    EXPECT_THROW(make_w(-1), DomainError);
}

TEST(Matrices, KMembership) {
    EXPECT_TRUE(make_z(4).in_K(5));
    EXPECT_FALSE(Mat::diag({Q(5), Q(1)}).in_K(5));
    EXPECT_TRUE(is_monomial(make_w(4)));
    EXPECT_FALSE(is_monomial(make_z(2)));
}
