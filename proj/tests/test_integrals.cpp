#include <gtest/gtest.h>

#include "rankin/integrals.hpp"
#include "test_util.hpp"

using namespace rankin;

namespace {

const RatFun Yf = RatFun::Y();
const RatFun Y2 = Yf * Yf;
constexpr int kCut = 40;

CharTuple unit_tuple(std::mt19937_64& g, int n) {
    CharTuple t;
    for (int i = 0; i < n; ++i) t.push_back(MultChar::unr(testutil::rand_unit_gaussian(g)));
    return t;
}

CharTuple rand_tuple(std::mt19937_64& g, int n) {
    CharTuple t;
    for (int i = 0; i < n; ++i) t.push_back(MultChar::unr(testutil::rand_nonzero_gaussian(g, 7)));
    return t;
}

RatFun c(const Q& x) { return RatFun(Scalar(x)); }
RatFun c(const Scalar& x) { return RatFun(x); }

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Strip, Table) {
    auto u = [](const Scalar& a) { return MultChar::unr(a); };
    Scalar one(1);
    struct Case {
        CharTuple nu, nup;
        double lo, hi;
    };
    double inf = std::numeric_limits<double>::infinity();
    std::vector<Case> cases = {
        {{u(one), u(one)}, {u(one)}, 0, 1},
        {{u(one)}, {u(one)}, 0, inf},
        {{MultChar::unr(one, rat(1, 2)), MultChar::unr(one, rat(-1, 2))}, {u(one)}, 0.5, 0.5},
        {{u(one)}, {}, -inf, inf},
        {{u(one), u(one)}, {u(one), u(one)}, 0, 1},
        {{u(Scalar(5)), u(one)}, {u(one)}, 0, 2},
        {{u(one), u(Scalar(Q(1, 5)))}, {u(one)}, -1, 1},
        {{MultChar::unr(one, 1), u(one)}, {MultChar::unr(one, rat(1, 2))}, -0.5, -0.5},
        {{u(one), u(one), u(one)}, {u(one), u(one)}, 0, 1},
        {{u(Scalar(25)), u(one)}, {u(Scalar(Q(1, 5)))}, -1, 2},
    };
    for (const auto& cs : cases) {
        StripInterval r = omega_strip(cs.nu, cs.nup, 5);
        if (std::isinf(cs.lo)) EXPECT_EQ(r.lower, cs.lo);
        else EXPECT_NEAR(r.lower, cs.lo, 1e-12);
        if (std::isinf(cs.hi)) EXPECT_EQ(r.upper, cs.hi);
        else EXPECT_NEAR(r.upper, cs.hi, 1e-12);
        EXPECT_EQ(r.empty(), cs.lo >= cs.hi);
    }
    EXPECT_THROW(omega_strip({u(one)}, {u(one), u(one)}), DomainError);
}

TEST(Tate, Examples) {
    long q = 5;
    Scalar a(Q(1, 2));
    RatFun z = tate_zeta(MultChar::unr(a), Schwartz::lattice(q, 1, 1));
    EXPECT_EQ(z, c(Q(4, 5)) / (RatFun(1) - c(a) * Y2));
    Schwartz units = Schwartz::lattice(q, 1, 1) - Schwartz::lattice(q, 1, 1, 1);
    EXPECT_EQ(tate_zeta(MultChar::unr(Scalar(1)), units), c(Q(4, 5)));
    auto num = numeric::tate(MultChar::unr(a), Schwartz::lattice(q, 1, 1), 0.8, 60);
    EXPECT_LT(rel(num.value, z.eval_s(0.8, q)), 1e-10);
    EXPECT_FALSE(num.divergence_warning);
}

TEST(Tate, NumericAgreesOnAllShapes) {
    long q = 5;
    std::mt19937_64 g(61);
    std::vector<Schwartz> phis = {
        Schwartz::lattice(q, 1, 1, -1),
        Schwartz::coset(q, 1, 1, 2, {Q(3)}),
        Schwartz::elem(q, 1, 1, {rat(2, 25)}, {Q(0)}, {1}),
        Schwartz::elem(q, 1, 1, {rat(1, 5)}, {Q(0)}, {-1}, Scalar(Q(2), Q(1))),
    };
    for (const auto& phi : phis)
        for (int t = 0; t < 3; ++t) {
            MultChar w = MultChar::unr(testutil::rand_unit_gaussian(g));
            RatFun z = tate_zeta(w, phi);
            for (double s : {0.4, 1.0, 1.7}) EXPECT_LT(rel(numeric::tate(w, phi, s, kCut).value, z.eval_s(s, q)), 1e-8) << phi.str();
        }
}

TEST(Whittaker, Examples) {
    long q = 5;
    Scalar a1(Q(2), Q(1)), a2(Q(1, 3));
    CharTuple nu{MultChar::unr(a1), MultChar::unr(a2)};
    EXPECT_EQ(jacquet_whittaker(nu, 0, q), RatFun(1) - c(a2 * a1.inverse() * Scalar(Q(1, 5))));
    EXPECT_TRUE(jacquet_whittaker(nu, -1, q).is_zero());
    EXPECT_TRUE(jacquet_whittaker(nu, -3, q).is_zero());
    CharTuple eq{MultChar::unr(a1), MultChar::unr(a1)};
    EXPECT_EQ(jacquet_whittaker(eq, 0, q), c(Q(4, 5)));
    EXPECT_THROW(jacquet_whittaker({MultChar::unr(a1)}, 0, q), CapabilityError);
}

TEST(Whittaker, ClosedFormMatchesShellSum) {
    std::mt19937_64 g(63);
    for (int t = 0; t < 10; ++t) {
        long q = t % 2 ? 5 : 3;
        CharTuple nu = rand_tuple(g, 2);
        if (nu[0].a == nu[1].a * Scalar(Q(q))) continue;
        ExpSum w = whittaker_expsum(nu, q);
        for (int m = 0; m <= 6; ++m) EXPECT_EQ(w.at(m), jacquet_whittaker(nu, m, q)) << m;
    }
}

TEST(Whittaker, NumericAgrees) {
    std::mt19937_64 g(65);
    long q = 5;
    for (int t = 0; t < 5; ++t) {
        CharTuple nu = unit_tuple(g, 2);
        Section f = spherical(q, nu);
        for (int m = -2; m <= 5; ++m) {
            auto exact = jacquet_whittaker(nu, m, q).eval_s(0.5, q);
            auto num = numeric::whittaker(f, qpow(q, m), Q(1), 0.5, kCut);
            EXPECT_LT(std::abs(num - exact), 1e-10) << m;
        }
    }
}

TEST(Whittaker, NumericTranslateMatchesShiftedArgument) {
    // W_{h.f}(g) = W_f(g h) for a level-1 translate
    long q = 5;
    std::mt19937_64 g(67);
    CharTuple nu = unit_tuple(g, 2);
    Section f = spherical(q, nu);
    Mat h = Mat::diag({rat(15, 7), Q(1)});
    Section hf = translate(f, h);
    for (int m = -1; m <= 4; ++m)
        for (long u : {1L, 2L, 3L}) {
            Q t = qpow(q, m) * u;
            auto lhs = numeric::whittaker(hf, t, Q(1), 0.5, kCut);
            auto rhs = numeric::whittaker(f, t * h(0, 0), Q(1), 0.5, kCut);
            EXPECT_LT(std::abs(lhs - rhs), 1e-10) << m << " " << u;
        }
}

TEST(RankinSelberg, NnmOneClosedForm) {
    long q = 5;
    std::mt19937_64 g(71);
    for (int t = 0; t < 6; ++t) {
        CharTuple nu = rand_tuple(g, 2), nup = rand_tuple(g, 1);
        if (nu[0].a == nu[1].a) continue;
        Scalar a1 = nu[0].a, a2 = nu[1].a, ap = nup[0].a;
        IntegralResult z = rs_Z_nnm1(spherical(q, nu), spherical(q, nup));
        RatFun expect = c(Q(4, 5)) * (RatFun(1) - c(a2 * a1.inverse() * Scalar(Q(1, 5)))) *
                        ((RatFun(1) - c(a1 * ap) * Y2) * (RatFun(1) - c(a2 * ap) * Y2)).inverse();
        EXPECT_EQ(z.exact, expect);
        RatFun norm = rs_Z_normalized(z, nu, nup, q);
        EXPECT_EQ(norm, c(Q(4, 5)) * (RatFun(1) - c(a2 * a1.inverse() * Scalar(Q(1, 5)))));
    }
    Section f1 = spherical(q, {MultChar::unr(Scalar(3))});
    Section f0 = spherical(q, {});
    EXPECT_EQ(rs_Z_nnm1(f1, f0).exact, RatFun(1));
    EXPECT_THROW(rs_Z_nnm1(translate(spherical(q, rand_tuple(g, 2)), Mat::diag({Q(5), Q(1)})), spherical(q, {MultChar::unr(Scalar(1))})),
                 CapabilityError);
}

TEST(OpenOrbit, NnpClosedForm) {
    long q = 5;
    std::mt19937_64 g(73);
    for (int t = 0; t < 6; ++t) {
        CharTuple nu = rand_tuple(g, 2), nup = rand_tuple(g, 1);
        if (nu[0].a == nu[1].a) continue;
        Scalar a1 = nu[0].a, a2 = nu[1].a, ap = nup[0].a;
        IntegralResult L = lambda_nnp(spherical(q, nu), spherical(q, nup));
        RatFun expect = c(Q(4, 5)) * (RatFun(1) - c(a2 * a1.inverse() * Scalar(Q(1, 5)))) /
                        ((RatFun(1) - c(a2 * ap) * Y2) * (RatFun(1) - c((a1 * ap).inverse() * Scalar(Q(1, 5))) * Y2.inverse()));
        EXPECT_EQ(L.exact, expect);
        // open-orbit identity at (2, 1)
        IntegralResult Z = rs_Z_nnm1(spherical(q, nu), spherical(q, nup));
        EXPECT_EQ(L.exact, Gamma_psi(nu, nup, q).exact * Z.exact);
    }
    Section f = spherical(q, {MultChar::unr(Scalar(2))});
    EXPECT_EQ(lambda_nnp(f, spherical(q, {})).exact, RatFun(1));
}

TEST(OpenOrbit, NnpNumericAgrees) {
    long q = 5;
    std::mt19937_64 g(75);
    for (int t = 0; t < 4; ++t) {
        CharTuple nu = unit_tuple(g, 2), nup = unit_tuple(g, 1);
        Section f = spherical(q, nu), fp = spherical(q, nup);
        if (t % 2) f = translate(f, Mat{{rat(5, 3), Q(1)}, {Q(0), Q(1)}});
        IntegralResult L = lambda_nnp(f, fp), Z = rs_Z_nnm1(spherical(q, nu), fp);
        for (double s : {0.3, 0.5, 0.7}) {
            auto num = numeric::lambda_nnp(f, fp, s, kCut);
            EXPECT_LT(rel(num.value, L.exact.eval_s(s, q)), 1e-8) << t << " " << s;
            EXPECT_FALSE(num.divergence_warning);
            EXPECT_TRUE(L.literal_at(s, q));
            auto nz = numeric::Z_nnm1(spherical(q, nu), fp, s, kCut);
            EXPECT_LT(rel(nz.value, Z.exact.eval_s(s, q)), 1e-8);
        }
    }
}

TEST(OpenOrbit, NnpGodementPlusNumeric) {
    long q = 5;
    std::mt19937_64 g(77);
    CharTuple mu = unit_tuple(g, 1), nup = unit_tuple(g, 1);
    MultChar chi = MultChar::unr(testutil::rand_unit_gaussian(g));
    Schwartz phi0 = Schwartz::elem(q, 1, 2, {Q(0), rat(1, 5)}, {Q(0), Q(0)}, {0, 0});
    Section fp = godement_plus(spherical(q, mu), chi, phi0);
    EXPECT_GT(fp->level, 0);
    IntegralResult L = lambda_nnp(fp, spherical(q, nup));
    for (double s : {0.3, 0.5, 0.7}) EXPECT_LT(rel(numeric::lambda_nnp(fp, spherical(q, nup), s, kCut).value, L.exact.eval_s(s, q)), 1e-8);
}

TEST(OpenOrbit, NnRankOneIsTate) {
    // n = 1: Lambda = Z = Tate zeta of the product character
    long q = 5;
    std::mt19937_64 g(79);
    for (int t = 0; t < 50; ++t) {
        CharTuple a = rand_tuple(g, 1), b = rand_tuple(g, 1);
        Schwartz phi;
        switch (t % 3) {
            case 0: phi = Schwartz::lattice(q, 1, 1, static_cast<int>(g() % 3) - 1); break;
            case 1: phi = Schwartz::coset(q, 1, 1, 1, {rat(1, 3)}); break;
            default: phi = Schwartz::elem(q, 1, 1, {rat(3, 25)}, {Q(0)}, {0}); break;
        }
        Section f = spherical(q, a), fp = spherical(q, b);
        RatFun L = lambda_nn(f, fp, phi).exact;
        EXPECT_EQ(L, rs_Z_nn(f, fp, phi).exact);
        EXPECT_EQ(L, tate_zeta(a[0] * b[0], phi));
        EXPECT_EQ(lambda_nnp(f, spherical(q, {})).exact, rs_Z_nnm1(f, spherical(q, {})).exact);
    }
}

TEST(OpenOrbit, NnRankOneEquivariance) {
    long q = 5;
    std::mt19937_64 g(81);
    for (int t = 0; t < 10; ++t) {
        CharTuple a = rand_tuple(g, 1), b = rand_tuple(g, 1);
        Q h = testutil::rand_rat(g, 30);
        if (h == 0) continue;
        Mat H{{h}};
        Schwartz phi = Schwartz::coset(q, 1, 1, 1, {rat(2, 7)});
        RatFun lhs = lambda_nn(translate(spherical(q, a), H), translate(spherical(q, b), H), phi.right_translate(H)).exact;
        RatFun rhs = char_eval(det_twist(Q(-1), Q(0)), h, q) * lambda_nn(spherical(q, a), spherical(q, b), phi).exact;
        EXPECT_EQ(lhs, rhs);
    }
}

TEST(OpenOrbit, NnRankTwoNumericAndIdentity) {
    long q = 5;
    std::mt19937_64 g(83);
    std::vector<Schwartz> phis = {Schwartz::lattice(q, 1, 2), Schwartz::lattice(q, 1, 2, 1),
                                  Schwartz::lattice(q, 1, 2, -1) - Schwartz::lattice(q, 1, 2).scaled(Scalar(Q(2)))};
    for (int t = 0; t < 3; ++t) {
        CharTuple nu = unit_tuple(g, 2), nup = unit_tuple(g, 2);
        Section f = spherical(q, nu), fp = spherical(q, nup);
        const Schwartz& phi = phis[t];
        IntegralResult L = lambda_nn(f, fp, phi), Z = rs_Z_nn(f, fp, phi);
        EXPECT_EQ(L.exact, Gamma_psi(nu, nup, q).exact * Z.exact) << phi.str();
        for (double s : {0.35, 0.5, 0.65}) {
            auto nl = numeric::lambda_nn(f, fp, phi, s, kCut);
            EXPECT_LT(rel(nl.value, L.exact.eval_s(s, q)), 1e-8) << t << " " << s;
            auto nz = numeric::Z_nn(f, fp, phi, s, kCut);
            EXPECT_LT(rel(nz.value, Z.exact.eval_s(s, q)), 1e-8) << t << " " << s;
        }
    }
}

TEST(OpenOrbit, NnKProjection) {
    // one translated argument: exact value equals the K-average times the spherical value
    long q = 5;
    std::mt19937_64 g(85);
    CharTuple nu = unit_tuple(g, 2), nup = unit_tuple(g, 2);
    Section f = translate(spherical(q, nu), Mat{{Q(1), rat(1, 5)}, {Q(0), Q(1)}});
    Schwartz phi = Schwartz::lattice(q, 1, 2);
    RatFun L = lambda_nn(f, spherical(q, nup), phi).exact;
    EXPECT_EQ(L, k_average(f) * lambda_nn(spherical(q, nu), spherical(q, nup), phi).exact);
    EXPECT_THROW(lambda_nn(f, f, phi), CapabilityError);
    EXPECT_THROW(lambda_nn(spherical(q, nu), spherical(q, nup), Schwartz::coset(q, 1, 2, 1, {Q(1), Q(0)})), CapabilityError);
}

TEST(OpenOrbit, DivergenceOutsideStrip) {
    long q = 5;
    CharTuple nu{MultChar::unr(Scalar(1)), MultChar::unr(Scalar(Q(3, 5), Q(4, 5)))}, nup{MultChar::unr(Scalar(Q(0), Q(1)))};
    Section f = spherical(q, nu), fp = spherical(q, nup);
    EXPECT_TRUE(numeric::lambda_nnp(f, fp, 2.0, kCut).divergence_warning);
    EXPECT_TRUE(numeric::lambda_nnp(f, fp, -1.0, kCut).divergence_warning);
    EXPECT_FALSE(numeric::lambda_nnp(f, fp, 0.5, kCut).divergence_warning);
    EXPECT_FALSE(lambda_nnp(f, fp).literal_at(2.0, q));
    CharTuple nu2{MultChar::unr(Scalar(Q(0), Q(1))), MultChar::unr(Scalar(-1))};
    EXPECT_TRUE(numeric::lambda_nn(f, spherical(q, nu2), Schwartz::lattice(q, 1, 2), 2.0, kCut).divergence_warning);
}

TEST(Godement, EvalExamples) {
    long q = 5;
    Scalar a(Q(3), Q(1)), cc(Q(1, 2));
    MultChar chi = MultChar::unr(cc);
    Section f1 = spherical(q, {MultChar::unr(a)});
    IntegralResult plus = godement_eval(GodementKind::Plus, f1, chi, Schwartz::lattice(q, 1, 2), Mat::identity(2));
    RatFun expect = c(Q(4, 5)) / (RatFun(1) - c(cc * a.inverse() * Scalar(Q(1, 5))));
    EXPECT_EQ(plus.exact, expect);
    Mat kappa{{Q(2), Q(1)}, {Q(1), Q(1)}};
    EXPECT_EQ(godement_eval(GodementKind::Plus, f1, chi, Schwartz::lattice(q, 1, 2), kappa).exact, expect);
    IntegralResult circ = godement_eval(GodementKind::Circ, f1, chi, Schwartz::lattice(q, 1, 1), Mat::identity(1));
    EXPECT_EQ(circ.exact, c(Q(4, 5)) / (RatFun(1) - c(a * cc)));
    EXPECT_FALSE(circ.literal_at(0.0, q));  // |a c| >= 1: formal continuation
    Section g = godement_plus(f1, chi, Schwartz::lattice(q, 1, 2));
    auto num = numeric::section_value(g, Mat::identity(2), 0.0, kCut);
    EXPECT_LT(std::abs(num - expect.eval_s(0.0, q)), 1e-10);
}
