#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rankin/factors.hpp"
#include "test_util.hpp"

using namespace rankin;

namespace {

const RatFun Yf = RatFun::Y();

MultChar rand_unr(std::mt19937_64& g) {
    return MultChar::unr(testutil::rand_nonzero_gaussian(g, 7), rat(static_cast<int>(g() % 3) - 1, 2));
}

CharTuple rand_tuple(std::mt19937_64& g, int n) {
    CharTuple t;
    for (int i = 0; i < n; ++i) t.push_back(rand_unr(g));
    return t;
}

}  // namespace

TEST(Factors, PadicExamples) {
    long q = 5;
    LocalFactors f = local_factors(MultChar::unr(Scalar(1)), q);
    EXPECT_EQ(f.L.exact, (RatFun(1) - Yf * Yf).inverse());
    EXPECT_EQ(f.eps.exact, RatFun(1));
    RatFun expect = (RatFun(1) - Yf * Yf) / (RatFun(1) - RatFun(Scalar(rat(1, 5))) * (Yf * Yf).inverse());
    EXPECT_EQ(f.gamma.exact, expect);
    // the same, cleared by hand: (1 - Y^2) Y^2 / (Y^2 - 1/5)
    RatFun cleared = (RatFun(1) - Yf * Yf) * Yf * Yf / (Yf * Yf - RatFun(Scalar(rat(1, 5))));
    EXPECT_EQ(f.gamma.exact, cleared);
    EXPECT_THROW(local_factors(MultChar::unr(Scalar(1))), DomainError);
}

TEST(Factors, RealTrivialL) {
    LocalFactors f = local_factors(MultChar::real(0));
    for (double s : {0.3, 0.7, 1.0, 2.0}) {
        double expect = std::pow(std::numbers::pi, -s / 2) * std::tgamma(s / 2);
        EXPECT_NEAR(std::abs(f.L.eval(s, 0) - expect), 0.0, 1e-12 * expect);
        auto z = tate_zeta_real(MultChar::real(0), RealSchwartz::gaussian(), s);
        EXPECT_NEAR(std::abs(z - expect), 0.0, 1e-9 * expect);
    }
    EXPECT_NEAR(std::abs(tate_zeta_real(MultChar::real(0), RealSchwartz::gaussian(), 1.0) - 1.0), 0.0, 1e-10);
}

TEST(Factors, RealEpsilonOfSign) {
    MultChar sgn = MultChar::real(1);
    for (double s : {0.3, 0.6, 1.2}) {
        auto eps = epsilon_from_fe_real(sgn, RealSchwartz::monomial(1), s, false);
        EXPECT_NEAR(std::abs(eps - std::complex<double>(0, -1)), 0.0, 1e-8);
    }
    EXPECT_THROW(tate_zeta_real(sgn, RealSchwartz::monomial(1), -1.5), DivergenceError);
}

TEST(Factors, TateFunctionalEquationExact) {
    std::mt19937_64 g(51);
    long q = 5;
    for (int t = 0; t < 50; ++t) {
        MultChar w = rand_unr(g);
        Schwartz phi;
        switch (t % 3) {
            case 0: phi = Schwartz::lattice(q, 1, 1); break;
            case 1: phi = Schwartz::lattice(q, 1, 1, 1); break;
            default: phi = Schwartz::elem(q, 1, 1, {testutil::rand_rat(g) / 5}, {Q(0)}, {0}); break;
        }
        LocalFactors f = local_factors(w, q);
        RatFun lhs = tate_zeta(w.inverse(), phi.fourier()).reflect(q) / local_factors(w.inverse(), q).L.exact.reflect(q);
        RatFun rhs = f.eps.exact * tate_zeta(w, phi) / f.L.exact;
        EXPECT_EQ(lhs, rhs) << w.str() << " " << phi.str();
    }
}

TEST(Factors, GammaReflection) {
    std::mt19937_64 g(53);
    EXPECT_TRUE(check_gamma_reflection(MultChar::unr(Scalar(2)), 5).equal);
    for (int t = 0; t < 50; ++t) EXPECT_TRUE(check_gamma_reflection(rand_unr(g), 7).equal);
    auto triv = check_gamma_reflection(MultChar::real(0));
    EXPECT_TRUE(triv.equal) << triv.max_rel_err;
    auto sgn = check_gamma_reflection(MultChar::real(1, rat(1, 3)));
    EXPECT_TRUE(sgn.equal) << sgn.max_rel_err;
    // a wrong sign must be detected
    FactorValue lhs = local_factors(MultChar::real(1)).gamma * local_factors(MultChar::real(1)).gamma.reflect(0);
    EXPECT_NEAR(std::abs(lhs.eval(0.4, 0) + 1.0), 0.0, 1e-12);
}

TEST(Factors, PairProducts) {
    long q = 5;
    Scalar a1(2), a2(rat(1, 3)), ap(3, 1);
    CharTuple nu{MultChar::unr(a1), MultChar::unr(a2)}, nup{MultChar::unr(ap)};
    PairProducts pp = pair_products(nu, nup, q);
    RatFun Y2 = Yf * Yf;
    EXPECT_EQ(pp.L.exact, ((RatFun(1) - RatFun(a1 * ap) * Y2) * (RatFun(1) - RatFun(a2 * ap) * Y2)).inverse());
    EXPECT_EQ(pp.gamma.exact, local_factors(MultChar::unr(a1 * ap), q).gamma.exact);
    EXPECT_EQ(pp.eps.exact, RatFun(1));
    PairProducts one = pair_products({MultChar::unr(a1)}, {MultChar::unr(ap)}, q);
    EXPECT_EQ(one.gamma.exact, RatFun(1));
    EXPECT_EQ(Gamma_psi({MultChar::unr(a1)}, {}, q).exact, RatFun(1));
    EXPECT_EQ(Gamma_psi(nu, nup, q).exact, pp.gamma.exact);
}

TEST(Factors, GammaPsiRealSign) {
    MultChar sgn = MultChar::real(1), triv = MultChar::real(0);
    CharTuple nu{sgn, triv, sgn}, nup{sgn, triv, triv};
    FactorValue G = Gamma_psi(nu, nup), prod = pair_products(nu, nup).gamma;
    for (double s : {0.3, 0.6}) EXPECT_NEAR(std::abs(G.eval(s, 0) + prod.eval(s, 0)), 0.0, 1e-12 * std::abs(prod.eval(s, 0)));
}

TEST(Factors, GammaPsiDropsLastEntry) {
    std::mt19937_64 g(55);
    for (int t = 0; t < 20; ++t) {
        int n = 2 + t % 2;
        CharTuple nu = rand_tuple(g, n), nup = rand_tuple(g, n);
        CharTuple head(nup.begin(), nup.end() - 1);
        EXPECT_EQ(Gamma_psi(nu, nup, 5).exact, Gamma_psi(nu, head, 5).exact);
    }
}

TEST(Factors, GammaProductExact) {
    std::mt19937_64 g(57);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + t % 2;
        auto r = check_gamma_lemma(rand_tuple(g, n), rand_tuple(g, n - 1), t % 2 ? 5 : 3);
        EXPECT_TRUE(r.equal) << r.lhs << " vs " << r.rhs;
    }
}

TEST(Factors, GammaProductReal) {
    MultChar sgn = MultChar::real(1), triv = MultChar::real(0);
    std::vector<std::pair<CharTuple, CharTuple>> cases = {
        {{sgn, triv, sgn}, {sgn, triv}},
        {{sgn, sgn, triv}, {triv, sgn}},
        {{MultChar::real(1, rat(1, 4)), triv, sgn}, {sgn, MultChar::real(0, rat(-1, 3))}},
    };
    for (const auto& [nu, nup] : cases) {
        auto r = check_gamma_lemma(nu, nup);
        EXPECT_TRUE(r.equal) << r.max_rel_err;
    }
}

TEST(Factors, PsiConjugation) {
    EXPECT_TRUE(check_psi_conjugation(MultChar::unr(Scalar(3)), 5).equal);
    auto s = check_psi_conjugation(MultChar::real(1));
    EXPECT_TRUE(s.equal) << s.max_rel_err;
    auto t = check_psi_conjugation(MultChar::real(0));
    EXPECT_TRUE(t.equal) << t.max_rel_err;
    // the sign really flips for sgn
    auto bar = epsilon_from_fe_real(MultChar::real(1), RealSchwartz::monomial(1), 0.5, true);
    EXPECT_NEAR(std::abs(bar - std::complex<double>(0, 1)), 0.0, 1e-8);
}
