#pragma once

#include <functional>
#include <optional>

#include "rankin/integrals.hpp"
#include "rankin/verify/report.hpp"
#include "rankin/verify/sampler.hpp"

namespace rankin {

struct NumericOptions {
    int cutoff = 40;
    double tol = 1e-6;
    int points = 5;
    double pad = 0.3;
    std::vector<double> s_values;  // overrides the interior points when nonempty
};

/// Parameters of an open-orbit identity instance: f = f°_nu, f' = f°_nu', and phi on k^{1xn} when n' = n.
struct OpenOrbitParams {
    long q = 5;
    CharTuple nu, nup;
    std::optional<Schwartz> phi;

    io::json to_json() const {
        io::json j{{"q", q}, {"nu", io::to_json(nu)}, {"nup", io::to_json(nup)}};
        if (phi) j["phi"] = io::to_json(*phi);
        return j;
    }
    static OpenOrbitParams from_json(const io::json& j) {
        OpenOrbitParams P;
        P.q = j.value("q", 5L);
        P.nu = io::tuple_from_json(j.at("nu"), P.q);
        P.nup = io::tuple_from_json(j.at("nup"), P.q);
        if (P.nu.size() == P.nup.size())
            P.phi = j.contains("phi") ? io::schwartz_from_json(j.at("phi"), P.q, 1, static_cast<int>(P.nu.size()))
                                      : Schwartz::lattice(P.q, 1, static_cast<int>(P.nu.size()));
        return P;
    }
};

enum class Recurrence { PlusLeg, HatLeg };

inline const char* recurrence_name(Recurrence r) { return r == Recurrence::PlusLeg ? "prop31" : "prop32"; }

/// PlusLeg (prop31): nu has length 2, phi1 and phi2 live on k^{1x2}, translate acts on f.
/// HatLeg (prop32): nu = (mu) and nup have length 1, phi1 and phi2 live on k^{1x1}, translate acts on f'.
struct RecurrenceParams {
    long q = 5;
    CharTuple nu, nup;
    MultChar chi;
    Schwartz phi1, phi2;
    std::optional<Mat> translate;

    io::json to_json() const {
        io::json j{{"q", q},
                   {"nu", io::to_json(nu)},
                   {"nup", io::to_json(nup)},
                   {"chi", io::to_json(chi)},
                   {"phi1", io::to_json(phi1)},
                   {"phi2", io::to_json(phi2)}};
        if (translate) j["translate"] = io::to_json(*translate);
        return j;
    }
    static RecurrenceParams from_json(Recurrence which, const io::json& j) {
        RecurrenceParams P;
        P.q = j.value("q", 5L);
        P.nu = io::tuple_from_json(j.at("nu"), P.q);
        P.nup = io::tuple_from_json(j.at("nup"), P.q);
        P.chi = j.contains("chi") ? io::char_from_json(j.at("chi"), P.q) : MultChar::unr(Scalar(1));
        int cols = which == Recurrence::PlusLeg ? 2 : 1;
        auto phi = [&](const char* key) {
            return j.contains(key) ? io::schwartz_from_json(j.at(key), P.q, 1, cols) : Schwartz::lattice(P.q, 1, cols);
        };
        P.phi1 = phi("phi1");
        P.phi2 = phi("phi2");
        if (j.contains("translate")) P.translate = io::mat_from_json(j.at("translate"));
        return P;
    }
};

namespace detail {

/// Runs body into a report; capability and domain failures become failing reports, degeneracies propagate.
template <class Fn>
VerificationReport guarded(VerificationReport rep, Fn&& body) {
    Stopwatch sw;
    try {
        body(rep);
    } catch (const DegenerateError&) {
        throw;
    } catch (const PoleError&) {
        throw;
    } catch (const std::exception& e) {
        rep.equal = false;
        rep.error = e.what();
    }
    rep.seconds = sw.seconds();
    return rep;
}

/// Points where a RatFun identity is spot-checked numerically; derived from the seed for reproducibility.
inline double spot_check(const RatFun& a, const RatFun& b, long q, std::uint64_t seed, int count = 3) {
    Sampler smp(seed ^ 0x5eedULL);
    double worst = 0;
    for (int k = 0, tries = 0; k < count && tries < 50; ++tries) {
        std::complex<double> s(smp.uniform_real(0.05, 0.95), smp.uniform_real(-2.0, 2.0));
        try {
            worst = std::max(worst, rel_err(a.eval_s(s, q), b.eval_s(s, q)));
            ++k;
        } catch (const PoleError&) {
        }
    }
    return worst;
}

inline io::json strip_json(const StripInterval& w) {
    auto num = [](double x) { return std::isfinite(x) ? io::json(x + 0.0) : io::json(x > 0 ? "inf" : "-inf"); };
    return io::json::array({num(w.lower), num(w.upper)});
}

inline double strip_mid(const StripInterval& w) { return w.interior_points(1)[0]; }

}  // namespace detail

/// Lambda against Gamma_psi * Z for f°_nu, f°_nu' (case a: n' = n, case b: n' = n - 1).
inline VerificationReport verify_theorem_A(char which, const OpenOrbitParams& P, Mode mode,
                                           const NumericOptions& opt = {}, std::uint64_t seed = 0) {
    int n = static_cast<int>(P.nu.size()), np = static_cast<int>(P.nup.size());
    VerificationReport rep;
    rep.case_id = std::string("theorem-A(") + which + ") n=" + std::to_string(n) + " n'=" + std::to_string(np);
    rep.field = field_name(P.q);
    rep.mode = mode;
    rep.params = P.to_json();
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        if (which != 'a' && which != 'b') throw DomainError("open-orbit identity: case must be a or b");
        if ((which == 'a') != (np == n) || (which == 'b' && np != n - 1))
            throw DimensionError("open-orbit identity: case a needs n' = n, case b needs n' = n - 1");
        if (n > 2) throw CapabilityError("open-orbit identity: only n <= 2 is implemented");
        long q = P.q;
        Section f = spherical(q, P.nu), fp = spherical(q, P.nup);
        RatFun G = Gamma_psi(P.nu, P.nup, q).exact;
        StripInterval omega = omega_strip(P.nu, P.nup, q);
        r.flags["omega"] = detail::strip_json(omega);
        auto exact_sides = [&]() {
            if (which == 'a') return std::pair{lambda_nn(f, fp, *P.phi), rs_Z_nn(f, fp, *P.phi)};
            return std::pair{lambda_nnp(f, fp), rs_Z_nnm1(f, fp)};
        };
        if (mode == Mode::Exact) {
            auto [L, Z] = exact_sides();
            RatFun rhs = G * Z.exact;
            r.lhs = L.exact.str();
            r.rhs = rhs.str();
            r.equal = L.exact == rhs;
            double gap = detail::spot_check(L.exact, rhs, q, seed);
            r.flags["spot_check_rel_err"] = gap;
            r.flags["spot_check_ok"] = gap <= 1e-10;
            if (r.equal) r.equal = gap <= 1e-10;
            if (!omega.empty()) {
                double s0 = detail::strip_mid(omega);
                r.flags["lhs_literal_in_omega"] = L.literal_at(s0, q);
                r.flags["rhs_literal_in_omega"] = Z.literal_at(s0, q);
            }
            return;
        }
        std::vector<double> pts = opt.s_values;
        if (pts.empty()) {
            if (omega.empty()) throw DomainError("open-orbit identity numeric: empty convergence strip");
            pts = omega.interior_points(opt.points, opt.pad);
        }
        bool warned = false;
        io::json lhs = io::json::array(), rhs = io::json::array(), svals = io::json::array();
        for (double s : pts) {
            IntegralResult L, Z;
            if (which == 'a') {
                L = numeric::lambda_nn(f, fp, *P.phi, s, opt.cutoff);
                Z = numeric::Z_nn(f, fp, *P.phi, s, opt.cutoff);
            } else {
                L = numeric::lambda_nnp(f, fp, s, opt.cutoff);
                Z = numeric::Z_nnm1(f, fp, s, opt.cutoff);
            }
            auto right = G.eval_s(s, q) * Z.value;
            r.max_rel_err = std::max(r.max_rel_err, detail::rel_err(L.value, right));
            warned = warned || L.divergence_warning || Z.divergence_warning;
            svals.push_back(s);
            lhs.push_back(detail::complex_str(L.value));
            rhs.push_back(detail::complex_str(right));
        }
        r.lhs = lhs.dump();
        r.rhs = rhs.dump();
        r.flags["s"] = svals;
        r.flags["cutoff"] = opt.cutoff;
        r.flags["divergence_warning"] = warned;
        r.equal = !warned && r.max_rel_err <= opt.tol;
    });
}

/// Both sides of a recurrence identity as exact RatFuns, with their convergence logs.
inline std::pair<IntegralResult, IntegralResult> recurrence_sides(Recurrence which, const RecurrenceParams& P) {
    long q = P.q;
    if (which == Recurrence::PlusLeg) {
        if (P.nu.size() != 2 || P.nup.size() != 1) throw DimensionError("prop31: need nu of length 2 and nu' of length 1");
        Section f = spherical(q, P.nu), fp = spherical(q, P.nup);
        if (P.translate) f = translate(f, *P.translate);
        IntegralResult lhs = lambda_nn(f, godement_plus(fp, P.chi, P.phi1), P.phi2);
        IntegralResult rhs = lambda_nnp(godement_circ(f, P.chi.with_s(Q(1)), Schwartz::tensor_rows(P.phi1, P.phi2)), fp);
        return {lhs, rhs};
    }
    if (P.nu.size() != 1 || P.nup.size() != 1) throw DimensionError("prop32: need mu and nu' of length 1");
    Section fmu = spherical(q, P.nu), fp = spherical(q, P.nup);
    if (P.translate) fp = translate(fp, *P.translate);
    Schwartz phi0 = Schwartz::tensor_rows(P.phi1.transpose(), P.phi2.transpose()).transpose();
    IntegralResult lhs = lambda_nnp(godement_plus(fmu, P.chi, phi0), fp);
    IntegralResult rhs = lambda_nn(hat(godement_circ(fp, P.chi.with_s(Q(1)), P.phi1)), hat(fmu), P.phi2, det_twist(Q(-1), Q(1)));
    return {lhs, rhs};
}

inline VerificationReport verify_recurrence(Recurrence which, const RecurrenceParams& P, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = std::string(recurrence_name(which)) + " n=2" + (P.translate ? " translated" : "");
    rep.field = field_name(P.q);
    rep.params = P.to_json();
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        auto [L, R] = recurrence_sides(which, P);
        r.lhs = L.exact.str();
        r.rhs = R.exact.str();
        r.equal = L.exact == R.exact;
        bool l = L.literal_at(0.5, P.q), rr = R.literal_at(0.5, P.q);
        r.flags["lhs_literal_at_half"] = l;
        r.flags["rhs_literal_at_half"] = rr;
        r.flags["continuation"] = !(l && rr);
    });
}

/// p-adic: exact equality of Z(1-s, w^-1, phi^)/L(1-s, w^-1) and eps(s, w) Z(s, w, phi)/L(s, w).
inline VerificationReport verify_tate_fe(const MultChar& w, const Schwartz& phi, std::uint64_t seed = 0) {
    VerificationReport rep;
    long q = phi.p();
    rep.case_id = "tate-fe";
    rep.field = field_name(q);
    rep.params = {{"q", q}, {"omega", io::to_json(w)}, {"phi", io::to_json(phi)}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        LocalFactors f = local_factors(w, q);
        RatFun lhs = tate_zeta(w.inverse(), phi.fourier()).reflect(q) / local_factors(w.inverse(), q).L.exact.reflect(q);
        RatFun rhs = f.eps.exact * tate_zeta(w, phi) / f.L.exact;
        r.lhs = lhs.str();
        r.rhs = rhs.str();
        r.equal = lhs == rhs;
    });
}

/// Real place: the same identity by quadrature at five points, tolerance 1e-8.
inline VerificationReport verify_tate_fe(const MultChar& w, const RealSchwartz& phi, std::uint64_t seed = 0,
                                         double tol = 1e-8) {
    VerificationReport rep;
    rep.case_id = "tate-fe";
    rep.field = field_name(0);
    rep.mode = Mode::Numeric;
    rep.params = {{"omega", io::to_json(w)}, {"phi", io::to_json(phi)}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        LocalFactors f = local_factors(w), fd = local_factors(w.inverse());
        io::json lhs = io::json::array(), rhs = io::json::array();
        for (double s : detail::fe_sample_points()) {
            auto a = tate_zeta_real(w.inverse(), phi.fourier(), 1 - s) / fd.L.eval(1 - s, 0);
            auto b = f.eps.eval(s, 0) * tate_zeta_real(w, phi, s) / f.L.eval(s, 0);
            r.max_rel_err = std::max(r.max_rel_err, detail::rel_err(a, b));
            lhs.push_back(detail::complex_str(a));
            rhs.push_back(detail::complex_str(b));
        }
        r.lhs = lhs.dump();
        r.rhs = rhs.dump();
        r.flags["s"] = detail::fe_sample_points();
        r.equal = r.max_rel_err <= tol;
    });
}

namespace detail {
inline VerificationReport from_identity(VerificationReport rep, const std::function<IdentityCheck()>& run) {
    return guarded(rep, [&](VerificationReport& r) {
        IdentityCheck c = run();
        r.lhs = c.lhs;
        r.rhs = c.rhs;
        r.equal = c.equal;
        r.max_rel_err = c.max_rel_err;
    });
}
}  // namespace detail

inline VerificationReport verify_gamma_lemma(const CharTuple& nu, const CharTuple& nup, long q, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "gamma-lemma n=" + std::to_string(nu.size());
    rep.field = field_name(q);
    rep.mode = q > 0 ? Mode::Exact : Mode::Numeric;
    rep.params = {{"q", q}, {"nu", io::to_json(nu)}, {"nup", io::to_json(nup)}};
    rep.seed = seed;
    return detail::from_identity(rep, [&] { return check_gamma_lemma(nu, nup, q); });
}

inline VerificationReport verify_gamma_reflection(const MultChar& w, long q, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "gamma-reflection";
    rep.field = field_name(w.padic ? q : 0);
    rep.mode = w.padic ? Mode::Exact : Mode::Numeric;
    rep.params = {{"q", q}, {"omega", io::to_json(w)}};
    rep.seed = seed;
    return detail::from_identity(rep, [&] { return check_gamma_reflection(w, q); });
}

inline VerificationReport verify_psi_conjugation(const MultChar& w, long q, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "psi-conjugation";
    rep.field = field_name(w.padic ? q : 0);
    rep.mode = w.padic ? Mode::Exact : Mode::Numeric;
    rep.params = {{"q", q}, {"omega", io::to_json(w)}};
    rep.seed = seed;
    return detail::from_identity(rep, [&] { return check_psi_conjugation(w, q); });
}

/// n = 1: Lambda(h.f1, h.f2, h.phi) = |h|^{-s} Lambda(f1, f2, phi), exact.
inline VerificationReport verify_equivariance_n1(const CharTuple& a, const CharTuple& b, const Schwartz& phi, const Q& h,
                                                 std::uint64_t seed = 0) {
    long q = phi.p();
    VerificationReport rep;
    rep.case_id = "equivariance n=1";
    rep.field = field_name(q);
    rep.params = {{"q", q}, {"nu", io::to_json(a)}, {"nup", io::to_json(b)}, {"phi", io::to_json(phi)}, {"h", h.get_str()}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        Mat H{{h}};
        RatFun lhs = lambda_nn(translate(spherical(q, a), H), translate(spherical(q, b), H), phi.right_translate(H)).exact;
        RatFun rhs = char_eval(det_twist(Q(-1), Q(0)), h, q) * lambda_nn(spherical(q, a), spherical(q, b), phi).exact;
        r.lhs = lhs.str();
        r.rhs = rhs.str();
        r.equal = lhs == rhs;
    });
}

/// n = 2, shape (2, 1): translating f by diag(h, 1) and f' by h scales Lambda and Z by |h|^{1/2 - s}.
inline VerificationReport verify_equivariance_n2(const CharTuple& nu, const CharTuple& nup, long q, const Q& h,
                                                 const NumericOptions& opt = {}, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "equivariance n=2";
    rep.field = field_name(q);
    rep.mode = Mode::Numeric;
    rep.params = {{"q", q}, {"nu", io::to_json(nu)}, {"nup", io::to_json(nup)}, {"h", h.get_str()}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        Section f = spherical(q, nu), fp = spherical(q, nup);
        Section hf = translate(f, Mat::diag({h, Q(1)})), hfp = translate(fp, Mat{{h}});
        double ah = abs_val(h, q);
        io::json lhs = io::json::array(), rhs = io::json::array();
        std::vector<double> pts = opt.s_values.empty() ? std::vector<double>{0.35, 0.5, 0.65} : opt.s_values;
        for (double s : pts) {
            double scale = std::pow(ah, 0.5 - s);
            auto L1 = numeric::lambda_nnp(hf, hfp, s, opt.cutoff).value, L0 = numeric::lambda_nnp(f, fp, s, opt.cutoff).value;
            auto Z1 = numeric::Z_nnm1(hf, hfp, s, opt.cutoff).value, Z0 = numeric::Z_nnm1(f, fp, s, opt.cutoff).value;
            r.max_rel_err = std::max({r.max_rel_err, detail::rel_err(L1, scale * L0), detail::rel_err(Z1, scale * Z0)});
            lhs.push_back({detail::complex_str(L1), detail::complex_str(Z1)});
            rhs.push_back({detail::complex_str(scale * L0), detail::complex_str(scale * Z0)});
        }
        r.lhs = lhs.dump();
        r.rhs = rhs.dump();
        r.flags["s"] = pts;
        r.equal = r.max_rel_err <= opt.tol;
    });
}

/// z_k recursion, integrality and unimodularity for k <= kmax, plus the two smallest closed forms.
inline VerificationReport verify_zk(int kmax, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "zk";
    rep.field = "Z";
    rep.params = {{"kmax", kmax}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        bool ok = true;
        io::json dets = io::json::array();
        for (int k = 2; k <= kmax; ++k) {
            Mat z = make_z(k);
            auto fac = detail::z_factors(k, make_z(k - 1), make_z(k - 2));
            Q d = z.det();
            dets.push_back(d.get_str());
            ok = ok && z == fac[0] * fac[1] * fac[2] && z.is_integer() && (d == 1 || d == -1);
        }
        Mat z2{{Q(1), Q(1)}, {Q(0), Q(1)}};
        Mat z3{{Q(1), Q(2), Q(1)}, {Q(0), Q(1), Q(0)}, {Q(0), Q(0), Q(1)}};
        bool small = kmax < 3 || (make_z(2) == z2 && make_z(3) == z3);
        r.flags["determinants"] = dets;
        r.lhs = io::to_json(make_z(std::min(kmax, 3))).dump();
        r.rhs = io::to_json(kmax >= 3 ? z3 : z2).dump();
        r.equal = ok && small;
    });
}

/// Numeric evaluators must flag divergence at Re s = 2 and Re s = -1 for exponent-zero data, and not at 1/2.
inline VerificationReport verify_convergence_probe(const CharTuple& nu, const CharTuple& nup, long q,
                                                   const NumericOptions& opt = {}, std::uint64_t seed = 0) {
    VerificationReport rep;
    rep.case_id = "convergence-probe n=" + std::to_string(nu.size()) + " n'=" + std::to_string(nup.size());
    rep.field = field_name(q);
    rep.mode = Mode::Numeric;
    rep.params = {{"q", q}, {"nu", io::to_json(nu)}, {"nup", io::to_json(nup)}};
    rep.seed = seed;
    return detail::guarded(rep, [&](VerificationReport& r) {
        Section f = spherical(q, nu), fp = spherical(q, nup);
        auto run = [&](double s) {
            if (nu.size() == nup.size()) return numeric::lambda_nn(f, fp, Schwartz::lattice(q, 1, static_cast<int>(nu.size())), s, opt.cutoff);
            return numeric::lambda_nnp(f, fp, s, opt.cutoff);
        };
        io::json probes = io::json::object();
        bool outside = true;
        for (double s : {2.0, -1.0}) {
            bool w = run(s).divergence_warning;
            probes[std::to_string(s).substr(0, 4)] = w;
            if (s == 2.0 || nu.size() != nup.size()) outside = outside && w;
        }
        bool inside = !run(0.5).divergence_warning;
        probes["0.50"] = !inside;
        r.flags["divergence_warning"] = probes;
        r.lhs = "warnings outside, none at 1/2";
        r.rhs = (outside ? std::string("warnings outside") : std::string("missing warning")) + (inside ? ", none at 1/2" : ", warning at 1/2");
        r.equal = outside && inside;
    });
}

}  // namespace rankin
