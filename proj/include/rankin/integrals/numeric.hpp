#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <tuple>

#include "rankin/integrals/open_orbit.hpp"
#include "rankin/iwasawa.hpp"

/// Truncated numeric oracle: sums valuation shells |m| <= N with pointwise section values,
/// resolving each shell into balls on which the integrand is provably constant.
namespace rankin::numeric {

using cd = std::complex<double>;

inline cd char_at(const MultChar& w, const Q& x, long q, cd s) {
    if (x == 0) throw DomainError("numeric: character evaluated at 0");
    return std::pow(w.at_uniformizer_numeric(q, s), valuation(x, q));
}

inline std::vector<cd> slots(const CharTuple& nu, long q, cd s) {
    std::vector<cd> out;
    for (const auto& m : spherical_slots(nu, q)) out.push_back(m.eval_s(s, q));
    return out;
}

inline IntegralResult finish(cd value, const std::vector<double>& profile) {
    IntegralResult r;
    r.is_exact = false;
    r.value = value;
    r.cutoff = static_cast<int>(profile.size()) - 1;
    r.shell_profile = profile;
    r.last_shell = profile.back();
    double peak = *std::max_element(profile.begin(), profile.end());
    r.divergence_warning = peak > 0 && profile.back() > 1e-6 * peak;  // tail not negligible at the cutoff
    return r;
}

/// sum_{|j| <= N} X^j int_{O^x} phi(p^j u r) d^x u; units enumerated modulo the constancy radius of each shell.
inline cd tate_line(const Schwartz& phi, const std::vector<Q>& r, cd X, int N, std::vector<double>* profile = nullptr) {
    long p = phi.p();
    cd acc = 0;
    for (int j = -N; j <= N; ++j) {
        int D = 1;
        bool any = false;
        for (const auto& t : phi.terms()) {
            bool dead = false;
            int Dt = 1;
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (r[i] == 0) continue;
                int vx = j + valuation(r[i], p);
                if (vx < std::min(t.m[i], valuation(t.d[i], p))) {
                    dead = true;
                    break;
                }
                Dt = std::max(Dt, t.m[i] - vx);
                if (t.c[i] != 0) Dt = std::max(Dt, -valuation(t.c[i], p) - vx);
            }
            if (!dead) {
                any = true;
                D = std::max(D, Dt);
            }
        }
        if (!any) continue;
        if (D > 9) throw CapabilityError("numeric tate_line: constancy radius too fine");
        long count = qpow(p, D).get_num().get_si();
        Q pj = qpow(p, j);
        cd inner = 0;
        std::vector<Q> x(r.size());
        for (long u = 1; u < count; ++u) {
            if (u % p == 0) continue;
            for (std::size_t i = 0; i < r.size(); ++i) x[i] = pj * u * r[i];
            inner += phi.eval_numeric(x);
        }
        cd term = std::pow(X, j) * inner * qpow(p, -D).get_d();
        acc += term;
        if (profile) (*profile)[std::abs(j)] += std::abs(term);
    }
    return acc;
}

/// Value of a section at g for complex s.
inline cd section_value(const Section& f, const Mat& g, cd s, int N) {
    using K = SectionNode::Kind;
    long p = f->p;
    switch (f->kind) {
        case K::Spherical: {
            if (f->rank == 0) return 1.0;
            Mat b = iwasawa_decompose(g, p).bbar;
            auto mu = slots(f->chars, p, s);
            cd acc = 1.0;
            for (int i = 0; i < f->rank; ++i) acc *= std::pow(mu[i], valuation(b(i, i), p));
            return acc;
        }
        case K::Translate:
            return section_value(f->child, g * f->g, s, N);
        case K::Hat:
            return section_value(f->child, hat_conj(g), s, N);
        case K::Combo: {
            cd acc = 0;
            for (const auto& [c, t] : f->terms) acc += c.to_complex(p) * section_value(t, g, s, N);
            return acc;
        }
        case K::GodementPlus: {
            if (f->rank != 2) throw CapabilityError("numeric g+: rank 2 only");
            MultChar w = f->child->chars[0].inverse() * f->chi.twisted(Q(1));
            cd line = tate_line(f->phi, {g(0, 0), g(0, 1)}, w.at_uniformizer_numeric(p, s), N);
            return char_at(f->chi.twisted(Q(1, 2)), g.det(), p, s) * section_value(f->child, Mat::identity(1), s, N) * line;
        }
        case K::GodementCirc: {
            if (f->rank == 1) {
                cd line = tate_line(f->phi, {Q(1)}, (f->chars[0] * f->chi).at_uniformizer_numeric(p, s), N);
                return section_value(f->child, Mat::identity(1), s, N) * char_at(f->chars[0], g(0, 0), p, s) * line;
            }
            return section_eval(f, g).eval_s(s, p);
        }
    }
    return 0.0;
}

/// W_f(diag(t1, t2)) = int f([[1,u],[0,1]] diag(t1,t2)) psi-bar(u) du (psi when conj is set), any level L.
/// After u -> u t1/t2: the ball v(u) >= L, balls of radius p^L in p^{-L}O, and shells v(u) < -L where
/// f([[1,u],[0,1]]) = mu_1^{v(u)} mu_2^{-v(u)} f(kappa_0).
inline cd whittaker(const Section& f, const Q& t1, const Q& t2, cd s, int N, bool conj = false) {
    if (f->rank != 2) throw CapabilityError("numeric whittaker: rank 2 only");
    long p = f->p;
    int L = f->level;
    Q x = t1 / t2;
    int vx = valuation(x, p);
    auto mu = slots(f->chars, p, s);
    auto ball = [&](int k) { return vx + k >= 0 ? qpow(p, -k).get_d() : 0.0; };
    double sign = conj ? 1.0 : -1.0;
    cd acc = section_value(f, Mat::identity(2), s, N) * ball(L);
    if (L > 0 && ball(L) != 0) {
        long count = qpow(p, 2 * L).get_num().get_si();
        Q step = qpow(p, -L);
        for (long k = 1; k < count; ++k) {
            Q c = step * k;
            acc += section_value(f, Mat{{Q(1), c}, {Q(0), Q(1)}}, s, N) * psi_numeric(x * c * sign, p) * ball(L);
        }
    }
    cd fk = section_value(f, Mat{{Q(0), Q(1)}, {Q(-1), Q(0)}}, s, N);
    for (int j = -L - 1; j >= -vx - 1; --j) acc += std::pow(mu[0], j) * std::pow(mu[1], -j) * fk * (ball(j) - ball(j + 1));
    cd pref = std::pow(mu[0], valuation(t1, p)) * std::pow(mu[1], valuation(t2, p)) * std::pow(double(p), -vx);
    return pref * acc;
}

inline IntegralResult tate(const MultChar& w, const Schwartz& phi, cd s, int N) {
    std::vector<double> prof(N + 1, 0.0);
    cd v = tate_line(phi, {Q(1)}, w.with_s(Q(1)).at_uniformizer_numeric(phi.p(), s), N, &prof);
    return finish(v, prof);
}

namespace detail {
/// Sum over h in k^x with |v(h)| <= N of F(h) |h|^{twist} d^x h, F right-invariant under 1 + p^L O.
template <class Fn>
IntegralResult torus_sum(long p, int L, const MultChar& twist, cd s, int N, Fn&& F) {
    int D = std::max(1, L);
    long count = qpow(p, D).get_num().get_si();
    double w = (1.0 - 1.0 / p) / static_cast<double>(count - count / p);
    cd tw = twist.at_uniformizer_numeric(p, s);
    std::vector<double> prof(N + 1, 0.0);
    cd acc = 0;
    for (int m = -N; m <= N; ++m) {
        Q pm = qpow(p, m);
        cd shell = 0;
        for (long u = 1; u < count; ++u)
            if (u % p != 0) shell += F(pm * u);
        cd term = shell * w * std::pow(tw, m);
        acc += term;
        prof[std::abs(m)] += std::abs(term);
    }
    return finish(acc, prof);
}
}  // namespace detail

inline IntegralResult lambda_nnp(const Section& f, const Section& fp, cd s, int N,
                                 const MultChar& twist = det_twist(Q(1), Q(-1, 2))) {
    if (f->rank == 1) {
        std::vector<double> prof(N + 1, 0.0);
        cd v = section_value(f, Mat::identity(1), s, N) * section_value(fp, Mat::identity(0), s, N);
        prof[0] = std::abs(v);
        return finish(v, prof);
    }
    if (f->rank != 2) throw CapabilityError("numeric lambda_nnp: n <= 2");
    return detail::torus_sum(f->p, f->level, twist, s, N, [&](const Q& h) {
        return section_value(f, Mat{{h, Q(1)}, {Q(0), Q(1)}}, s, N) * section_value(fp, Mat{{h}}, s, N);
    });
}

inline IntegralResult Z_nnm1(const Section& f, const Section& fp, cd s, int N) {
    if (f->rank == 1) return lambda_nnp(f, fp, s, N);
    if (f->rank != 2) throw CapabilityError("numeric Z: n <= 2");
    return detail::torus_sum(f->p, f->level, det_twist(Q(1), Q(-1, 2)), s, N, [&](const Q& h) {
        return whittaker(f, h, Q(1), s, N) * section_value(fp, Mat{{h}}, s, N);
    });
}

namespace detail {
struct Stratum {
    int m1, m2, v1;
};

/// Ball decomposition of u in the strata b = [[p^m1, 0],[u, p^m2]] for a row-lattice phi on e_2 b:
/// entries (m1, m2, v1 = min(v(p^m1 + u), m2)) with weight sum vol * phi(u, p^m2). Cached per (phi, N).
inline const std::vector<std::pair<Stratum, cd>>& nn_geometry(const Schwartz& phi, int N) {
    static std::mutex mu;
    static std::map<std::string, std::vector<std::pair<Stratum, cd>>> cache;
    std::string key = phi.str() + "#" + std::to_string(N) + "#" + std::to_string(phi.p());
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    long p = phi.p();
    int emin = kInfVal, emax = -kInfVal;
    for (const auto& [depths, c] : phi.row_lattice_terms()) {
        emin = std::min(emin, depths[0]);
        emax = std::max(emax, depths[0]);
    }
    std::map<std::tuple<int, int, int>, cd> agg;
    for (int m2 = std::max(emin, -N); m2 <= N; ++m2) {
        Q t2 = qpow(p, m2);
        for (int m1 = -N; m1 <= N; ++m1) {
            Q t1 = qpow(p, m1);
            std::vector<std::pair<Q, int>> stack{{Q(0), emin}};
            while (!stack.empty()) {
                auto [c, r] = stack.back();
                stack.pop_back();
                int vc = valuation(t1 + c, p);
                bool const_f = vc < r || r >= m2;
                bool const_phi = r >= emax || r >= m2;
                if (const_f && const_phi) {
                    cd w = phi.eval_numeric({c, t2}) * qpow(p, -r).get_d();
                    if (w != 0.0) agg[{m1, m2, std::min(vc, m2)}] += w;
                    continue;
                }
                Q step = qpow(p, r);
                for (long k = 0; k < p; ++k) stack.emplace_back(c + step * k, r + 1);
            }
        }
    }
    auto& out = cache[key];
    for (const auto& [k, w] : agg) out.push_back({{std::get<0>(k), std::get<1>(k), std::get<2>(k)}, w});
    return out;
}
}  // namespace detail

/// Lambda(s, f1, f2, phi) for shape (n, n). Rank 2 needs right-K-invariant sections and a row-lattice phi:
/// the integrand is then summed over B-bar strata with Haar weight vol(K) / (1 - 1/q)^2 * q^{m2} per shell.
inline IntegralResult lambda_nn(const Section& f1, const Section& f2, const Schwartz& phi, cd s, int N,
                                const MultChar& twist = det_twist(Q(1), Q(0))) {
    long p = f1->p;
    if (f1->rank == 1) {
        std::vector<double> prof(N + 1, 0.0);
        cd X = (f1->chars[0] * f2->chars[0] * twist).at_uniformizer_numeric(p, s);
        cd v = section_value(f1, Mat::identity(1), s, N) * section_value(f2, Mat::identity(1), s, N) *
               tate_line(phi, {Q(1)}, X, N, &prof);
        return finish(v, prof);
    }
    if (f1->rank != 2) throw CapabilityError("numeric lambda_nn: n <= 2");
    if (f1->level != 0 || f2->level != 0 || !phi.right_K_stable())
        throw CapabilityError("numeric lambda_nn: rank 2 needs K-invariant sections and a row-lattice phi");
    auto ma = slots(f1->chars, p, s), mb = slots(f2->chars, p, s);
    cd X = twist.at_uniformizer_numeric(p, s);
    cd pref = section_value(f1, Mat::identity(2), s, N) * section_value(f2, Mat::identity(2), s, N) *
              rankin::detail::vol_K2(p).get_d();
    std::vector<double> prof(N + 1, 0.0);
    cd acc = 0;
    for (const auto& [st, w] : detail::nn_geometry(phi, N)) {
        cd term = w * std::pow(double(p), st.m2) * std::pow(ma[0], st.v1) * std::pow(ma[1], st.m1 + st.m2 - st.v1) *
                  std::pow(mb[0], st.m1) * std::pow(mb[1], st.m2) * std::pow(X, st.m1 + st.m2);
        acc += term;
        prof[std::max(std::abs(st.m1), std::abs(st.m2))] += std::abs(term);
    }
    return finish(pref * acc, prof);
}

/// Z(s, f, f', phi) for shape (n, n) over the torus of N \ G with modulus q^{m1 - m2}.
inline IntegralResult Z_nn(const Section& f, const Section& fp, const Schwartz& phi, cd s, int N) {
    long p = f->p;
    if (f->rank == 1) return lambda_nn(f, fp, phi, s, N);
    if (f->rank != 2) throw CapabilityError("numeric Z: n <= 2");
    if (f->level != 0 || fp->level != 0 || !phi.right_K_stable())
        throw CapabilityError("numeric Z: rank 2 needs K-invariant sections and a row-lattice phi");
    cd X = det_twist(Q(1), Q(0)).at_uniformizer_numeric(p, s);
    std::vector<double> prof(N + 1, 0.0);
    cd acc = 0;
    for (int m2 = -N; m2 <= N; ++m2) {
        Q t2 = qpow(p, m2);
        cd ph = phi.eval_numeric({Q(0), t2});
        if (ph == 0.0) continue;
        for (int m1 = -N; m1 <= N; ++m1) {
            Q t1 = qpow(p, m1);
            cd term = ph * std::pow(double(p), m1 - m2) * whittaker(f, t1, t2, s, N) * whittaker(fp, t1, t2, s, N, true) *
                      std::pow(X, m1 + m2);
            acc += term;
            prof[std::max(std::abs(m1), std::abs(m2))] += std::abs(term);
        }
    }
    return finish(acc * rankin::detail::vol_K2(p).get_d(), prof);
}

}  // namespace rankin::numeric
