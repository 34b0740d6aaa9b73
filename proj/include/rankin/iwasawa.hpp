#pragma once

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "rankin/characters.hpp"
#include "rankin/integrals/tate.hpp"
#include "rankin/localfield/schwartz.hpp"
#include "rankin/matrices.hpp"

namespace rankin {

struct IwasawaFactors {
    Mat bbar;
    Mat kappa;
};

/// g = bbar * kappa with bbar lower triangular and kappa in GL_k(O).
/// With rng set, ties between minimal-valuation columns are broken at random.
inline IwasawaFactors iwasawa_decompose(const Mat& g, long p, std::mt19937_64* rng = nullptr) {
    if (!g.square()) throw DimensionError("iwasawa_decompose: non-square matrix");
    int k = g.rows();
    if (g.det() == 0) throw AlgebraError("iwasawa_decompose: singular matrix");
    Mat b = g;
    Mat right = Mat::identity(k);  // b = g * right, right in K
    for (int i = 0; i < k; ++i) {
        int best = kInfVal;
        std::vector<int> cands;
        for (int j = i; j < k; ++j) {
            int v = valuation(b(i, j), p);
            if (v < best) {
                best = v;
                cands.assign(1, j);
            } else if (v == best && v != kInfVal) {
                cands.push_back(j);
            }
        }
        if (best == kInfVal) throw AlgebraError("iwasawa_decompose: singular matrix");
        int j = cands.front();
        if (rng && cands.size() > 1) j = cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(*rng)];
        if (j != i) {
            for (int r = 0; r < k; ++r) {
                Q ci = b(r, i), cr = right(r, i);
                b(r, i) = b(r, j);
                right(r, i) = right(r, j);
                b(r, j) = -ci;
                right(r, j) = -cr;
            }
        }
        for (int c = i + 1; c < k; ++c) {
            if (b(i, c) == 0) continue;
            Q f = b(i, c) / b(i, i);
            for (int r = 0; r < k; ++r) {
                b(r, c) -= f * b(r, i);
                right(r, c) -= f * right(r, i);
            }
        }
    }
    return {b, right.inverse()};
}

/// Smallest N >= 0 with h^{-1} K(N) h inside K(0) = K, measured as -(min v(h) + min v(h^{-1})).
inline int conj_spread(const Mat& h, long p) { return -(h.min_valuation(p) + h.inverse().min_valuation(p)); }

struct SectionNode;
using Section = std::shared_ptr<const SectionNode>;

/// A principal-series section built from spherical vectors by translation, hat, Godement maps and sums.
struct SectionNode {
    enum class Kind { Spherical, Translate, Hat, GodementPlus, GodementCirc, Combo };

    Kind kind = Kind::Spherical;
    int rank = 0;
    long p = 0;
    CharTuple chars;  // the tuple whose principal series contains this section
    int level = 0;    // right-invariant under K(level); K(0) = K

    Mat g;
    Section child;
    MultChar chi;
    Schwartz phi;
    std::vector<std::pair<Scalar, Section>> terms;

    bool k_invariant() const { return level == 0; }

    mutable std::shared_mutex cache_mu;
    mutable std::map<std::string, RatFun> cache;
    mutable std::optional<RatFun> k_average;
};

namespace detail {
inline std::shared_ptr<SectionNode> new_node(SectionNode::Kind kind, int rank, long p, CharTuple chars, int level) {
    auto n = std::make_shared<SectionNode>();
    n->kind = kind;
    n->rank = rank;
    n->p = p;
    n->chars = std::move(chars);
    n->level = level;
    return n;
}

/// Right K(N)-invariance level of a row-vector Schwartz function.
inline int row_level(const Schwartz& phi) {
    if (phi.right_K_stable()) return 0;
    long p = phi.p();
    int level = 1;
    for (const auto& t : phi.terms()) {
        int emin = kInfVal;
        for (std::size_t i = 0; i < t.m.size(); ++i) emin = std::min(emin, std::min(t.m[i], valuation(t.d[i], p)));
        for (std::size_t j = 0; j < t.m.size(); ++j) {
            level = std::max(level, t.m[j] - emin);
            if (t.c[j] != 0) level = std::max(level, -valuation(t.c[j], p) - emin);
        }
    }
    return level;
}
}  // namespace detail

inline Section spherical(long p, const CharTuple& nu) {
    LocalField::padic(p);
    for (const auto& w : nu)
        if (!w.padic) throw UnsupportedFieldError("spherical: p-adic characters required");
    return detail::new_node(SectionNode::Kind::Spherical, static_cast<int>(nu.size()), p, nu, 0);
}

/// h.f : x -> f(x h)
inline Section translate(const Section& f, const Mat& h) {
    if (h.rows() != f->rank || !h.square()) throw DimensionError("translate: rank mismatch");
    if (h.det() == 0) throw AlgebraError("translate: singular matrix");
    auto n = detail::new_node(SectionNode::Kind::Translate, f->rank, f->p, f->chars, f->level + conj_spread(h, f->p));
    n->g = h;
    n->child = f;
    return n;
}

/// f^ : x -> f(w x^iota w)
inline Section hat(const Section& f) {
    auto n = detail::new_node(SectionNode::Kind::Hat, f->rank, f->p, hat_dual(f->chars), f->level);
    n->child = f;
    return n;
}

/// g+(f', phi) in I_{(nu', chi)} for f' in I_{nu'} and phi on k^{n' x n}.
inline Section godement_plus(const Section& fp, const MultChar& chi, const Schwartz& phi) {
    int n = fp->rank + 1;
    if (phi.rows() != fp->rank || phi.cols() != n) throw DimensionError("godement_plus: phi must live on k^{n' x n}");
    if (phi.p() != fp->p) throw DomainError("godement_plus: residue characteristic mismatch");
    CharTuple chars = fp->chars;
    chars.push_back(chi);
    int level = n == 2 ? detail::row_level(phi) : 0;
    auto node = detail::new_node(SectionNode::Kind::GodementPlus, n, fp->p, chars, level);
    node->child = fp;
    node->chi = chi;
    node->phi = phi;
    return node;
}

/// g°(f, phi) in I_nu for f in I_nu and phi on k^{n x n}.
inline Section godement_circ(const Section& f, const MultChar& chi, const Schwartz& phi) {
    int n = f->rank;
    if (phi.rows() != n || phi.cols() != n) throw DimensionError("godement_circ: phi must live on k^{n x n}");
    if (phi.p() != f->p) throw DomainError("godement_circ: residue characteristic mismatch");
    int level = 0;
    if (n == 2 && phi.right_K_stable())
        for (const auto& [depths, c] : phi.row_lattice_terms()) level = std::max(level, std::abs(depths[0] - depths[1]));
    auto node = detail::new_node(SectionNode::Kind::GodementCirc, n, f->p, f->chars, level);
    node->child = f;
    node->chi = chi;
    node->phi = phi;
    return node;
}

inline Section combo(const std::vector<std::pair<Scalar, Section>>& terms) {
    if (terms.empty()) throw DomainError("combo: empty combination");
    const auto& f0 = terms.front().second;
    int level = 0;
    for (const auto& [c, f] : terms) {
        if (f->rank != f0->rank || f->p != f0->p || !(f->chars == f0->chars))
            throw DomainError("combo: sections live in different principal series");
        level = std::max(level, f->level);
    }
    auto n = detail::new_node(SectionNode::Kind::Combo, f0->rank, f0->p, f0->chars, level);
    n->terms = terms;
    return n;
}

/// mu_i = nu_i(p) q^{-(2i-1-k)/2}, so that f°(b k) = prod_i mu_i^{v(b_ii)}.
inline std::vector<Monomial> spherical_slots(const CharTuple& nu, long p) {
    int k = static_cast<int>(nu.size());
    std::vector<Monomial> out;
    for (int i = 0; i < k; ++i) out.push_back(nu[i].at_uniformizer(p) * Monomial(Scalar::sqrtq_pow(p, -(2 * i + 1 - k)), 0));
    return out;
}

/// Spherical vector value: prod nu_i(b_ii) |b_ii|^{(2i-1-k)/2}.
inline RatFun spherical_value(const CharTuple& nu, const Mat& g, long p) {
    int k = static_cast<int>(nu.size());
    if (g.rows() != k) throw DimensionError("section_eval: rank mismatch");
    if (k == 0) return RatFun(1);
    Mat b = iwasawa_decompose(g, p).bbar;
    auto slots = spherical_slots(nu, p);
    Monomial acc;
    for (int i = 0; i < k; ++i) acc = acc * slots[i].pow(valuation(b(i, i), p));
    return acc.ratfun();
}

inline RatFun section_eval(const Section& f, const Mat& g);

/// Haar average of f over K = GL_2(O) (rank <= 2), exact.
inline RatFun k_average(const Section& f) {
    if (f->level == 0) return section_eval(f, Mat::identity(f->rank));
    {
        std::shared_lock lock(f->cache_mu);
        if (f->k_average) return *f->k_average;
    }
    if (f->rank != 2) throw CapabilityError("k_average: exact averaging implemented for rank 2 only");
    long p = f->p;
    Q pn = qpow(p, f->level);
    long count = pn.get_num().get_si();
    RatFun acc;
    for (long y = 0; y < count; ++y) acc += section_eval(f, Mat{{Q(1), Q(y)}, {Q(0), Q(1)}});
    for (long x = 0; x < count; x += p) acc += section_eval(f, Mat{{Q(x), Q(1)}, {Q(1), Q(0)}});
    RatFun avg = acc * RatFun(Scalar(Q(1) / (pn + pn / p)));
    std::unique_lock lock(f->cache_mu);
    f->k_average = avg;
    return avg;
}

namespace detail {

inline RatFun eval_plus(const SectionNode& f, const Mat& g) {
    if (f.rank != 2) throw CapabilityError("godement_plus: exact evaluation supports rank 2; use the numeric path");
    long p = f.p;
    RatFun fp1 = section_eval(f.child, Mat::identity(1));
    if (fp1.is_zero()) return RatFun();
    MultChar w = f.child->chars[0].inverse() * f.chi.twisted(Q(1));
    RatFun line = tate_line(f.phi, {g(0, 0), g(0, 1)}, w.at_uniformizer(p));
    return char_eval(f.chi.twisted(Q(1, 2)), g.det(), p) * fp1 * line;
}

inline RatFun eval_circ(const SectionNode& f, const Mat& g) {
    long p = f.p;
    if (f.rank == 1) {
        RatFun f1 = section_eval(f.child, Mat::identity(1));
        return f1 * char_eval(f.chars[0], g(0, 0), p) * tate_line(f.phi, {Q(1)}, (f.chars[0] * f.chi).at_uniformizer(p));
    }
    if (f.rank != 2) throw CapabilityError("godement_circ: exact evaluation supports rank <= 2; use the numeric path");
    if (!f.phi.right_K_stable())
        throw CapabilityError("godement_circ: exact evaluation needs a right-K-stable lattice combination");
    RatFun avg = k_average(f.child);
    if (avg.is_zero()) return RatFun();
    Schwartz unit = Schwartz::lattice(p, 1, 1, 0);
    Q vol = (Q(1) - Q(1, p)) * (Q(1) - Q(1, p * p)) / ((Q(1) - Q(1, p)) * (Q(1) - Q(1, p)));
    RatFun c0 = RatFun(Scalar(vol));
    for (int i = 0; i < 2; ++i) c0 *= tate_line(unit, {Q(1)}, (f.chars[i] * f.chi).at_uniformizer(p));
    RatFun acc;
    for (const auto& [depths, coeff] : f.phi.row_lattice_terms()) {
        Mat D = Mat::diag({qpow(p, depths[0]), qpow(p, depths[1])});
        acc += RatFun(coeff) * char_eval(f.chi.twisted(Q(1, 2)), D.det(), p) * spherical_value(f.chars, g * D, p);
    }
    return avg * c0 * acc;
}

}  // namespace detail

/// Exact value of the section at g as a rational function of Y = q^{-s/2}.
inline RatFun section_eval(const Section& f, const Mat& g) {
    if (!g.square() || g.rows() != f->rank) throw DimensionError("section_eval: rank mismatch");
    using K = SectionNode::Kind;
    switch (f->kind) {
        case K::Spherical:
            return spherical_value(f->chars, g, f->p);
        case K::Translate:
            return section_eval(f->child, g * f->g);
        case K::Hat:
            return section_eval(f->child, hat_conj(g));
        case K::Combo: {
            RatFun acc;
            for (const auto& [c, t] : f->terms) acc += RatFun(c) * section_eval(t, g);
            return acc;
        }
        case K::GodementPlus:
        case K::GodementCirc:
            break;
    }
    std::string key = g.str();
    {
        std::shared_lock lock(f->cache_mu);
        auto it = f->cache.find(key);
        if (it != f->cache.end()) return it->second;
    }
    RatFun v = f->kind == K::GodementPlus ? detail::eval_plus(*f, g) : detail::eval_circ(*f, g);
    std::unique_lock lock(f->cache_mu);
    f->cache.emplace(key, v);
    return v;
}

}  // namespace rankin
