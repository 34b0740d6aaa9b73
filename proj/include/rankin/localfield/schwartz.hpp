#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <tuple>
#include <vector>

#include "rankin/localfield/field.hpp"
#include "rankin/matrices.hpp"

namespace rankin {

/// x -> coeff * psi(sum c_ij x_ij) * prod 1[x_ij - d_ij in p^{m_ij} O] on k^{rows x cols}.
/// Entry-wise invariant: c_ij d_ij in O, so that the phase equals 1 at the center.
/// Depths may differ per entry; a uniform depth is the common case.
struct SchwartzElem {
    int rows = 1, cols = 1;
    std::vector<Q> c, d;
    std::vector<int> m;
    Scalar coeff{1};

    std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }

    auto key() const { return std::tie(m, c, d); }

    bool phase_free() const {
        return std::all_of(c.begin(), c.end(), [](const Q& x) { return x == 0; });
    }
};

class Schwartz {
public:
    Schwartz() = default;
    Schwartz(long p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {}

    /// Single elementary term; validates the phase/center invariant.
    static Schwartz elem(long p, int rows, int cols, std::vector<Q> c, std::vector<Q> d, std::vector<int> m,
                         Scalar coeff = Scalar(1)) {
        SchwartzElem e{rows, cols, std::move(c), std::move(d), std::move(m), std::move(coeff)};
        if (e.c.size() != e.size() || e.d.size() != e.size() || e.m.size() != e.size())
            throw DimensionError("SchwartzElem: data does not match shape");
        for (std::size_t i = 0; i < e.size(); ++i)
            if (valuation(e.c[i] * e.d[i], p) < 0)
                throw DomainError("SchwartzElem: phase and center must pair into O entry-wise");
        Schwartz s(p, rows, cols);
        s.terms_.push_back(std::move(e));
        s.canonicalize();
        return s;
    }

    /// 1_{d + p^m O^{rows x cols}} with uniform depth.
    static Schwartz coset(long p, int rows, int cols, int m, std::vector<Q> d = {}, Scalar coeff = Scalar(1)) {
        std::size_t n = static_cast<std::size_t>(rows) * cols;
        if (d.empty()) d.assign(n, Q(0));
        return elem(p, rows, cols, std::vector<Q>(n, Q(0)), std::move(d), std::vector<int>(n, m), std::move(coeff));
    }
    /// 1_{p^m O^{rows x cols}}
    static Schwartz lattice(long p, int rows, int cols, int m = 0) { return coset(p, rows, cols, m); }
    /// Lattice with a depth per row: 1_{D O^{rows x cols}}, D = diag(p^{m_i}).
    static Schwartz row_lattice(long p, const std::vector<int>& row_depths, int cols) {
        int rows = static_cast<int>(row_depths.size());
        std::vector<int> m;
        for (int r = 0; r < rows; ++r)
            for (int j = 0; j < cols; ++j) m.push_back(row_depths[r]);
        std::size_t n = m.size();
        return elem(p, rows, cols, std::vector<Q>(n, Q(0)), std::vector<Q>(n, Q(0)), std::move(m));
    }
    /// psi(<c, x>) 1_{d + p^m O}: scalar convenience.
    static Schwartz scalar(long p, const Q& c, const Q& d, int m, Scalar coeff = Scalar(1)) {
        return elem(p, 1, 1, {c}, {d}, {m}, std::move(coeff));
    }

    long p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<SchwartzElem>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend Schwartz operator+(Schwartz a, const Schwartz& b) {
        a.check_compatible(b);
        a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
        a.canonicalize();
        return a;
    }
    friend Schwartz operator-(const Schwartz& a, const Schwartz& b) { return a + b.scaled(Scalar(-1)); }
    Schwartz scaled(const Scalar& s) const {
        Schwartz r = *this;
        for (auto& t : r.terms_) t.coeff *= s;
        r.canonicalize();
        return r;
    }
    friend bool operator==(const Schwartz& a, const Schwartz& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t k = 0; k < a.terms_.size(); ++k) {
            const auto& x = a.terms_[k];
            const auto& y = b.terms_[k];
            if (x.key() != y.key() || x.coeff != y.coeff) return false;
        }
        return true;
    }

    /// Fourier transform against psi (or psi-bar when conj), pairing sum x_ij y_ij.
    Schwartz fourier(bool conj = false) const {
        Schwartz r(p_, rows_, cols_);
        for (const auto& t : terms_) {
            SchwartzElem e = t;
            int total_depth = 0;
            for (std::size_t i = 0; i < t.size(); ++i) {
                total_depth += t.m[i];
                if (!conj) {
                    e.c[i] = t.d[i];
                    e.d[i] = -t.c[i];
                } else {
                    e.c[i] = -t.d[i];
                    e.d[i] = t.c[i];
                }
                e.m[i] = -t.m[i];
            }
            e.coeff = t.coeff * Scalar(qpow(p_, -total_depth));
            r.terms_.push_back(std::move(e));
        }
        r.canonicalize();
        return r;
    }

    /// x -> phi(-x)
    Schwartz negate_arg() const {
        Schwartz r = *this;
        for (auto& t : r.terms_)
            for (std::size_t i = 0; i < t.size(); ++i) {
                t.c[i] = -t.c[i];
                t.d[i] = -t.d[i];
            }
        r.canonicalize();
        return r;
    }

    /// x -> phi(transpose x)
    Schwartz transpose() const {
        Schwartz r(p_, cols_, rows_);
        for (const auto& t : terms_) {
            SchwartzElem e = t;
            e.rows = t.cols;
            e.cols = t.rows;
            for (int i = 0; i < t.rows; ++i)
                for (int j = 0; j < t.cols; ++j) {
                    std::size_t src = static_cast<std::size_t>(i) * t.cols + j;
                    std::size_t dst = static_cast<std::size_t>(j) * t.rows + i;
                    e.c[dst] = t.c[src];
                    e.d[dst] = t.d[src];
                    e.m[dst] = t.m[src];
                }
            r.terms_.push_back(std::move(e));
        }
        r.canonicalize();
        return r;
    }

    /// (g.phi)(x) = phi(x g) for g in GL_cols.
    Schwartz right_translate(const Mat& g) const {
        if (!g.square() || g.rows() != cols_) throw DimensionError("right_translate: shape mismatch");
        if (g.det() == 0) throw AlgebraError("right_translate: singular matrix");
        Schwartz r(p_, rows_, cols_);
        for (const auto& t : terms_) {
            auto pieces = is_monomial(g) ? translate_monomial(t, g) : translate_general(t, g);
            r.terms_.insert(r.terms_.end(), pieces.begin(), pieces.end());
        }
        r.canonicalize();
        return r;
    }

    /// Tensor product on stacked rows: (phi1 (x) phi2)([x1; x2]) = phi1(x1) phi2(x2).
    static Schwartz tensor_rows(const Schwartz& a, const Schwartz& b) {
        if (a.cols_ != b.cols_ || a.p_ != b.p_) throw DimensionError("tensor_rows: column mismatch");
        Schwartz r(a.p_, a.rows_ + b.rows_, a.cols_);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                SchwartzElem e;
                e.rows = a.rows_ + b.rows_;
                e.cols = a.cols_;
                e.c = x.c;
                e.c.insert(e.c.end(), y.c.begin(), y.c.end());
                e.d = x.d;
                e.d.insert(e.d.end(), y.d.begin(), y.d.end());
                e.m = x.m;
                e.m.insert(e.m.end(), y.m.begin(), y.m.end());
                e.coeff = x.coeff * y.coeff;
                r.terms_.push_back(std::move(e));
            }
        r.canonicalize();
        return r;
    }

    std::complex<double> eval_numeric(const std::vector<Q>& x) const {
        std::complex<double> acc = 0;
        for (const auto& t : terms_) {
            std::complex<double> v = t.coeff.to_complex(p_);
            bool in = true;
            Q phase(0);
            for (std::size_t i = 0; i < t.size() && in; ++i) {
                in = valuation(x[i] - t.d[i], p_) >= t.m[i];
                phase += t.c[i] * x[i];
            }
            if (in) acc += v * psi_numeric(phase, p_);
        }
        return acc;
    }

    /// Exact value; throws CapabilityError when a phase leaves the coefficient field.
    Scalar eval_exact(const std::vector<Q>& x) const {
        Scalar acc(0);
        for (const auto& t : terms_) {
            bool in = true;
            Q phase(0);
            for (std::size_t i = 0; i < t.size() && in; ++i) {
                in = valuation(x[i] - t.d[i], p_) >= t.m[i];
                phase += t.c[i] * x[i];
            }
            if (in) acc += t.coeff * psi_exact(phase, p_);
        }
        return acc;
    }

    /// Invariant under x -> x k for k in GL_cols(O): every term a row lattice.
    bool right_K_stable() const {
        for (const auto& t : terms_) {
            if (!t.phase_free()) return false;
            for (int i = 0; i < t.rows; ++i)
                for (int j = 0; j < t.cols; ++j) {
                    std::size_t k = static_cast<std::size_t>(i) * t.cols + j;
                    if (t.d[k] != 0 || t.m[k] != t.m[static_cast<std::size_t>(i) * t.cols]) return false;
                }
        }
        return true;
    }

    /// Depth profile of each row of a row lattice term (requires right_K_stable()).
    std::vector<std::pair<std::vector<int>, Scalar>> row_lattice_terms() const {
        if (!right_K_stable()) throw CapabilityError("Schwartz: not a combination of row lattices");
        std::vector<std::pair<std::vector<int>, Scalar>> out;
        for (const auto& t : terms_) {
            std::vector<int> depths;
            for (int i = 0; i < t.rows; ++i) depths.push_back(t.m[static_cast<std::size_t>(i) * t.cols]);
            out.emplace_back(depths, t.coeff);
        }
        return out;
    }

    /// Refine phase-free entries to a common depth so that equal functions compare equal.
    Schwartz refined() const {
        std::vector<int> target(static_cast<std::size_t>(rows_) * cols_, -kInfVal);
        for (const auto& t : terms_)
            for (std::size_t i = 0; i < t.size(); ++i)
                if (t.c[i] == 0) target[i] = std::max(target[i], t.m[i]);
        return refined_to(target);
    }

    Schwartz refined_to(const std::vector<int>& target) const {
        Schwartz r(p_, rows_, cols_);
        for (const auto& t : terms_) {
            std::vector<SchwartzElem> acc{t};
            for (std::size_t i = 0; i < t.size(); ++i) {
                if (t.c[i] != 0 || target[i] <= t.m[i]) continue;
                int gap = target[i] - t.m[i];
                long count = 1;
                for (int k = 0; k < gap; ++k) count *= p_;
                if (count > 100000) throw CapabilityError("Schwartz: refinement too large");
                std::vector<SchwartzElem> next;
                Q step = qpow(p_, t.m[i]);
                for (const auto& e : acc)
                    for (long j = 0; j < count; ++j) {
                        SchwartzElem f = e;
                        f.d[i] = e.d[i] + step * Q(j);
                        f.m[i] = target[i];
                        next.push_back(std::move(f));
                    }
                acc = std::move(next);
            }
            r.terms_.insert(r.terms_.end(), acc.begin(), acc.end());
        }
        r.canonicalize();
        return r;
    }

    static bool equivalent(const Schwartz& a, const Schwartz& b) {
        Schwartz ra = a.refined(), rb = b.refined();
        std::vector<int> target(static_cast<std::size_t>(a.rows_) * a.cols_, -kInfVal);
        for (const auto* s : {&ra, &rb})
            for (const auto& t : s->terms_)
                for (std::size_t i = 0; i < t.size(); ++i)
                    if (t.c[i] == 0) target[i] = std::max(target[i], t.m[i]);
        return ra.refined_to(target) == rb.refined_to(target);
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + t.coeff.str() + ")*E[c=";
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t.c[i].get_str();
            s += ";d=";
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + t.d[i].get_str();
            s += ";m=";
            for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t.m[i]);
            s += "]";
        }
        return s;
    }

private:
    void check_compatible(const Schwartz& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("Schwartz: shape mismatch");
        if (p_ != b.p_) throw DomainError("Schwartz: different primes");
    }

    void canonicalize_elem(SchwartzElem& t) const {
        for (std::size_t i = 0; i < t.size(); ++i) {
            int vc = valuation(t.c[i], p_);
            if (vc == kInfVal || vc + t.m[i] >= 0) {
                t.c[i] = 0;
                t.d[i] = padic_truncate(t.d[i], t.m[i], p_);
            } else {
                t.d[i] = 0;
                t.c[i] = padic_truncate(t.c[i], -t.m[i], p_);
            }
        }
    }

    void canonicalize() {
        for (auto& t : terms_) canonicalize_elem(t);
        std::sort(terms_.begin(), terms_.end(),
                  [](const SchwartzElem& a, const SchwartzElem& b) { return a.key() < b.key(); });
        std::vector<SchwartzElem> out;
        for (auto& t : terms_) {
            if (!out.empty() && out.back().key() == t.key()) out.back().coeff += t.coeff;
            else out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const SchwartzElem& e) { return e.coeff.is_zero(); }),
                  out.end());
        terms_ = std::move(out);
    }

    std::vector<SchwartzElem> translate_monomial(const SchwartzElem& t, const Mat& g) const {
        // g has one nonzero entry lambda_i = g(i, sigma(i)) per row.
        SchwartzElem e = t;
        for (int i = 0; i < cols_; ++i) {
            int sigma = 0;
            while (g(i, sigma) == 0) ++sigma;
            const Q& lam = g(i, sigma);
            int vl = valuation(lam, p_);
            for (int r = 0; r < rows_; ++r) {
                std::size_t src = static_cast<std::size_t>(r) * cols_ + sigma;
                std::size_t dst = static_cast<std::size_t>(r) * cols_ + i;
                e.c[dst] = t.c[src] * lam;
                e.d[dst] = t.d[src] / lam;
                e.m[dst] = t.m[src] - vl;
            }
        }
        return {e};
    }

    std::vector<SchwartzElem> translate_general(const SchwartzElem& t, const Mat& g) const {
        Mat ginv = g.inverse();
        int b = cols_;
        std::vector<int> colmin(b, kInfVal);
        for (int j = 0; j < b; ++j)
            for (int i = 0; i < b; ++i) colmin[j] = std::min(colmin[j], valuation(g(i, j), p_));
        int vinv = ginv.min_valuation(p_);

        // per row: list of (center, depth) pieces
        std::vector<std::vector<std::vector<Q>>> row_centers(rows_);
        std::vector<int> row_depth(rows_);
        for (int r = 0; r < rows_; ++r) {
            int e = -kInfVal, mmin = kInfVal;
            for (int j = 0; j < b; ++j) {
                int mj = t.m[static_cast<std::size_t>(r) * b + j];
                e = std::max(e, mj - colmin[j]);
                mmin = std::min(mmin, mj);
            }
            int emin = std::min(mmin + vinv, e);
            int span = e - emin;
            double count = std::pow(static_cast<double>(p_), static_cast<double>(span) * b);
            if (count > 200000) throw CapabilityError("right_translate: coset enumeration too large");
            // d_r g^{-1}
            std::vector<Q> shift(b, Q(0));
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j) shift[i] += t.d[static_cast<std::size_t>(r) * b + j] * ginv(j, i);
            std::vector<long> digits(static_cast<std::size_t>(span) * b, 0);
            long total = static_cast<long>(count);
            for (long idx = 0; idx < total; ++idx) {
                long rem = idx;
                std::vector<Q> y(b, Q(0));
                for (int i = 0; i < b; ++i)
                    for (int k = 0; k < span; ++k) {
                        long dgt = rem % p_;
                        rem /= p_;
                        if (dgt) y[i] += Q(dgt) * qpow(p_, emin + k);
                    }
                bool ok = true;
                for (int j = 0; j < b && ok; ++j) {
                    Q z(0);
                    for (int i = 0; i < b; ++i) z += y[i] * g(i, j);
                    ok = valuation(z, p_) >= t.m[static_cast<std::size_t>(r) * b + j];
                }
                if (!ok) continue;
                for (int i = 0; i < b; ++i) y[i] += shift[i];
                row_centers[r].push_back(std::move(y));
            }
            row_depth[r] = e;
        }
        // new phase per row: c_r g^T
        std::vector<Q> cnew(t.size(), Q(0));
        for (int r = 0; r < rows_; ++r)
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < b; ++j)
                    cnew[static_cast<std::size_t>(r) * b + i] += g(i, j) * t.c[static_cast<std::size_t>(r) * b + j];

        std::vector<SchwartzElem> out;
        std::vector<std::size_t> pick(rows_, 0);
        for (;;) {
            SchwartzElem e;
            e.rows = rows_;
            e.cols = cols_;
            e.coeff = t.coeff;
            for (int r = 0; r < rows_; ++r) {
                if (row_centers[r].empty()) return {};
                for (int i = 0; i < b; ++i) {
                    e.c.push_back(cnew[static_cast<std::size_t>(r) * b + i]);
                    e.d.push_back(row_centers[r][pick[r]][i]);
                    e.m.push_back(row_depth[r]);
                }
            }
            fix_phase(e);
            out.push_back(std::move(e));
            int r = 0;
            while (r < rows_ && ++pick[r] == row_centers[r].size()) pick[r++] = 0;
            if (r == rows_) break;
        }
        return out;
    }

    // Restore the entry-wise invariant c_i d_i in O, absorbing field-valued constants.
    void fix_phase(SchwartzElem& e) const {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (valuation(e.c[i] * e.d[i], p_) >= 0) continue;
            int vc = valuation(e.c[i], p_);
            if (vc + e.m[i] >= 0) {
                e.coeff *= psi_exact(e.c[i] * e.d[i], p_);
                e.c[i] = 0;
            } else if (valuation(e.d[i], p_) >= e.m[i]) {
                e.d[i] = 0;
            } else {
                throw CapabilityError("right_translate: phase does not fit the elementary class at this center");
            }
        }
    }

    long p_ = 2;
    int rows_ = 1, cols_ = 1;
    std::vector<SchwartzElem> terms_;
};

}  // namespace rankin
