#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <vector>

#include "rankin/exactalg/rational.hpp"

namespace rankin {

/// Dense rational matrix. Group elements are square matrices with nonzero determinant.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), e_(static_cast<std::size_t>(rows) * cols, Q(0)) {}
    Mat(std::initializer_list<std::initializer_list<Q>> rows) {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != c_) throw DimensionError("Mat: ragged initializer");
            for (const auto& v : row) e_.push_back(v);
        }
    }

    static Mat identity(int k) {
        Mat m(k, k);
        for (int i = 0; i < k; ++i) m(i, i) = 1;
        return m;
    }
    static Mat diag(const std::vector<Q>& d) {
        Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }
    Q& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * c_ + j]; }
    const Q& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * c_ + j]; }
    const std::vector<Q>& data() const { return e_; }

    friend Mat operator*(const Mat& a, const Mat& b) {
        if (a.c_ != b.r_) throw DimensionError("Mat: product shape mismatch");
        Mat m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                if (a(i, k) == 0) continue;
                for (int j = 0; j < b.c_; ++j) m(i, j) += a(i, k) * b(k, j);
            }
        return m;
    }
    friend Mat operator+(const Mat& a, const Mat& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw DimensionError("Mat: sum shape mismatch");
        Mat m = a;
        for (std::size_t k = 0; k < m.e_.size(); ++k) m.e_[k] += b.e_[k];
        return m;
    }
    friend Mat operator-(const Mat& a, const Mat& b) {
        Mat nb = b;
        for (auto& v : nb.e_) v = -v;
        return a + nb;
    }
    Mat scaled(const Q& s) const {
        Mat m = *this;
        for (auto& v : m.e_) v *= s;
        return m;
    }
    friend bool operator==(const Mat& a, const Mat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_; }
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    Mat transpose() const {
        Mat m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Q det() const {
        if (!square()) throw DimensionError("Mat: det of non-square matrix");
        Mat a = *this;
        Q d(1);
        for (int col = 0; col < r_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (a(i, col) != 0) { piv = i; break; }
            if (piv < 0) return Q(0);
            if (piv != col) {
                a.swap_rows(piv, col);
                d = -d;
            }
            d *= a(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (a(i, col) == 0) continue;
                Q f = a(i, col) / a(col, col);
                for (int j = col; j < r_; ++j) a(i, j) -= f * a(col, j);
            }
        }
        return d;
    }

    Mat inverse() const {
        if (!square()) throw DimensionError("Mat: inverse of non-square matrix");
        int n = r_;
        Mat a = *this, inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (a(i, col) != 0) { piv = i; break; }
            if (piv < 0) throw AlgebraError("Mat: singular matrix");
            a.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            Q f = Q(1) / a(col, col);
            for (int j = 0; j < n; ++j) {
                a(col, j) *= f;
                inv(col, j) *= f;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col || a(i, col) == 0) continue;
                Q g = a(i, col);
                for (int j = 0; j < n; ++j) {
                    a(i, j) -= g * a(col, j);
                    inv(i, j) -= g * inv(col, j);
                }
            }
        }
        return inv;
    }

    bool is_lower_triangular() const {
        for (int i = 0; i < r_; ++i)
            for (int j = i + 1; j < c_; ++j)
                if ((*this)(i, j) != 0) return false;
        return true;
    }
    bool is_integer() const {
        for (const auto& v : e_)
            if (v.get_den() != 1) return false;
        return true;
    }
    /// Minimum p-adic valuation over all entries (kInfVal for the zero matrix).
    int min_valuation(long p) const {
        int v = kInfVal;
        for (const auto& x : e_) v = std::min(v, valuation(x, p));
        return v;
    }
    /// Entries in O and determinant a unit.
    bool in_K(long p) const { return square() && min_valuation(p) >= 0 && valuation(det(), p) == 0; }

    Mat row(int i) const {
        Mat m(1, c_);
        for (int j = 0; j < c_; ++j) m(0, j) = (*this)(i, j);
        return m;
    }
    Mat block(int i0, int j0, int nr, int nc) const {
        Mat m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }

    std::string str() const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < c_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
            s += "]";
        }
        return s + "]";
    }
    friend std::ostream& operator<<(std::ostream& os, const Mat& m) { return os << m.str(); }

private:
    int r_ = 0, c_ = 0;
    std::vector<Q> e_;
};

/// Block diagonal diag(a, b).
inline Mat block_diag(const Mat& a, const Mat& b) {
    Mat m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

/// diag(h, 1): G_{k-1} into G_k.
inline Mat embed(const Mat& h) { return block_diag(h, Mat::identity(1)); }

/// Row vector e_k = [0, ..., 0, 1].
inline Mat e_row(int k) {
    Mat m(1, k);
    if (k) m(0, k - 1) = 1;
    return m;
}

inline Mat make_w(int k) {
    if (k < 0) throw DomainError("make_w: negative size");
    Mat m(k, k);
    for (int i = 0; i < k; ++i) m(i, k - 1 - i) = 1;
    return m;
}

inline Mat iota(const Mat& g) { return g.inverse().transpose(); }

inline Mat hat_conj(const Mat& g) {
    Mat w = make_w(g.rows());
    return w * iota(g) * w;
}

namespace detail {

/// The three factors whose product defines z_k (k >= 2).
inline std::array<Mat, 3> z_factors(int k, const Mat& z_km1, const Mat& z_km2) {
    Mat w = make_w(k - 1);
    Mat f1 = embed(w);
    Mat f2 = block_diag(z_km2.rows() ? z_km2.inverse() : Mat(0, 0), Mat::identity(2));
    Mat top = z_km1.transpose() * w * z_km1;
    Mat f3(k, k);
    for (int i = 0; i < k - 1; ++i)
        for (int j = 0; j < k - 1; ++j) f3(i, j) = top(i, j);
    f3(k - 2, k - 1) = 1;
    f3(k - 1, k - 1) = 1;
    return {f1, f2, f3};
}

class ZCache {
public:
    const Mat& get(int k) {
        {
            std::shared_lock lock(mu_);
            if (k < static_cast<int>(z_.size())) return *z_[k];
        }
        std::unique_lock lock(mu_);
        while (static_cast<int>(z_.size()) <= k) {
            int j = static_cast<int>(z_.size());
            if (j == 0) z_.push_back(std::make_unique<Mat>(0, 0));
            else if (j == 1) z_.push_back(std::make_unique<Mat>(Mat::identity(1)));
            else {
                auto f = z_factors(j, *z_[j - 1], *z_[j - 2]);
                Mat z = f[0] * f[1] * f[2];
                if (!z.is_integer()) throw AlgebraError("make_z: non-integral entry");
                z_.push_back(std::make_unique<Mat>(std::move(z)));
            }
        }
        return *z_[k];
    }

private:
    std::shared_mutex mu_;
    std::vector<std::unique_ptr<Mat>> z_;
};

inline ZCache& z_cache() {
    static ZCache c;
    return c;
}

}  // namespace detail

inline Mat make_z(int k) {
    if (k < 0) throw DomainError("make_z: negative size");
    return detail::z_cache().get(k);
}

/// Entries of g are all zero except one per row and column.
inline bool is_monomial(const Mat& g) {
    if (!g.square()) return false;
    for (int i = 0; i < g.rows(); ++i) {
        int nz = 0;
        for (int j = 0; j < g.cols(); ++j) nz += g(i, j) != 0;
        if (nz != 1) return false;
    }
    for (int j = 0; j < g.cols(); ++j) {
        int nz = 0;
        for (int i = 0; i < g.rows(); ++i) nz += g(i, j) != 0;
        if (nz != 1) return false;
    }
    return true;
}

}  // namespace rankin
