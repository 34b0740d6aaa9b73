#pragma once

#include <cctype>
#include <cmath>
#include <complex>
#include <ostream>
#include <string>
#include <tuple>

#include "rankin/exactalg/rational.hpp"

namespace rankin {

/// Element a + b i + c r + d i r of Q(i)[r]/(r^2 - q).
/// q == 0 marks an element with no r-part whose q is not yet pinned.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : a_(n) {}  // NOLINT
    Scalar(const Q& a) : a_(a) {}  // NOLINT
    Scalar(const Q& a, const Q& b) : a_(a), b_(b) {}
    Scalar(const Q& a, const Q& b, const Q& c, const Q& d, long q) : a_(a), b_(b), c_(c), d_(d), q_(q) {
        if ((c_ != 0 || d_ != 0) && q_ <= 0) throw AlgebraError("Scalar: r-part requires q > 0");
    }

    static Scalar i() { return Scalar(Q(0), Q(1)); }
    static Scalar r(long q) { return Scalar(Q(0), Q(0), Q(1), Q(0), q); }

    /// q^{e/2} for integer e.
    static Scalar sqrtq_pow(long q, int e) {
        if (e % 2 == 0) return Scalar(qpow(q, e / 2));
        // odd e: q^{e/2} = q^{(e-1)/2} r
        return Scalar(Q(0), Q(0), qpow(q, (e - 1) / 2), Q(0), q);
    }

    const Q& re() const { return a_; }
    const Q& im() const { return b_; }
    const Q& rre() const { return c_; }
    const Q& rim() const { return d_; }
    long q() const { return q_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_gaussian() const { return c_ == 0 && d_ == 0; }

    Scalar with_q(long q) const {
        Scalar s = *this;
        if (s.q_ != 0 && s.q_ != q && !s.is_gaussian()) throw AlgebraError("Scalar: mixed q");
        s.q_ = q;
        return s;
    }

    friend Scalar operator+(const Scalar& x, const Scalar& y) {
        return Scalar(x.a_ + y.a_, x.b_ + y.b_, x.c_ + y.c_, x.d_ + y.d_, merge_q(x, y));
    }
    friend Scalar operator-(const Scalar& x, const Scalar& y) {
        return Scalar(x.a_ - y.a_, x.b_ - y.b_, x.c_ - y.c_, x.d_ - y.d_, merge_q(x, y));
    }
    Scalar operator-() const { return Scalar(-a_, -b_, -c_, -d_, q_); }

    friend Scalar operator*(const Scalar& x, const Scalar& y) {
        long q = merge_q(x, y);
        // (A1 + B1 r)(A2 + B2 r) with A = a + b i, B = c + d i.
        Q A_re = x.a_ * y.a_ - x.b_ * y.b_;
        Q A_im = x.a_ * y.b_ + x.b_ * y.a_;
        if (x.is_gaussian() || y.is_gaussian()) {
            if (x.is_gaussian() && y.is_gaussian()) return Scalar(A_re, A_im, Q(0), Q(0), q);
            const Scalar& g = x.is_gaussian() ? x : y;
            const Scalar& h = x.is_gaussian() ? y : x;
            return Scalar(A_re, A_im, g.a_ * h.c_ - g.b_ * h.d_, g.a_ * h.d_ + g.b_ * h.c_, q);
        }
        Q BB_re = x.c_ * y.c_ - x.d_ * y.d_;
        Q BB_im = x.c_ * y.d_ + x.d_ * y.c_;
        Q C_re = x.a_ * y.c_ - x.b_ * y.d_ + x.c_ * y.a_ - x.d_ * y.b_;
        Q C_im = x.a_ * y.d_ + x.b_ * y.c_ + x.c_ * y.b_ + x.d_ * y.a_;
        return Scalar(A_re + q * BB_re, A_im + q * BB_im, C_re, C_im, q);
    }

    Scalar inverse() const {
        if (is_zero()) throw AlgebraError("Scalar: inverse of zero");
        if (is_gaussian()) {
            Q n = a_ * a_ + b_ * b_;
            return Scalar(a_ / n, -b_ / n, Q(0), Q(0), q_);
        }
        // (A + B r)^{-1} = (A - B r) / (A^2 - q B^2)
        Scalar conj(a_, b_, -c_, -d_, q_);
        Scalar norm = (*this) * conj;  // lies in Q(i)
        return conj * norm.inverse();
    }

    friend Scalar operator/(const Scalar& x, const Scalar& y) { return x * y.inverse(); }
    Scalar& operator+=(const Scalar& y) { return *this = *this + y; }
    Scalar& operator-=(const Scalar& y) { return *this = *this - y; }
    Scalar& operator*=(const Scalar& y) { return *this = *this * y; }
    Scalar& operator/=(const Scalar& y) { return *this = *this / y; }

    Scalar pow(int e) const {
        Scalar r(1);
        Scalar b = e >= 0 ? *this : inverse();
        for (int k = e < 0 ? -e : e; k; k >>= 1) {
            if (k & 1) r *= b;
            if (k > 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_ &&
               (x.is_gaussian() || x.q_ == y.q_);
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    /// Fixed total order for canonical sorting.
    friend bool operator<(const Scalar& x, const Scalar& y) {
        return std::tie(x.a_, x.b_, x.c_, x.d_) < std::tie(y.a_, y.b_, y.c_, y.d_);
    }

    std::complex<double> to_complex(long q_hint = 0) const {
        long q = q_ ? q_ : q_hint;
        double sq = std::sqrt(static_cast<double>(q));
        return {a_.get_d() + c_.get_d() * sq, b_.get_d() + d_.get_d() * sq};
    }

    /// Format "p/q+r/s*i+u/v*r+w/x*i*r"; zero coordinates are omitted.
    std::string str() const {
        std::string out;
        auto emit = [&](const Q& v, const char* unit) {
            if (v == 0) return;
            std::string t = v.get_str();
            if (!out.empty() && t[0] != '-') out += '+';
            out += t;
            out += unit;
        };
        emit(a_, "");
        emit(b_, "*i");
        emit(c_, "*r");
        emit(d_, "*i*r");
        return out.empty() ? "0" : out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

private:
    static long merge_q(const Scalar& x, const Scalar& y) {
        if (x.q_ == 0) return y.q_;
        if (y.q_ == 0 || y.q_ == x.q_) return x.q_;
        if (x.is_gaussian()) return y.q_;
        if (y.is_gaussian()) return x.q_;
        throw AlgebraError("Scalar: operands carry different q");
    }

    Q a_{0}, b_{0}, c_{0}, d_{0};
    long q_ = 0;
};

/// Parse "2/3+1/3i", "1/2-3*i", "r", "2*r+1*i*r"; q supplies r^2.
inline Scalar parse_scalar(const std::string& text, long q = 0) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("empty scalar literal");
    Scalar acc(0);
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos + 1;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        pos = end;
        bool neg = false;
        if (term[0] == '+' || term[0] == '-') {
            neg = term[0] == '-';
            term.erase(0, 1);
        }
        bool has_i = false, has_r = false;
        std::string coef;
        std::size_t k = 0;
        while (k < term.size()) {
            char ch = term[k];
            if (ch == 'i') { has_i = true; ++k; }
            else if (ch == 'r') { has_r = true; ++k; }
            else if (ch == '*') { ++k; }
            else { coef += ch; ++k; }
        }
        Q c = coef.empty() ? Q(1) : parse_rational(coef);
        if (neg) c = -c;
        if (has_r && q <= 0) throw DomainError("scalar literal uses r but q is unknown: " + text);
        if (has_r)
            acc += has_i ? Scalar(Q(0), Q(0), Q(0), c, q) : Scalar(Q(0), Q(0), c, Q(0), q);
        else
            acc += has_i ? Scalar(Q(0), c) : Scalar(c);
    }
    return acc;
}

}  // namespace rankin
