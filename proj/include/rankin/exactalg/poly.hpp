#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "rankin/exactalg/scalar.hpp"

namespace rankin {

inline constexpr int kMaxDegree = 512;

/// Dense polynomial in Y with Scalar coefficients, lowest degree first.
class Poly {
public:
    Poly() = default;
    explicit Poly(Scalar c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(const Scalar& c, int k) {
        if (k < 0) throw AlgebraError("Poly: negative exponent");
        if (k > kMaxDegree) throw AlgebraError("Poly: degree cap exceeded");
        if (c.is_zero()) return Poly();
        std::vector<Scalar> v(k + 1, Scalar(0));
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Scalar(0); }
    const Scalar& lead() const { return c_.back(); }

    /// Lowest k with a nonzero coefficient.
    int low_degree() const {
        for (int k = 0; k < static_cast<int>(c_.size()); ++k)
            if (!c_[k].is_zero()) return k;
        return -1;
    }

    friend Poly operator+(const Poly& x, const Poly& y) {
        std::vector<Scalar> v(std::max(x.c_.size(), y.c_.size()), Scalar(0));
        for (std::size_t k = 0; k < x.c_.size(); ++k) v[k] = x.c_[k];
        for (std::size_t k = 0; k < y.c_.size(); ++k) v[k] += y.c_[k];
        return Poly(std::move(v));
    }
    Poly operator-() const {
        std::vector<Scalar> v;
        v.reserve(c_.size());
        for (const auto& s : c_) v.push_back(-s);
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }

    friend Poly operator*(const Poly& x, const Poly& y) {
        if (x.is_zero() || y.is_zero()) return Poly();
        if (x.degree() + y.degree() > kMaxDegree) throw AlgebraError("Poly: degree cap exceeded");
        std::vector<Scalar> v(x.c_.size() + y.c_.size() - 1, Scalar(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j)
                if (!y.c_[j].is_zero()) v[i + j] += x.c_[i] * y.c_[j];
        }
        return Poly(std::move(v));
    }
    Poly scaled(const Scalar& s) const {
        if (s.is_zero()) return Poly();
        std::vector<Scalar> v;
        v.reserve(c_.size());
        for (const auto& t : c_) v.push_back(t * s);
        return Poly(std::move(v));
    }
    Poly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        if (k < 0) throw AlgebraError("Poly: negative shift");
        if (degree() + k > kMaxDegree) throw AlgebraError("Poly: degree cap exceeded");
        std::vector<Scalar> v(k, Scalar(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

    /// Euclidean division: x = q*y + r with deg r < deg y.
    static std::pair<Poly, Poly> divmod(const Poly& x, const Poly& y) {
        if (y.is_zero()) throw AlgebraError("Poly: division by zero polynomial");
        if (x.degree() < y.degree()) return {Poly(), x};
        std::vector<Scalar> r = x.c_;
        std::vector<Scalar> qv(x.c_.size() - y.c_.size() + 1, Scalar(0));
        Scalar inv = y.lead().inverse();
        int dy = y.degree();
        for (int k = x.degree(); k >= dy; --k) {
            if (r[k].is_zero()) continue;
            Scalar f = r[k] * inv;
            qv[k - dy] = f;
            for (int j = 0; j <= dy; ++j)
                if (!y.c_[j].is_zero()) r[k - dy + j] -= f * y.c_[j];
        }
        r.resize(dy);
        return {Poly(std::move(qv)), Poly(std::move(r))};
    }

    Poly monic() const { return is_zero() ? *this : scaled(lead().inverse()); }

    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

    std::complex<double> eval(std::complex<double> y, long q) const {
        std::complex<double> acc = 0;
        for (int k = degree(); k >= 0; --k) acc = acc * y + c_[k].to_complex(q);
        return acc;
    }

    /// Apply a scalar map to coefficients: sum c_k Y^k -> sum c_k t^k Y^k.
    Poly dilate(const Scalar& t) const {
        std::vector<Scalar> v;
        v.reserve(c_.size());
        Scalar tk(1);
        for (const auto& s : c_) {
            v.push_back(s * tk);
            tk *= t;
        }
        return Poly(std::move(v));
    }

    Poly reversed() const {
        std::vector<Scalar> v(c_.rbegin(), c_.rend());
        return Poly(std::move(v));
    }

    friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }
    friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k].is_zero()) continue;
            if (!out.empty()) out += " + ";
            out += "(" + c_[k].str() + ")";
            if (k == 1) out += "*Y";
            else if (k > 1) out += "*Y^" + std::to_string(k);
        }
        return out;
    }

    long q_of() const {
        for (const auto& s : c_)
            if (s.q()) return s.q();
        return 0;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Scalar> c_;
};

}  // namespace rankin
