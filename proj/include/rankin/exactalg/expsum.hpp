#pragma once

#include <complex>
#include <map>
#include <vector>

#include "rankin/exactalg/monomial.hpp"

namespace rankin {

/// Records the ratios of every infinite geometric series summed formally.
struct ConvergenceLog {
    std::vector<Monomial> ratios;

    void note(const Monomial& x) { ratios.push_back(x); }
    void merge(const ConvergenceLog& o) { ratios.insert(ratios.end(), o.ratios.begin(), o.ratios.end()); }

    /// True when every recorded series converges literally at s.
    bool literal_at(std::complex<double> s, long q) const {
        for (const auto& x : ratios)
            if (std::abs(x.eval_s(s, q)) >= 1.0) return false;
        return true;
    }
};

/// A function of an integer m of the form sum_i c_i * x_i^m with RatFun c_i and monomial x_i.
/// Closed under products and under summation over m with constant or symbolic bounds;
/// this is the shell-summation engine behind every exact integral.
class ExpSum {
public:
    ExpSum() = default;
    ExpSum(const RatFun& c) { add_term(c, Monomial::one()); }  // NOLINT

    static ExpSum geometric(const Monomial& x, const RatFun& c = RatFun(1)) {
        ExpSum e;
        e.add_term(c, x);
        return e;
    }

    const std::map<Monomial, RatFun>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend ExpSum operator+(ExpSum x, const ExpSum& y) {
        for (const auto& [b, c] : y.terms_) x.add_term(c, b);
        return x;
    }
    ExpSum operator-() const {
        ExpSum e;
        for (const auto& [b, c] : terms_) e.terms_.emplace(b, -c);
        return e;
    }
    friend ExpSum operator-(const ExpSum& x, const ExpSum& y) { return x + (-y); }
    friend ExpSum operator*(const ExpSum& x, const ExpSum& y) {
        ExpSum e;
        for (const auto& [bx, cx] : x.terms_)
            for (const auto& [by, cy] : y.terms_) e.add_term(cx * cy, bx * by);
        return e;
    }
    friend ExpSum operator*(const ExpSum& x, const RatFun& c) {
        ExpSum e;
        if (c.is_zero()) return e;
        for (const auto& [b, cx] : x.terms_) e.add_term(cx * c, b);
        return e;
    }
    ExpSum& operator+=(const ExpSum& y) { return *this = *this + y; }

    /// m -> f(m) * x^m
    ExpSum twist(const Monomial& x) const {
        ExpSum e;
        for (const auto& [b, c] : terms_) e.add_term(c, b * x);
        return e;
    }

    /// m -> f(m + k)
    ExpSum shift(int k) const {
        ExpSum e;
        for (const auto& [b, c] : terms_) e.add_term(c * b.ratfun_pow(k), b);
        return e;
    }

    RatFun at(int m) const {
        RatFun acc;
        for (const auto& [b, c] : terms_) acc += c * b.ratfun_pow(m);
        return acc;
    }

    /// sum_{m >= L} f(m), formal geometric continuation.
    RatFun sum_from(int L, ConvergenceLog* log = nullptr) const {
        RatFun acc;
        for (const auto& [b, c] : terms_) {
            check_ratio(b);
            if (log) log->note(b);
            acc += c * b.ratfun_pow(L) / (RatFun(1) - b.ratfun());
        }
        return acc;
    }

    /// sum_{m <= U} f(m) = sum_{j >= -U} f(-j).
    RatFun sum_upto(int U, ConvergenceLog* log = nullptr) const {
        RatFun acc;
        for (const auto& [b, c] : terms_) {
            Monomial inv = b.inverse();
            check_ratio(inv);
            if (log) log->note(inv);
            acc += c * b.ratfun_pow(U) / (RatFun(1) - inv.ratfun());
        }
        return acc;
    }

    /// sum_{L <= m <= U} f(m); empty range gives 0.
    RatFun sum_range(int L, int U) const {
        if (U < L) return RatFun();
        RatFun acc;
        for (const auto& [b, c] : terms_) {
            if (b.is_one()) {
                acc += c * RatFun(U - L + 1);
            } else {
                RatFun x = b.ratfun();
                acc += c * (b.ratfun_pow(L) - b.ratfun_pow(U + 1)) / (RatFun(1) - x);
            }
        }
        return acc;
    }

    /// The function m -> sum_{j=a}^{m-1} f(j) (valid for m >= a).
    ExpSum partial_from(int a) const {
        ExpSum e;
        for (const auto& [b, c] : terms_) {
            check_ratio(b);
            RatFun inv = (RatFun(1) - b.ratfun()).inverse();
            e.add_term(c * b.ratfun_pow(a) * inv, Monomial::one());
            e.add_term(-(c * inv), b);
        }
        return e;
    }

private:
    static void check_ratio(const Monomial& b) {
        if (b.is_one()) throw DegenerateError("geometric ratio equals 1 (pole collision); resample parameters");
    }

    void add_term(const RatFun& c, const Monomial& b) {
        if (c.is_zero()) return;
        auto it = terms_.find(b);
        if (it == terms_.end()) {
            terms_.emplace(b, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    std::map<Monomial, RatFun> terms_;
};

}  // namespace rankin
