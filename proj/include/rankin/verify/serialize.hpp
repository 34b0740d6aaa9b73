#pragma once

#include <json.hpp>

#include "rankin/characters.hpp"
#include "rankin/localfield/real_schwartz.hpp"
#include "rankin/localfield/schwartz.hpp"
#include "rankin/matrices.hpp"

namespace rankin::io {

using json = nlohmann::json;

inline json to_json(const MultChar& w) {
    if (!w.padic) return {{"eps", w.eps}, {"t", w.t.get_str()}};
    std::string a = w.a.str();
    std::erase(a, '*');
    json j{{"a", a}, {"t", w.t.get_str()}};
    if (w.sigma != 0) j["sigma"] = w.sigma.get_str();
    return j;
}

inline Q rational_field(const json& j, const char* key) {
    if (!j.contains(key)) return Q(0);
    const auto& v = j.at(key);
    return v.is_string() ? parse_rational(v.get<std::string>()) : Q(v.get<long>());
}

inline MultChar char_from_json(const json& j, long q = 0) {
    Q t = rational_field(j, "t");
    if (j.contains("eps")) return MultChar::real(j.at("eps").get<int>(), t);
    if (!j.contains("a")) throw DomainError("character JSON needs \"a\" or \"eps\"");
    const auto& a = j.at("a");
    Scalar s = a.is_string() ? parse_scalar(a.get<std::string>(), q) : Scalar(Q(a.get<long>()));
    return MultChar::unr_s(s, rational_field(j, "sigma"), t);
}

inline json to_json(const CharTuple& t) {
    json arr = json::array();
    for (const auto& w : t) arr.push_back(to_json(w));
    return arr;
}

inline CharTuple tuple_from_json(const json& j, long q = 0) {
    CharTuple t;
    for (const auto& e : j) t.push_back(char_from_json(e, q));
    return t;
}

inline json to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (int k = 0; k < m.cols(); ++k) r.push_back(m(i, k).get_str());
        rows.push_back(r);
    }
    return rows;
}

inline Mat mat_from_json(const json& j) {
    int r = static_cast<int>(j.size());
    int c = r ? static_cast<int>(j.at(0).size()) : 0;
    Mat m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(j.at(i).size()) != c) throw DimensionError("matrix JSON is ragged");
        for (int k = 0; k < c; ++k) {
            const auto& v = j.at(i).at(k);
            m(i, k) = v.is_string() ? parse_rational(v.get<std::string>()) : Q(v.get<long>());
        }
    }
    return m;
}

inline json to_json(const Schwartz& phi) {
    json terms = json::array();
    for (const auto& t : phi.terms()) {
        json c = json::array(), d = json::array();
        for (const auto& x : t.c) c.push_back(x.get_str());
        for (const auto& x : t.d) d.push_back(x.get_str());
        terms.push_back({{"c", c}, {"d", d}, {"m", t.m}, {"coeff", t.coeff.str()}});
    }
    return {{"rows", phi.rows()}, {"cols", phi.cols()}, {"terms", terms}};
}

/// Either {"lattice": e} (with optional rows/cols) or the full {"rows","cols","terms"} form.
inline Schwartz schwartz_from_json(const json& j, long p, int rows, int cols) {
    int r = j.value("rows", rows), c = j.value("cols", cols);
    if (r != rows || c != cols) throw DimensionError("Schwartz JSON has the wrong shape");
    if (j.contains("lattice")) return Schwartz::lattice(p, rows, cols, j.at("lattice").get<int>());
    Schwartz acc(p, rows, cols);
    for (const auto& t : j.at("terms")) {
        auto qs = [](const json& arr) {
            std::vector<Q> v;
            for (const auto& x : arr) v.push_back(x.is_string() ? parse_rational(x.get<std::string>()) : Q(x.get<long>()));
            return v;
        };
        Scalar coeff = t.contains("coeff") ? parse_scalar(t.at("coeff").get<std::string>(), p) : Scalar(1);
        acc = acc + Schwartz::elem(p, rows, cols, qs(t.at("c")), qs(t.at("d")), t.at("m").get<std::vector<int>>(), coeff);
    }
    return acc;
}

/// Polynomial coefficients of phi(x) = P(x) exp(-pi x^2); entries are numbers or [re, im].
inline json to_json(const RealSchwartz& phi) {
    json arr = json::array();
    for (const auto& z : phi.coeffs()) arr.push_back(json::array({z.real(), z.imag()}));
    return {{"poly", arr}};
}

inline RealSchwartz real_schwartz_from_json(const json& j) {
    std::vector<std::complex<double>> v;
    for (const auto& x : j.at("poly")) v.emplace_back(x.is_array() ? std::complex<double>(x.at(0), x.at(1)) : std::complex<double>(x.get<double>()));
    return RealSchwartz(v);
}

}  // namespace rankin::io
