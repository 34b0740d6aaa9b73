#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "rankin/verify/serialize.hpp"

namespace rankin {

enum class Mode { Exact, Numeric };

inline const char* mode_name(Mode m) { return m == Mode::Exact ? "exact" : "numeric"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "exact") return Mode::Exact;
    if (s == "numeric") return Mode::Numeric;
    throw DomainError("mode must be exact or numeric: " + s);
}

inline std::string field_name(long q) { return q > 0 ? "Q_" + std::to_string(q) : "R"; }

/// One checked identity. Timing is written only for numeric reports so exact JSON is reproducible byte for byte.
struct VerificationReport {
    std::string case_id;
    std::string field;
    Mode mode = Mode::Exact;
    io::json params = io::json::object();
    std::string lhs, rhs;
    bool equal = false;
    double max_rel_err = 0;
    io::json flags = io::json::object();
    std::uint64_t seed = 0;
    double seconds = 0;
    std::string error;

    io::json to_json() const {
        io::json j{{"case", case_id}, {"field", field},  {"mode", mode_name(mode)}, {"params", params},
                   {"lhs", lhs},      {"rhs", rhs},      {"equal", equal},          {"flags", flags},
                   {"seed", seed}};
        if (mode == Mode::Numeric) {
            j["max_rel_err"] = max_rel_err;
            j["seconds"] = seconds;
        }
        if (!error.empty()) j["error"] = error;
        return j;
    }
};

namespace detail {
class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

inline double rel_err(std::complex<double> a, std::complex<double> b) {
    return std::abs(a - b) / std::max(1.0, std::abs(b));
}

inline std::string complex_str(std::complex<double> z) {
    std::ostringstream os;
    os.precision(15);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}
}  // namespace detail

}  // namespace rankin
