#pragma once

#include <stdexcept>
#include <string>

namespace rankin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct AlgebraError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct UnsupportedFieldError : Error { using Error::Error; };
struct UnsupportedError : Error { using Error::Error; };

// Exact path cannot handle the request; the numeric evaluator can.
struct CapabilityError : Error { using Error::Error; };

// Evaluation too close to a root of a denominator.
struct PoleError : Error {
    double root_re, root_im;
    PoleError(const std::string& what, double re, double im)
        : Error(what), root_re(re), root_im(im) {}
};

// A geometric ratio collapsed to 1; the caller should resample parameters.
struct DegenerateError : AlgebraError { using AlgebraError::AlgebraError; };

struct DivergenceError : Error { using Error::Error; };

}  // namespace rankin
