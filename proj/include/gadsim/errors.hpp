#pragma once

#include <stdexcept>
#include <string>

namespace gadsim {

// Base class for all toolkit errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct NonHermitian : Error {
    explicit NonHermitian(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct UnknownSite : Error {
    explicit UnknownSite(const std::string& msg) : Error(msg) {}
};

struct NonQubit : Error {
    explicit NonQubit(const std::string& msg) : Error(msg) {}
};

struct OutOfDomain : Error {
    explicit OutOfDomain(const std::string& msg) : Error(msg) {}
};

struct Degenerate : Error {
    explicit Degenerate(const std::string& msg) : Error(msg) {}
};

struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& msg) : Error(msg) {}
};

struct TruncationOverflow : Error {
    explicit TruncationOverflow(const std::string& msg) : Error(msg) {}
};

struct NotAGadget : Error {
    explicit NotAGadget(const std::string& msg) : Error(msg) {}
};

struct DegreeTooHigh : Error {
    explicit DegreeTooHigh(const std::string& msg) : Error(msg) {}
};

struct AncillaCollision : Error {
    explicit AncillaCollision(const std::string& msg) : Error(msg) {}
};

struct InvalidArity : Error {
    explicit InvalidArity(const std::string& msg) : Error(msg) {}
};

struct NonPositiveX : Error {
    explicit NonPositiveX(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& msg) : Error(msg) {}
};

struct UnknownSuite : Error {
    explicit UnknownSuite(const std::string& msg) : Error(msg) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& msg) : Error(msg) {}
};

}  // namespace gadsim
