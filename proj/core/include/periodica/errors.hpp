#pragma once

#include <stdexcept>
#include <string>

namespace periodica {

/// Error families, one per process exit code.
enum class ErrorFamily {
    format = 2,      ///< malformed input (bad cell, bad header, bad date)
    coverage = 3,    ///< missing months, insufficient CPI coverage, empty excision
    parameter = 4,   ///< invalid argument or configuration
    degeneracy = 5,  ///< numerically degenerate data (zero variance, singular system)
    io = 6,          ///< file not found / unreadable / unwritable
};

class Error : public std::runtime_error {
public:
    Error(ErrorFamily family, const std::string& msg)
        : std::runtime_error(msg), family_(family) {}

    ErrorFamily family() const noexcept { return family_; }
    int exit_code() const noexcept { return static_cast<int>(family_); }

private:
    ErrorFamily family_;
};

struct FormatError : Error {
    explicit FormatError(const std::string& msg) : Error(ErrorFamily::format, msg) {}
};

struct GapError : Error {
    explicit GapError(const std::string& msg) : Error(ErrorFamily::coverage, msg) {}
};

struct CoverageError : Error {
    explicit CoverageError(const std::string& msg) : Error(ErrorFamily::coverage, msg) {}
};

struct EmptySeriesError : Error {
    explicit EmptySeriesError(const std::string& msg) : Error(ErrorFamily::coverage, msg) {}
};

struct DegenerateBaseError : Error {
    explicit DegenerateBaseError(const std::string& msg) : Error(ErrorFamily::degeneracy, msg) {}
};

struct UnknownCountryError : Error {
    explicit UnknownCountryError(const std::string& msg) : Error(ErrorFamily::parameter, msg) {}
};

struct RankError : Error {
    explicit RankError(const std::string& msg) : Error(ErrorFamily::parameter, msg) {}
};

struct ConditioningError : Error {
    explicit ConditioningError(const std::string& msg) : Error(ErrorFamily::degeneracy, msg) {}
};

struct TooShortError : Error {
    explicit TooShortError(const std::string& msg) : Error(ErrorFamily::parameter, msg) {}
};

struct DegenerateError : Error {
    explicit DegenerateError(const std::string& msg) : Error(ErrorFamily::degeneracy, msg) {}
};

struct ParamError : Error {
    explicit ParamError(const std::string& msg) : Error(ErrorFamily::parameter, msg) {}
};

struct DivisionByNearZeroError : Error {
    explicit DivisionByNearZeroError(const std::string& msg) : Error(ErrorFamily::degeneracy, msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(ErrorFamily::io, msg) {}
};

}  // namespace periodica
