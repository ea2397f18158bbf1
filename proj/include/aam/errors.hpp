#ifndef AAM_ERRORS_HPP
#define AAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aam {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Landmark-count or layout disagreement between shapes/models.
struct ShapeMismatchError : Error {
    using Error::Error;
};

// Parameter-vector length disagreement.
struct DimensionError : Error {
    using Error::Error;
};

struct DegenerateGeometryError : Error {
    using Error::Error;
};

struct InsufficientDataError : Error {
    using Error::Error;
};

// Text-format parse failure; line is 1-based.
struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct IoError : Error {
    enum class Kind { bad_magic, version_mismatch, truncated, unsupported_format, bad_checksum, not_found, write_failed };
    using enum Kind;
    Kind kind;
    IoError(Kind k, const std::string& msg) : Error(msg), kind(k) {}
};

struct ConfigError : Error {
    using Error::Error;
};

// A fitter was asked for a learned prior that is not loaded/trained.
struct MissingPriorError : Error {
    using Error::Error;
};

struct NumericError : Error {
    using Error::Error;
};

} // namespace aam

#endif
