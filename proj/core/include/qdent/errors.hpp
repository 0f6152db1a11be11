#pragma once

#include <stdexcept>
#include <string>

namespace qdent {

enum class ErrorKind {
    InvalidWindow,
    DegenerateSpacings,
    MalformedCdf,
    NonPositiveQdf,
    QuadratureNotConverged,
    SingularCurvature,
    DegenerateSample,
    MissingCalibration,
};

constexpr const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidWindow:          return "InvalidWindow";
        case ErrorKind::DegenerateSpacings:     return "DegenerateSpacings";
        case ErrorKind::MalformedCdf:           return "MalformedCdf";
        case ErrorKind::NonPositiveQdf:         return "NonPositiveQdf";
        case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
        case ErrorKind::SingularCurvature:      return "SingularCurvature";
        case ErrorKind::DegenerateSample:       return "DegenerateSample";
        case ErrorKind::MissingCalibration:     return "MissingCalibration";
    }
    return "UnknownError";
}

// Numeric failure raised by an estimator or a calibration step. Carries a
// machine-readable kind so the Monte-Carlo harness can count failures per
// estimator and the CLI can map them to its exit-code contract.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace qdent
