#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pleat {

enum class ErrorKind {
    Precondition,
    ZeroSlopePair,
    BaseSlope,
    SameSlope,
    NoIntersection,
    CuspTrace,
    DegenerateElement,
    DegenerateLength,
    OutOfRegion,
    StalledContinuation,
    Parse,
    Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so front ends can map
// it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    // Numeric failures (as opposed to bad input) are reported differently by the CLI.
    bool is_numeric() const noexcept { return kind_ == ErrorKind::StalledContinuation; }

private:
    ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Precondition: return "PreconditionViolation";
        case ErrorKind::ZeroSlopePair: return "ZeroSlopePair";
        case ErrorKind::BaseSlope: return "BaseSlope";
        case ErrorKind::SameSlope: return "SameSlope";
        case ErrorKind::NoIntersection: return "NoIntersection";
        case ErrorKind::CuspTrace: return "CuspTrace";
        case ErrorKind::DegenerateElement: return "DegenerateElement";
        case ErrorKind::DegenerateLength: return "DegenerateLength";
        case ErrorKind::OutOfRegion: return "OutOfRegion";
        case ErrorKind::StalledContinuation: return "StalledContinuation";
        case ErrorKind::Parse: return "ParseError";
        case ErrorKind::Io: return "IoError";
    }
    return "Error";
}

}  // namespace pleat
