#pragma once

#include <stdexcept>
#include <string>

namespace kcensus {

enum class ErrorKind {
    // text format errors
    OddEntry,
    DuplicateMagnitude,
    ZeroEntry,
    MissingMagnitude,
    EmptyInput,
    OddArity,
    NonDecreasingR,
    BadStrandIndex,
    SyntaxError,
    BadField,
    MissingColumn,
    // braid / diagram
    BadStrandCount,
    NonRealizable,
    // polynomial invariants
    ZeroPolynomial,
    TooLarge,
    FractionalExponent,
    ZeroPoint,
    // cusp geometry
    DegenerateLattice,
    NotReduced,
    // census
    MissingField,
    // cli
    UnknownCommand,
    BadFlag,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::OddEntry: return "OddEntry";
        case ErrorKind::DuplicateMagnitude: return "DuplicateMagnitude";
        case ErrorKind::ZeroEntry: return "ZeroEntry";
        case ErrorKind::MissingMagnitude: return "MissingMagnitude";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::OddArity: return "OddArity";
        case ErrorKind::NonDecreasingR: return "NonDecreasingR";
        case ErrorKind::BadStrandIndex: return "BadStrandIndex";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::BadField: return "BadField";
        case ErrorKind::MissingColumn: return "MissingColumn";
        case ErrorKind::BadStrandCount: return "BadStrandCount";
        case ErrorKind::NonRealizable: return "NonRealizable";
        case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
        case ErrorKind::TooLarge: return "TooLarge";
        case ErrorKind::FractionalExponent: return "FractionalExponent";
        case ErrorKind::ZeroPoint: return "ZeroPoint";
        case ErrorKind::DegenerateLattice: return "DegenerateLattice";
        case ErrorKind::NotReduced: return "NotReduced";
        case ErrorKind::MissingField: return "MissingField";
        case ErrorKind::UnknownCommand: return "UnknownCommand";
        case ErrorKind::BadFlag: return "BadFlag";
    }
    return "Unknown";
}

/// FractionalExponent means an internal consistency assertion failed;
/// everything else reports bad input.
inline bool is_internal(ErrorKind k) { return k == ErrorKind::FractionalExponent; }

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace kcensus
