#pragma once

#include <stdexcept>
#include <string>

namespace algpaths {

// Every failure mode of the library maps to one of these kinds, so callers
// (and the CLI exit-code mapping) can dispatch without string matching.
enum class ErrorKind {
    SingularMatrix,
    OutOfDomain,
    NotPositiveDefinite,
    NotHermitian,
    ResolventSingular,
    DuplicateRoots,
    NotAlgebraic,
    InvalidPartition,
    NotIdempotent,
    TooFar,
    LogOutOfDomain,
    LadderBroken,
    LinkTooFar,
    DimMismatch,
    NonIntegerTrace,
    IndexOutOfRange,
    NotRankOneProjection,
    NotInAlgebra,
    SpectralSeparationLost,
    NotLiftableInput,
    NotLiftableAtZero,
    ParseError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + detail),
          kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace algpaths
