#include "algpaths/errors.hpp"

namespace algpaths {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::SingularMatrix: return "SingularMatrix";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::ResolventSingular: return "ResolventSingular";
        case ErrorKind::DuplicateRoots: return "DuplicateRoots";
        case ErrorKind::NotAlgebraic: return "NotAlgebraic";
        case ErrorKind::InvalidPartition: return "InvalidPartition";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::TooFar: return "TooFar";
        case ErrorKind::LogOutOfDomain: return "LogOutOfDomain";
        case ErrorKind::LadderBroken: return "LadderBroken";
        case ErrorKind::LinkTooFar: return "LinkTooFar";
        case ErrorKind::DimMismatch: return "DimMismatch";
        case ErrorKind::NonIntegerTrace: return "NonIntegerTrace";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::NotRankOneProjection: return "NotRankOneProjection";
        case ErrorKind::NotInAlgebra: return "NotInAlgebra";
        case ErrorKind::SpectralSeparationLost: return "SpectralSeparationLost";
        case ErrorKind::NotLiftableInput: return "NotLiftableInput";
        case ErrorKind::NotLiftableAtZero: return "NotLiftableAtZero";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Error";
}

} // namespace algpaths
