#include "vbetti/error.hpp"

namespace vbetti {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::ContainmentViolation: return "ContainmentViolation";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSimplex: return "InvalidSimplex";
    case ErrorCode::NotFaceClosed: return "NotFaceClosed";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidSubcomplex: return "InvalidSubcomplex";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::InvalidAtom: return "InvalidAtom";
    case ErrorCode::BlowupMismatch: return "BlowupMismatch";
    case ErrorCode::MissingBoundaryData: return "MissingBoundaryData";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingIntersection: return "MissingIntersection";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::InvalidStratification: return "InvalidStratification";
    case ErrorCode::NotACover: return "NotACover";
    case ErrorCode::ConvergenceMismatch: return "ConvergenceMismatch";
    case ErrorCode::MalformedConstraint: return "MalformedConstraint";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::InvalidScene: return "InvalidScene";
    }
    return "Unknown";
}

} // namespace vbetti
