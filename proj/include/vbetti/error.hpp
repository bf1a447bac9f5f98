#ifndef VBETTI_ERROR_HPP
#define VBETTI_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace vbetti {

enum class ErrorCode {
    ContainmentViolation,
    Overflow,
    ParseError,
    InvalidSimplex,
    NotFaceClosed,
    UnknownVertex,
    InvalidSubcomplex,
    InvalidMap,
    SizeLimit,
    UnknownAtom,
    InvalidAtom,
    BlowupMismatch,
    MissingBoundaryData,
    BoundaryMismatch,
    DimensionMismatch,
    MissingIntersection,
    NotAPartition,
    InvalidStratification,
    NotACover,
    ConvergenceMismatch,
    MalformedConstraint,
    InvalidInput,
    UnknownName,
    InvalidScene,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `context` names the offending object (a simplex,
/// an atom, a stratum) when there is one.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string context = {})
        : std::runtime_error(message), code_(code), context_(std::move(context)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::string& context() const noexcept { return context_; }

private:
    ErrorCode code_;
    std::string context_;
};

} // namespace vbetti

#endif
