#ifndef GENDECOMP_ERROR_HPP
#define GENDECOMP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gendecomp {

enum class ErrorKind {
    NonSquare,
    NotSymmetric,
    NoConvergence,
    ComplexOrNegativeEigenvalue,
    ComplexOrNegativeSingularValue,
    NotPSD,
    DimensionMismatch,
    InvalidInput,
    Unsupported,
    ZeroVarianceColumn,
    NotADistanceMatrix,
    NonPositiveWeight,
    EmptyMargin,
    NegativeCount,
    SingleLevelVariable,
    ParseError,
    RaggedRows,
    IoError,
    UsageError,
};

inline std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ComplexOrNegativeEigenvalue: return "ComplexOrNegativeEigenvalue";
    case ErrorKind::ComplexOrNegativeSingularValue: return "ComplexOrNegativeSingularValue";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ZeroVarianceColumn: return "ZeroVarianceColumn";
    case ErrorKind::NotADistanceMatrix: return "NotADistanceMatrix";
    case ErrorKind::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorKind::EmptyMargin: return "EmptyMargin";
    case ErrorKind::NegativeCount: return "NegativeCount";
    case ErrorKind::SingleLevelVariable: return "SingleLevelVariable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UsageError: return "UsageError";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can branch on the category.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace gendecomp

#endif // GENDECOMP_ERROR_HPP
