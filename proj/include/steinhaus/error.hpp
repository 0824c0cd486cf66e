#pragma once

#include <stdexcept>
#include <string>

namespace steinhaus {

enum class ErrorCode {
    EmptySet,
    EmptyInner,
    BudgetExceeded,
    NonLatticeShift,
    NotSymmetric,
    PointOutsideHull,
    QThresholdNotMet,
    NullMeasure,
    ResolutionTooCoarse,
    DimensionMismatch,
    InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::EmptySet: return "EmptySet";
        case ErrorCode::EmptyInner: return "EmptyInner";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::NonLatticeShift: return "NonLatticeShift";
        case ErrorCode::NotSymmetric: return "NotSymmetric";
        case ErrorCode::PointOutsideHull: return "PointOutsideHull";
        case ErrorCode::QThresholdNotMet: return "QThresholdNotMet";
        case ErrorCode::NullMeasure: return "NullMeasure";
        case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

} // namespace steinhaus
