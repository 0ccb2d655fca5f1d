#include "lkgain/error.hpp"

namespace lkgain {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedWeightType: return "UnsupportedWeightType";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonSymmetricMatrix: return "NonSymmetricMatrix";
    case ErrorCode::NonPositiveCost: return "NonPositiveCost";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::VerticesNotDistinct: return "VerticesNotDistinct";
    case ErrorCode::PathInconsistent: return "PathInconsistent";
    case ErrorCode::MoveInfeasible: return "MoveInfeasible";
    case ErrorCode::TreeInconsistent: return "TreeInconsistent";
    case ErrorCode::StepIndexInvalid: return "StepIndexInvalid";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::NoRunCompleted: return "NoRunCompleted";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

} // namespace lkgain
