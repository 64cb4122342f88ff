#include "tlift/error.hpp"

namespace tlift {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::NotOrderFour: return "NotOrderFour";
    case ErrorCode::DoesNotPreserveAlgebra: return "DoesNotPreserveAlgebra";
    case ErrorCode::BadGrade: return "BadGrade";
    case ErrorCode::EffectivityFailure: return "EffectivityFailure";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::ZeroLambda: return "ZeroLambda";
    case ErrorCode::NotInH: return "NotInH";
    case ErrorCode::NotImmersed: return "NotImmersed";
    case ErrorCode::FrameDiscontinuity: return "FrameDiscontinuity";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotLiftable: return "NotLiftable";
    case ErrorCode::NotConformal: return "NotConformal";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::MaskedPoint: return "MaskedPoint";
    case ErrorCode::NotKahler: return "NotKahler";
    case ErrorCode::NotLagrangian: return "NotLagrangian";
    case ErrorCode::NotUnitImaginary: return "NotUnitImaginary";
    case ErrorCode::LiftPropertyViolated: return "LiftPropertyViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::UnknownCheck: return "UnknownCheck";
  }
  return "Unknown";
}

}  // namespace tlift
