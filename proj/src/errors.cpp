#include "carnot/errors.hpp"

namespace carnot {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::RealizationMismatch: return "RealizationMismatch";
    case ErrorCode::SingularFrame: return "SingularFrame";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::NotUnitSpeed: return "NotUnitSpeed";
    case ErrorCode::WrongStratum: return "WrongStratum";
    case ErrorCode::RankUnstable: return "RankUnstable";
    case ErrorCode::NotAmple: return "NotAmple";
    case ErrorCode::NotAmpleEquiregular: return "NotAmpleEquiregular";
    case ErrorCode::SingularCovector: return "SingularCovector";
    case ErrorCode::LemmaConditionFailed: return "LemmaConditionFailed";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::ShootingDiverged: return "ShootingDiverged";
    case ErrorCode::StepUnbalanced: return "StepUnbalanced";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace carnot
