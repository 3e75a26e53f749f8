#pragma once

#include <stdexcept>
#include <string>

namespace carnot {

enum class ErrorCode {
  UnsupportedGroup,
  RealizationMismatch,
  SingularFrame,
  DimensionMismatch,
  StepTooLarge,
  ModulusOutOfRange,
  NotUnitSpeed,
  WrongStratum,
  RankUnstable,
  NotAmple,
  NotAmpleEquiregular,
  SingularCovector,
  LemmaConditionFailed,
  IndexOutOfRange,
  IllConditioned,
  ShootingDiverged,
  StepUnbalanced,
  Parse,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace carnot
