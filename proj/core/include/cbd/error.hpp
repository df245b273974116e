#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cbd {

enum class ErrorCode {
  ParseError,
  NonUnitMass,
  NegativeProbability,
  UnknownLabel,
  UnknownContent,
  UnknownContext,
  EmptyFormat,
  DuplicateAtom,
  DuplicateId,
  MalformedAtom,
  InvalidValueSpace,
  NotSurjective,
  NotMeasured,
  AlreadyMeasured,
  GroundNotLinked,
  SpaceTooLarge,
  NotCategorical,
  NotOrdered,
  PlanIncomplete,
  NotDetermining,
  OutOfRange,
  NotACoupling,
  NotAligned,
  NotAllowable,
  NotBinary,
  MismatchedSupport,
  InconsistentlyConnected,
  LpTooLarge,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type. `where` names
/// the offending section (context id, content id, atom index) when known.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string where = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::string where_;
};

}  // namespace cbd
