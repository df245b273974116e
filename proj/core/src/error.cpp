#include "cbd/error.hpp"

namespace cbd {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonUnitMass: return "NonUnitMass";
    case ErrorCode::NegativeProbability: return "NegativeProbability";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownContent: return "UnknownContent";
    case ErrorCode::UnknownContext: return "UnknownContext";
    case ErrorCode::EmptyFormat: return "EmptyFormat";
    case ErrorCode::DuplicateAtom: return "DuplicateAtom";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MalformedAtom: return "MalformedAtom";
    case ErrorCode::InvalidValueSpace: return "InvalidValueSpace";
    case ErrorCode::NotSurjective: return "NotSurjective";
    case ErrorCode::NotMeasured: return "NotMeasured";
    case ErrorCode::AlreadyMeasured: return "AlreadyMeasured";
    case ErrorCode::GroundNotLinked: return "GroundNotLinked";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::NotCategorical: return "NotCategorical";
    case ErrorCode::NotOrdered: return "NotOrdered";
    case ErrorCode::PlanIncomplete: return "PlanIncomplete";
    case ErrorCode::NotDetermining: return "NotDetermining";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotACoupling: return "NotACoupling";
    case ErrorCode::NotAligned: return "NotAligned";
    case ErrorCode::NotAllowable: return "NotAllowable";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::MismatchedSupport: return "MismatchedSupport";
    case ErrorCode::InconsistentlyConnected: return "InconsistentlyConnected";
    case ErrorCode::LpTooLarge: return "LpTooLarge";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::string& where) {
  std::string out{to_string(code)};
  if (!where.empty()) out += " at " + where;
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::string where)
    : std::runtime_error(compose(code, message, where)), code_(code), where_(std::move(where)) {}

}  // namespace cbd
