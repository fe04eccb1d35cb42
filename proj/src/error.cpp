#include "crn/error.hpp"

namespace crn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SelfLoopReaction: return "SelfLoopReaction";
    case ErrorKind::OrphanSpecies: return "OrphanSpecies";
    case ErrorKind::NonPositiveRate: return "NonPositiveRate";
    case ErrorKind::EmptyReactionList: return "EmptyReactionList";
    case ErrorKind::DuplicateSpecies: return "DuplicateSpecies";
    case ErrorKind::NegativeConcentration: return "NegativeConcentration";
    case ErrorKind::NonPositivePoint: return "NonPositivePoint";
    case ErrorKind::NonPositiveAnchor: return "NonPositiveAnchor";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooManySpecies: return "TooManySpecies";
    case ErrorKind::WrongSpeciesCount: return "WrongSpeciesCount";
    case ErrorKind::NotOneDimensional: return "NotOneDimensional";
    case ErrorKind::NonIntegerMultiple: return "NonIntegerMultiple";
    case ErrorKind::MissingSignGroup: return "MissingSignGroup";
    case ErrorKind::SegmentHitsBoundary: return "SegmentHitsBoundary";
    case ErrorKind::DirectionLeavesOrthant: return "DirectionLeavesOrthant";
    case ErrorKind::NonPositiveEquilibrium: return "NonPositiveEquilibrium";
    case ErrorKind::HessianUnavailable: return "HessianUnavailable";
    case ErrorKind::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::NoSolutionAvailable: return "NoSolutionAvailable";
    case ErrorKind::ArithmeticOverflow: return "ArithmeticOverflow";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace crn
