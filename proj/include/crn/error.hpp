#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crn {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  SelfLoopReaction,
  OrphanSpecies,
  NonPositiveRate,
  EmptyReactionList,
  DuplicateSpecies,
  NegativeConcentration,
  NonPositivePoint,
  NonPositiveAnchor,
  EmptySet,
  TooManySpecies,
  WrongSpeciesCount,
  NotOneDimensional,
  NonIntegerMultiple,
  MissingSignGroup,
  SegmentHitsBoundary,
  DirectionLeavesOrthant,
  NonPositiveEquilibrium,
  HessianUnavailable,
  StepSizeUnderflow,
  NoSolutionAvailable,
  ArithmeticOverflow,
};

std::string_view to_string(ErrorKind kind);

// All library failures are thrown as crn::Error; kind() is the stable part.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crn
