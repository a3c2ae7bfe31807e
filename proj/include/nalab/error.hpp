#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

namespace nalab {

enum class ErrorCode {
  InvalidArgument,
  DivisionByNonUnit,
  DistributivityViolation,
  NotAbelianGroup,
  ShapeMismatch,
  RingMismatch,
  TooLarge,
  InfiniteScalarField,
  BNotCommutative,
  NotAInvariant,
  NotIdealAssociative,
  NotDirectSum,
  FilterViolation,
  PreconditionUnmet,
  ValidationFailure,
  SigmaNotInvolutive,
  AlphaNotCentralUnit,
  CoherenceViolation,
  NotAnAction,
  PremiseFailure,
  Disagreement,
  ParseError,
  SchemaError,
  UnknownKind,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this exception. The
// witness is a JSON fragment naming the offending elements/indices so that
// reports can re-verify it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json witness = nullptr)
      : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  nlohmann::json witness_;
};

}  // namespace nalab
