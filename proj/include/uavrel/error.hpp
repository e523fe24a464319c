#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace uavrel {

/// Machine-readable failure category carried by every uavrel::Error.
enum class ErrorCode {
  kInvalidArgument,
  // markov
  kTooFewStates,
  kDuplicateState,
  kUnknownState,
  kNegativeRate,
  kInvalidProbability,
  kAbsorbingHasOutgoing,
  kUnreachableAbsorbing,
  kWrongKind,
  kGridTooCoarse,
  kAllAbsorbing,
  kNoneAbsorbing,
  kSingularSystem,
  // reliability models
  kUnknownConfiguration,
  kLengthMismatch,
  kOutOfRange,
  kNonphysicalTemperature,
  // fault tree
  kParseError,
  kDuplicateId,
  kUndefinedNode,
  kCycleDetected,
  kSharedNode,
  kUnreachableNode,
  kUnresolvedBinding,
  kUnsupportedFeature,
  kMissingLeafProbability,
  // runtime
  kOutOfOrderSample,
  kEmptyStream,
  kInvalidSpec,
  kUnknownModel,
  kMissingParameter,
  kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace uavrel
