#include "uavrel/error.hpp"

namespace uavrel {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kTooFewStates: return "TOO_FEW_STATES";
    case ErrorCode::kDuplicateState: return "DUPLICATE_STATE";
    case ErrorCode::kUnknownState: return "UNKNOWN_STATE";
    case ErrorCode::kNegativeRate: return "NEGATIVE_RATE";
    case ErrorCode::kInvalidProbability: return "INVALID_PROBABILITY";
    case ErrorCode::kAbsorbingHasOutgoing: return "ABSORBING_HAS_OUTGOING";
    case ErrorCode::kUnreachableAbsorbing: return "UNREACHABLE_ABSORBING";
    case ErrorCode::kWrongKind: return "WRONG_KIND";
    case ErrorCode::kGridTooCoarse: return "GRID_TOO_COARSE";
    case ErrorCode::kAllAbsorbing: return "ALL_ABSORBING";
    case ErrorCode::kNoneAbsorbing: return "NONE_ABSORBING";
    case ErrorCode::kSingularSystem: return "SINGULAR_SYSTEM";
    case ErrorCode::kUnknownConfiguration: return "UNKNOWN_CONFIGURATION";
    case ErrorCode::kLengthMismatch: return "LENGTH_MISMATCH";
    case ErrorCode::kOutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::kNonphysicalTemperature: return "NONPHYSICAL_TEMPERATURE";
    case ErrorCode::kParseError: return "PARSE_ERROR";
    case ErrorCode::kDuplicateId: return "DUPLICATE_ID";
    case ErrorCode::kUndefinedNode: return "UNDEFINED_NODE";
    case ErrorCode::kCycleDetected: return "CYCLE_DETECTED";
    case ErrorCode::kSharedNode: return "SHARED_NODE";
    case ErrorCode::kUnreachableNode: return "UNREACHABLE_NODE";
    case ErrorCode::kUnresolvedBinding: return "UNRESOLVED_BINDING";
    case ErrorCode::kUnsupportedFeature: return "UNSUPPORTED_FEATURE";
    case ErrorCode::kMissingLeafProbability: return "MISSING_LEAF_PROBABILITY";
    case ErrorCode::kOutOfOrderSample: return "OUT_OF_ORDER_SAMPLE";
    case ErrorCode::kEmptyStream: return "EMPTY_STREAM";
    case ErrorCode::kInvalidSpec: return "INVALID_SPEC";
    case ErrorCode::kUnknownModel: return "UNKNOWN_MODEL";
    case ErrorCode::kMissingParameter: return "MISSING_PARAMETER";
    case ErrorCode::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

}  // namespace uavrel
