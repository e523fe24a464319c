#pragma once

#include "uavrel/markov/model.hpp"
#include "uavrel/models/symptoms.hpp"

namespace uavrel::models {

struct BatteryParams {
  double failure_rate = 0.0001;      ///< lambda_b, 1/hour
  double degradation_rate = 0.0064;  ///< D, 1/hour
  double usage_rate = 0.008;         ///< alpha, 1/hour
  double inactivity_rate = 0.007;    ///< beta, 1/hour
};

inline constexpr std::size_t kBatteryBands = 4;
inline constexpr markov::StateIndex kBatteryFailed = 4;

/// Five-state chain B100 -> B75 -> B50 -> B25 -> BFailed. Bands step down at
/// D + alpha while active (D + beta while inactive) and every band fails
/// directly at lambda_b. Throws INVALID_ARGUMENT on negative rates or
/// lambda_b <= 0.
markov::MarkovModel build_battery_model(const BatteryParams& params,
                                        Activity activity = Activity::kActive);

/// Band index for a charge level: [75,100] -> 0, [50,75) -> 1, [25,50) -> 2,
/// (0,25) -> 3, 0 -> BFailed. Throws OUT_OF_RANGE outside [0,100].
markov::StateIndex battery_state_from_level(double level_pct);

}  // namespace uavrel::models
