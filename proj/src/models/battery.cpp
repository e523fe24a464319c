#include "uavrel/models/battery.hpp"

#include <cmath>

#include "uavrel/error.hpp"

namespace uavrel::models {

markov::MarkovModel build_battery_model(const BatteryParams& params, Activity activity) {
  for (double r : {params.degradation_rate, params.usage_rate, params.inactivity_rate}) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw Error(ErrorCode::kInvalidArgument, "battery rates must be finite and >= 0");
    }
  }
  if (!(params.failure_rate > 0.0) || !std::isfinite(params.failure_rate)) {
    throw Error(ErrorCode::kInvalidArgument, "battery failure rate must be positive");
  }
  const double band_rate =
      params.degradation_rate +
      (activity == Activity::kActive ? params.usage_rate : params.inactivity_rate);

  const std::vector<std::string> states = {"B100", "B75", "B50", "B25", "BFailed"};
  std::vector<markov::RateTransition> tr;
  for (std::size_t band = 0; band < kBatteryBands; ++band) {
    if (band_rate > 0.0) tr.push_back({states[band], states[band + 1], band_rate});
    tr.push_back({states[band], "BFailed", params.failure_rate});
  }
  const std::vector<std::string> absorbing = {"BFailed"};
  return markov::build_markov_model(states, tr, absorbing);
}

markov::StateIndex battery_state_from_level(double level_pct) {
  if (!(level_pct >= 0.0 && level_pct <= 100.0)) {
    throw Error(ErrorCode::kOutOfRange, "battery level " + std::to_string(level_pct) +
                                            "% outside [0, 100]");
  }
  if (level_pct >= 75.0) return 0;
  if (level_pct >= 50.0) return 1;
  if (level_pct >= 25.0) return 2;
  if (level_pct > 0.0) return 3;
  return kBatteryFailed;
}

}  // namespace uavrel::models
