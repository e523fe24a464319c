#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uavrel/markov/model.hpp"
#include "uavrel/models/symptoms.hpp"

namespace uavrel::models {

struct PropulsionParams {
  MotorConfiguration configuration = MotorConfiguration::kPNPN;
  double motor_failure_rate = 0.001;  ///< 1/hour, per motor
  /// Motor positions whose single loss leaves the craft flyable. Unset means
  /// default_tolerable_losses(configuration).
  std::optional<std::vector<std::size_t>> tolerable_single_losses;
};

/// Shipped defaults: none for PNPN, every position for PNPNPN, positions
/// 0-3 for PPNNPN.
std::vector<std::size_t> default_tolerable_losses(MotorConfiguration configuration);

/**
 * Absorbing propulsion chain for n motors at rate lambda each, with k
 * tolerable single losses:
 *
 *   AllOk --(k lambda)--> OneOut --((n-1) lambda)--> Failure
 *   AllOk --((n-k) lambda)--> Failure
 *
 * Edges with zero multiplier are dropped, so PNPN collapses to
 * AllOk --(4 lambda)--> Failure. State order is AllOk, [OneOut], Failure.
 */
markov::MarkovModel build_propulsion_model(const PropulsionParams& params);

/// State of build_propulsion_model(params) matching the observed motors: no
/// failures is AllOk, one tolerable failure is OneOut, anything else is
/// Failure. Throws LENGTH_MISMATCH.
markov::StateIndex propulsion_state_from_symptom(const PropulsionParams& params,
                                                 std::span<const MotorStatus> motors);

/// Same, using the reading's configuration with default tolerable losses.
markov::StateIndex propulsion_state_from_symptom(const SymptomReading& reading);

}  // namespace uavrel::models
