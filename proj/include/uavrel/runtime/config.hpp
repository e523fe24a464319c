#pragma once

#include <filesystem>
#include <map>
#include <string_view>
#include <vector>

#include "uavrel/fta/fault_tree.hpp"
#include "uavrel/models/battery.hpp"
#include "uavrel/models/processor.hpp"
#include "uavrel/models/symptoms.hpp"

namespace uavrel::runtime {

struct PropulsionConfig {
  double motor_failure_rate = 0.001;  ///< 1/hour, per motor
  /// Replaces default_tolerable_losses for the listed configurations.
  std::map<models::MotorConfiguration, std::vector<std::size_t>> tolerable_single_losses;
};

struct MissionConfig {
  double threshold = 0.9;
  double sample_period_s = 1.0;
  /// Forward window over which leaf failure probabilities are evaluated.
  double evaluation_horizon_h = 150.0;
  /// Converts telemetry seconds into model hours.
  double hours_per_second = 1.0 / 3600.0;
  /// Empty selects the built-in three-component tree.
  std::filesystem::path tree_path;

  PropulsionConfig propulsion;
  models::BatteryParams battery;
  models::ProcessorParams processor;

  bool compute_system_mttf = true;
  fta::SystemMttfOptions system_mttf;
};

/// Throws INVALID_ARGUMENT on out-of-range fields.
void validate(const MissionConfig& config);

/**
 * Reads a JSON mission config. Every key is optional and falls back to the
 * MissionConfig default:
 *
 *   {
 *     "threshold": 0.9, "sample_period_s": 1, "evaluation_horizon_h": 150,
 *     "hours_per_second": 0.000277..., "tree": "../models/uav_small.ft",
 *     "propulsion": {"motor_failure_rate": 0.001,
 *                    "tolerable_single_losses": {"PPNNPN": [0, 1, 2, 3]}},
 *     "battery": {"failure_rate": ..., "degradation_rate": ...,
 *                 "usage_rate": ..., "inactivity_rate": ...},
 *     "processor": {"mttf_ref_h": ..., "activation_energy_ev": ...,
 *                   "boltzmann_ev_per_k": ..., "ref_temperature_c": ...,
 *                   "utilization": ...},
 *     "system_mttf": {"enabled": true, "step_h": 0.5, "cap_h": 1e6,
 *                     "survival_cutoff": 1e-6}
 *   }
 *
 * A relative tree path is resolved against `base_dir`. Unknown keys are
 * rejected with PARSE_ERROR.
 */
MissionConfig parse_mission_config(std::string_view json, const std::filesystem::path& base_dir);
MissionConfig load_mission_config(const std::filesystem::path& path);

/// The small UAV tree: battery, propulsion and processor under one OR gate.
extern const std::string_view kDefaultTreeDocument;

/// Loads config.tree_path, or parses kDefaultTreeDocument when it is empty.
fta::FaultTree load_tree(const MissionConfig& config);

}  // namespace uavrel::runtime
