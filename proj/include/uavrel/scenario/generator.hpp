#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "uavrel/models/symptoms.hpp"
#include "uavrel/runtime/telemetry.hpp"

namespace uavrel::scenario {

enum class ScenarioKind { kFaultFree, kFaulty };

/// Accepts "fault-free" or "faulty". Throws INVALID_SPEC.
ScenarioKind parse_kind(std::string_view text);
std::string_view to_string(ScenarioKind kind) noexcept;

/**
 * Synthetic inspection-flight telemetry.
 *
 * Battery drains linearly from `start_pct` at the rate that reaches
 * `drop_from_pct` at the fault time, so both kinds agree up to the fault.
 * In the faulty kind the level steps to `drop_to_pct` at the fault time and
 * then drains at `post_fault_drain_pct_per_s`.
 *
 * Temperature follows base + rise * (1 - exp(-t / rise_tau)) plus uniform
 * noise of +/- noise_c. From the overheat time the faulty kind replaces it
 * with a noise-free ramp that starts at the top of the noise envelope and
 * approaches `overheat_target_c` with time constant `overheat_tau_s`.
 */
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kFaultFree;
  double duration_s = 750.0;
  double sample_period_s = 1.0;

  double battery_fault_at_s = 250.0;
  double overheat_at_s = 400.0;

  double start_pct = 100.0;
  double drop_from_pct = 80.0;
  double drop_to_pct = 40.0;
  double post_fault_drain_pct_per_s = 0.06;

  double temp_base_c = 29.0;
  double temp_rise_c = 6.0;
  double temp_rise_tau_s = 120.0;
  double temp_noise_c = 0.5;
  double overheat_target_c = 95.0;
  double overheat_tau_s = 150.0;

  models::MotorConfiguration configuration = models::MotorConfiguration::kPNPN;
};

/// Throws INVALID_SPEC; for the faulty kind requires 0 < X < Y < duration.
void validate(const ScenarioSpec& spec);

/// One sample per period from t = 0 while t < duration. Values are rounded
/// to 0.01; the same seed gives the same noise for both kinds.
std::vector<runtime::TelemetrySample> generate_scenario(const ScenarioSpec& spec, std::uint64_t seed);

}  // namespace uavrel::scenario
