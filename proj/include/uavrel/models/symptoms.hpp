#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uavrel::models {

/// Multirotor propulsion layouts by rotor spin direction (P clockwise,
/// N anticlockwise), read around the frame.
enum class MotorConfiguration { kPNPN, kPNPNPN, kPPNNPN };

/// Throws UNKNOWN_CONFIGURATION.
MotorConfiguration parse_configuration(std::string_view tag);
std::string_view to_string(MotorConfiguration configuration) noexcept;
std::size_t motor_count(MotorConfiguration configuration) noexcept;

enum class MotorStatus { kOk, kFailed };

/// Parses an `O`/`F` status string such as "OOFO". Throws INVALID_ARGUMENT.
std::vector<MotorStatus> parse_motor_status(std::string_view text);
std::string format_motor_status(const std::vector<MotorStatus>& status);

enum class Activity { kActive, kInactive };

/// Accepts "active" or "inactive". Throws INVALID_ARGUMENT.
Activity parse_activity(std::string_view text);
std::string_view to_string(Activity activity) noexcept;

/// Observable symptoms at one instant.
struct SymptomReading {
  std::vector<MotorStatus> motor_status;
  double battery_level = 100.0;   ///< percent
  double processor_temp = 29.0;   ///< degrees Celsius
  MotorConfiguration configuration = MotorConfiguration::kPNPN;
  Activity activity = Activity::kActive;

  bool operator==(const SymptomReading&) const = default;
};

/// Throws LENGTH_MISMATCH or OUT_OF_RANGE when the reading is inconsistent.
void validate(const SymptomReading& reading);

}  // namespace uavrel::models
