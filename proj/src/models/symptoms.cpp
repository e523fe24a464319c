#include "uavrel/models/symptoms.hpp"

#include <cmath>

#include "uavrel/error.hpp"
#include "uavrel/models/processor.hpp"

namespace uavrel::models {

MotorConfiguration parse_configuration(std::string_view tag) {
  if (tag == "PNPN") return MotorConfiguration::kPNPN;
  if (tag == "PNPNPN") return MotorConfiguration::kPNPNPN;
  if (tag == "PPNNPN") return MotorConfiguration::kPPNNPN;
  throw Error(ErrorCode::kUnknownConfiguration,
              "unknown motor configuration '" + std::string(tag) + "'");
}

std::string_view to_string(MotorConfiguration configuration) noexcept {
  switch (configuration) {
    case MotorConfiguration::kPNPN: return "PNPN";
    case MotorConfiguration::kPNPNPN: return "PNPNPN";
    case MotorConfiguration::kPPNNPN: return "PPNNPN";
  }
  return "?";
}

std::size_t motor_count(MotorConfiguration configuration) noexcept {
  return to_string(configuration).size();
}

std::vector<MotorStatus> parse_motor_status(std::string_view text) {
  std::vector<MotorStatus> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == 'O') {
      out.push_back(MotorStatus::kOk);
    } else if (c == 'F') {
      out.push_back(MotorStatus::kFailed);
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "motor status must be a string of O/F, got '" + std::string(text) + "'");
    }
  }
  return out;
}

std::string format_motor_status(const std::vector<MotorStatus>& status) {
  std::string out;
  out.reserve(status.size());
  for (auto s : status) out.push_back(s == MotorStatus::kOk ? 'O' : 'F');
  return out;
}

Activity parse_activity(std::string_view text) {
  if (text == "active") return Activity::kActive;
  if (text == "inactive") return Activity::kInactive;
  throw Error(ErrorCode::kInvalidArgument,
              "activity must be 'active' or 'inactive', got '" + std::string(text) + "'");
}

std::string_view to_string(Activity activity) noexcept {
  return activity == Activity::kActive ? "active" : "inactive";
}

void validate(const SymptomReading& reading) {
  if (reading.motor_status.size() != motor_count(reading.configuration)) {
    throw Error(ErrorCode::kLengthMismatch,
                "motor status has " + std::to_string(reading.motor_status.size()) +
                    " entries but " + std::string(to_string(reading.configuration)) + " has " +
                    std::to_string(motor_count(reading.configuration)) + " motors");
  }
  if (!(reading.battery_level >= 0.0 && reading.battery_level <= 100.0)) {
    throw Error(ErrorCode::kOutOfRange, "battery level outside [0, 100]");
  }
  if (!std::isfinite(reading.processor_temp) || reading.processor_temp <= kAbsoluteZeroCelsius) {
    throw Error(ErrorCode::kNonphysicalTemperature, "processor temperature is not physical");
  }
}

}  // namespace uavrel::models
