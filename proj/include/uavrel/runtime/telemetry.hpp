#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "uavrel/models/symptoms.hpp"

namespace uavrel::runtime {

struct TelemetrySample {
  double time_s = 0.0;  ///< seconds since mission start
  models::SymptomReading reading;

  bool operator==(const TelemetrySample&) const = default;
};

inline constexpr std::string_view kTelemetryHeader =
    "time_s,battery_pct,temp_c,motor_status,config,activity";

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// Writes the header and one row per sample.
void write_telemetry_csv(std::ostream& out, std::span<const TelemetrySample> samples);
void save_telemetry_csv(const std::filesystem::path& path, std::span<const TelemetrySample> samples);

/// Parses a telemetry CSV. Rows are validated individually (PARSE_ERROR with
/// the row number, or the symptom validation error); ordering is checked by
/// the engine, not here.
std::vector<TelemetrySample> read_telemetry_csv(std::istream& in);
std::vector<TelemetrySample> load_telemetry_csv(const std::filesystem::path& path);

}  // namespace uavrel::runtime
