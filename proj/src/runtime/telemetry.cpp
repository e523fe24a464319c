#include "uavrel/runtime/telemetry.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "uavrel/error.hpp"

namespace uavrel::runtime {

namespace {

[[noreturn]] void row_error(std::size_t row, const std::string& message) {
  throw Error(ErrorCode::kParseError, "telemetry row " + std::to_string(row) + ": " + message);
}

double parse_field(std::string_view text, std::size_t row, std::string_view name) {
  double value = 0.0;
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    row_error(row, std::string(name) + " is not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  (void)ec;
  return std::string(buffer.data(), ptr);
}

void write_telemetry_csv(std::ostream& out, std::span<const TelemetrySample> samples) {
  out << kTelemetryHeader << '\n';
  for (const auto& s : samples) {
    const auto& r = s.reading;
    out << format_double(s.time_s) << ',' << format_double(r.battery_level) << ','
        << format_double(r.processor_temp) << ',' << models::format_motor_status(r.motor_status)
        << ',' << models::to_string(r.configuration) << ',' << models::to_string(r.activity)
        << '\n';
  }
}

void save_telemetry_csv(const std::filesystem::path& path, std::span<const TelemetrySample> samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  write_telemetry_csv(out, samples);
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

std::vector<TelemetrySample> read_telemetry_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kTelemetryHeader) {
    throw Error(ErrorCode::kParseError,
                "telemetry header must be '" + std::string(kTelemetryHeader) + "'");
  }
  std::vector<TelemetrySample> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    std::array<std::string_view, 6> fields;
    std::size_t count = 0;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = text.find(',', start);
      if (count == fields.size()) row_error(row, "expected 6 fields");
      fields[count++] = trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (count != fields.size()) row_error(row, "expected 6 fields, got " + std::to_string(count));

    TelemetrySample s;
    s.time_s = parse_field(fields[0], row, "time_s");
    if (s.time_s < 0.0) row_error(row, "time_s is negative");
    s.reading.battery_level = parse_field(fields[1], row, "battery_pct");
    s.reading.processor_temp = parse_field(fields[2], row, "temp_c");
    try {
      s.reading.motor_status = models::parse_motor_status(fields[3]);
      s.reading.configuration = models::parse_configuration(fields[4]);
      s.reading.activity = models::parse_activity(fields[5]);
      models::validate(s.reading);
    } catch (const Error& e) {
      throw Error(e.code(), "telemetry row " + std::to_string(row) + ": " + e.what());
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TelemetrySample> load_telemetry_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return read_telemetry_csv(in);
}

}  // namespace uavrel::runtime
