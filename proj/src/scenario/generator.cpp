#include "uavrel/scenario/generator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "uavrel/error.hpp"
#include "uavrel/markov/simulation.hpp"

namespace uavrel::scenario {

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(ErrorCode::kInvalidSpec, message);
}

}  // namespace

ScenarioKind parse_kind(std::string_view text) {
  if (text == "fault-free") return ScenarioKind::kFaultFree;
  if (text == "faulty") return ScenarioKind::kFaulty;
  throw Error(ErrorCode::kInvalidSpec, "scenario kind must be fault-free or faulty");
}

std::string_view to_string(ScenarioKind kind) noexcept {
  return kind == ScenarioKind::kFaultFree ? "fault-free" : "faulty";
}

void validate(const ScenarioSpec& s) {
  require(s.duration_s > 0.0 && std::isfinite(s.duration_s), "duration must be positive");
  require(s.sample_period_s > 0.0 && s.sample_period_s <= s.duration_s,
          "sample period must lie in (0, duration]");
  require(s.battery_fault_at_s > 0.0, "battery fault time X must be positive");
  require(s.start_pct <= 100.0 && s.drop_from_pct <= s.start_pct && s.drop_to_pct >= 0.0 &&
              s.drop_to_pct < s.drop_from_pct,
          "battery levels need 100 >= start >= drop_from > drop_to >= 0");
  require(s.post_fault_drain_pct_per_s >= 0.0, "post-fault drain must be non-negative");
  require(s.temp_noise_c >= 0.0 && s.temp_rise_tau_s > 0.0 && s.overheat_tau_s > 0.0,
          "temperature profile needs non-negative noise and positive time constants");
  if (s.kind == ScenarioKind::kFaulty) {
    require(s.overheat_at_s > s.battery_fault_at_s,
            "overheat time Y must be later than battery fault time X");
    require(s.overheat_at_s < s.duration_s, "overheat time Y must fall inside the mission");
    require(s.overheat_target_c > s.temp_base_c + s.temp_rise_c + s.temp_noise_c,
            "overheat target must lie above the nominal temperature envelope");
  }
}

std::vector<runtime::TelemetrySample> generate_scenario(const ScenarioSpec& s, std::uint64_t seed) {
  validate(s);
  const bool faulty = s.kind == ScenarioKind::kFaulty;
  const double drain = (s.start_pct - s.drop_from_pct) / s.battery_fault_at_s;
  auto envelope = [&](double t) {
    return s.temp_base_c + s.temp_rise_c * (1.0 - std::exp(-t / s.temp_rise_tau_s));
  };
  const double ramp_start = envelope(s.overheat_at_s) + s.temp_noise_c;

  std::mt19937_64 rng(markov::splitmix64(seed));
  std::vector<runtime::TelemetrySample> out;
  const auto motors = std::vector<models::MotorStatus>(models::motor_count(s.configuration),
                                                      models::MotorStatus::kOk);
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * s.sample_period_s;
    if (t >= s.duration_s) break;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double noise = s.temp_noise_c * (2.0 * u - 1.0);

    double level = s.start_pct - drain * t;
    double temp = envelope(t) + noise;
    if (faulty && t >= s.battery_fault_at_s) {
      level = s.drop_to_pct - s.post_fault_drain_pct_per_s * (t - s.battery_fault_at_s);
    }
    if (faulty && t >= s.overheat_at_s) {
      temp = s.overheat_target_c -
             (s.overheat_target_c - ramp_start) * std::exp(-(t - s.overheat_at_s) / s.overheat_tau_s);
    }

    runtime::TelemetrySample sample;
    sample.time_s = t;
    sample.reading.battery_level = std::max(0.0, round2(level));
    sample.reading.processor_temp = round2(temp);
    sample.reading.motor_status = motors;
    sample.reading.configuration = s.configuration;
    sample.reading.activity = models::Activity::kActive;
    out.push_back(std::move(sample));
  }
  return out;
}

}  // namespace uavrel::scenario
