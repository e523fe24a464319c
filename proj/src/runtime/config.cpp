#include "uavrel/runtime/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "uavrel/error.hpp"

namespace uavrel::runtime {

const std::string_view kDefaultTreeDocument =
    "cbe battery model=battery symptoms=battery_pct,activity label=Battery\n"
    "cbe propulsion model=propulsion symptoms=motor_status,config label=Propulsion\n"
    "cbe processor model=processor symptoms=temp_c label=Processor\n"
    "gate uav_failure OR children=battery,propulsion,processor label=\"UAV failure\"\n"
    "top uav_failure\n";

namespace {

using json = nlohmann::json;
using Handlers = std::map<std::string, std::function<void(const json&)>, std::less<>>;

void walk(const json& object, std::string_view where, const Handlers& handlers) {
  if (!object.is_object()) {
    throw Error(ErrorCode::kParseError, std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : object.items()) {
    auto it = handlers.find(key);
    if (it == handlers.end()) {
      throw Error(ErrorCode::kParseError,
                  "unknown key '" + key + "' in " + std::string(where));
    }
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError, std::string(where) + "." + key + ": " + e.what());
    }
  }
}

auto number(double& target) {
  return [&target](const json& v) {
    if (!v.is_number()) throw Error(ErrorCode::kParseError, "expected a number");
    target = v.get<double>();
  };
}

void require(bool ok, const char* message) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, message);
}

}  // namespace

void validate(const MissionConfig& c) {
  require(c.threshold > 0.0 && c.threshold < 1.0, "threshold must lie in (0, 1)");
  require(c.sample_period_s > 0.0, "sample_period_s must be positive");
  require(c.evaluation_horizon_h > 0.0 && std::isfinite(c.evaluation_horizon_h),
          "evaluation_horizon_h must be positive");
  require(c.hours_per_second > 0.0 && std::isfinite(c.hours_per_second),
          "hours_per_second must be positive");
  require(c.propulsion.motor_failure_rate > 0.0, "propulsion.motor_failure_rate must be positive");
  for (const auto& [configuration, positions] : c.propulsion.tolerable_single_losses) {
    for (std::size_t p : positions) {
      require(p < models::motor_count(configuration), "tolerable loss position out of range");
    }
  }
  require(c.battery.failure_rate > 0.0 && c.battery.degradation_rate >= 0.0 &&
              c.battery.usage_rate >= 0.0 && c.battery.inactivity_rate >= 0.0,
          "battery rates must be non-negative with a positive failure rate");
  models::validate(c.processor);
  require(c.system_mttf.step_h > 0.0 && c.system_mttf.cap_h > 0.0 &&
              c.system_mttf.survival_cutoff > 0.0 && c.system_mttf.survival_cutoff < 1.0,
          "system_mttf options out of range");
}

MissionConfig parse_mission_config(std::string_view text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("mission config: ") + e.what());
  }

  MissionConfig c;
  auto& prop = c.propulsion;
  auto& bat = c.battery;
  auto& proc = c.processor;
  auto& sys = c.system_mttf;
  walk(doc, "config",
       {{"threshold", number(c.threshold)},
        {"sample_period_s", number(c.sample_period_s)},
        {"evaluation_horizon_h", number(c.evaluation_horizon_h)},
        {"hours_per_second", number(c.hours_per_second)},
        {"tree",
         [&](const json& v) {
           std::filesystem::path p = v.get<std::string>();
           c.tree_path = p.is_relative() ? base_dir / p : p;
         }},
        {"propulsion",
         [&](const json& v) {
           walk(v, "propulsion",
                {{"motor_failure_rate", number(prop.motor_failure_rate)},
                 {"tolerable_single_losses", [&](const json& sets) {
                    for (const auto& [tag, positions] : sets.items()) {
                      prop.tolerable_single_losses[models::parse_configuration(tag)] =
                          positions.get<std::vector<std::size_t>>();
                    }
                  }}});
         }},
        {"battery",
         [&](const json& v) {
           walk(v, "battery",
                {{"failure_rate", number(bat.failure_rate)},
                 {"degradation_rate", number(bat.degradation_rate)},
                 {"usage_rate", number(bat.usage_rate)},
                 {"inactivity_rate", number(bat.inactivity_rate)}});
         }},
        {"processor",
         [&](const json& v) {
           walk(v, "processor",
                {{"mttf_ref_h", number(proc.mttf_ref_h)},
                 {"activation_energy_ev", number(proc.activation_energy_ev)},
                 {"boltzmann_ev_per_k", number(proc.boltzmann_ev_per_k)},
                 {"ref_temperature_c", number(proc.ref_temperature_c)},
                 {"utilization", number(proc.utilization)}});
         }},
        {"system_mttf", [&](const json& v) {
           walk(v, "system_mttf",
                {{"enabled", [&](const json& e) { c.compute_system_mttf = e.get<bool>(); }},
                 {"step_h", number(sys.step_h)},
                 {"cap_h", number(sys.cap_h)},
                 {"survival_cutoff", number(sys.survival_cutoff)}});
         }}});
  validate(c);
  return c;
}

MissionConfig load_mission_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_mission_config(buffer.str(), path.parent_path());
}

fta::FaultTree load_tree(const MissionConfig& config) {
  if (config.tree_path.empty()) return fta::parse_fault_tree(kDefaultTreeDocument);
  return fta::load_fault_tree(config.tree_path);
}

}  // namespace uavrel::runtime
