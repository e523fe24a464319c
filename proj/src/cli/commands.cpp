#include "uavrel/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include "uavrel/error.hpp"
#include "uavrel/markov/absorbing.hpp"
#include "uavrel/markov/transient.hpp"
#include "uavrel/models/battery.hpp"
#include "uavrel/models/processor.hpp"
#include "uavrel/models/propulsion.hpp"
#include "uavrel/runtime/config.hpp"
#include "uavrel/runtime/engine.hpp"
#include "uavrel/runtime/results.hpp"

namespace uavrel::cli {

namespace {

using runtime::format_double;
using KeyValues = std::vector<std::pair<std::string, std::string>>;

template <typename T>
const T& need(const std::optional<T>& value, const char* flag) {
  if (!value) throw Error(ErrorCode::kMissingParameter, std::string("missing parameter ") + flag);
  return *value;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  return out;
}

// Absorption probability within `horizon_h` and MTTF from `start`.
void markov_answer(KeyValues& kv, const QueryCommand& c, const markov::MarkovModel& model,
                   markov::StateIndex start) {
  kv.emplace_back("state", model.label(start));
  if (c.quantity == "mttf") {
    kv.emplace_back("mttf_h", format_double(markov::mttf_from_state(model, start)));
  } else {
    const double h = need(c.horizon_h, "--horizon");
    const auto p0 = markov::StateDistribution::point_mass(model.size(), start);
    kv.emplace_back("horizon_h", format_double(h));
    kv.emplace_back("probability", format_double(markov::absorbed_probability(
                                       model, markov::transient_distribution(model, p0, h))));
  }
}

}  // namespace

KeyValues query(const QueryCommand& c) {
  if (c.quantity != "mttf" && c.quantity != "prob") {
    throw Error(ErrorCode::kInvalidArgument, "query quantity must be mttf or prob");
  }
  KeyValues kv{{"model", c.model}};
  if (c.model == "propulsion") {
    models::PropulsionParams params;
    params.configuration = models::parse_configuration(need(c.configuration, "--config"));
    params.motor_failure_rate = c.lambda.value_or(params.motor_failure_rate);
    const auto motors = c.motors ? models::parse_motor_status(*c.motors)
                                 : std::vector<models::MotorStatus>(
                                       models::motor_count(params.configuration), models::MotorStatus::kOk);
    kv.emplace_back("config", std::string(models::to_string(params.configuration)));
    const auto model = models::build_propulsion_model(params);
    markov_answer(kv, c, model, models::propulsion_state_from_symptom(params, motors));
  } else if (c.model == "battery") {
    const auto activity = models::parse_activity(c.activity.value_or("active"));
    const auto model = models::build_battery_model(models::BatteryParams{}, activity);
    markov_answer(kv, c, model, models::battery_state_from_level(need(c.level, "--level")));
  } else if (c.model == "processor") {
    models::ProcessorParams params;
    params.mttf_ref_h = c.mttf_ref_h.value_or(params.mttf_ref_h);
    params.ref_temperature_c = c.tr_c.value_or(params.ref_temperature_c);
    params.activation_energy_ev = c.ea_ev.value_or(params.activation_energy_ev);
    models::validate(params);
    const double ta = need(c.ta_c, "--ta");
    kv.emplace_back("acceleration_factor", format_double(models::arrhenius_acceleration(ta, params)));
    if (c.quantity == "mttf") {
      kv.emplace_back("mttf_h", format_double(models::processor_mttf(params, ta)));
    } else {
      const models::TemperatureSegment segment{need(c.horizon_h, "--horizon"), ta};
      kv.emplace_back("horizon_h", format_double(segment.duration_h));
      kv.emplace_back("probability",
                      format_double(models::processor_failure_probability(std::span(&segment, 1), params)));
    }
  } else if (c.model == "event") {
    const double rate = need(c.rate, "--rate");
    if (!(rate >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "rate must be non-negative");
    if (c.quantity == "mttf") {
      kv.emplace_back("mttf_h", format_double(rate > 0.0 ? 1.0 / rate : INFINITY));
    } else {
      const double h = need(c.horizon_h, "--horizon");
      kv.emplace_back("horizon_h", format_double(h));
      kv.emplace_back("probability", format_double(-std::expm1(-rate * h)));
    }
  } else {
    throw Error(ErrorCode::kUnknownModel, "unknown model '" + c.model +
                                              "' (expected propulsion, battery, processor or event)");
  }
  return kv;
}

int run_query(const QueryCommand& command, std::ostream& out, std::ostream& err) {
  try {
    for (const auto& [key, value] : query(command)) out << key << '=' << value << '\n';
    return kExitCompleted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_replay(const ReplayCommand& command, std::ostream& out, std::ostream& err) {
  try {
    auto config = command.config ? runtime::load_mission_config(*command.config)
                                 : runtime::MissionConfig{};
    if (command.threshold) {
      config.threshold = *command.threshold;
      runtime::validate(config);
    }
    const auto stream = runtime::load_telemetry_csv(command.telemetry);
    const auto replayed = runtime::replay(stream, config);
    if (command.results_csv) {
      auto file = open_output(*command.results_csv);
      runtime::write_results_csv(file, replayed.results);
    }
    if (command.results_jsonl) {
      auto file = open_output(*command.results_jsonl);
      runtime::write_results_jsonl(file, replayed.results);
    }
    out << runtime::format_verdict(replayed.verdict) << '\n';
    return replayed.verdict.completed() ? kExitCompleted : kExitAborted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int run_scenario(const ScenarioCommand& command, std::ostream& out, std::ostream& err) {
  try {
    const auto samples = scenario::generate_scenario(command.spec, command.seed);
    if (command.output) {
      runtime::save_telemetry_csv(*command.output, samples);
      out << "wrote " << samples.size() << " samples to " << command.output->string() << '\n';
    } else {
      runtime::write_telemetry_csv(out, samples);
    }
    return kExitCompleted;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace uavrel::cli
