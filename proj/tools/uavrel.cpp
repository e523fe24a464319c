// uavrel: scenario generation, telemetry replay and single-model queries.

#include <iostream>

#include <CLI11.hpp>

#include "uavrel/cli/commands.hpp"
#include "uavrel/error.hpp"

int main(int argc, char** argv) {
  using namespace uavrel;

  CLI::App app{"Runtime reliability evaluation for multirotor UAVs"};
  app.require_subcommand(1);

  cli::ScenarioCommand scenario;
  std::string kind = "fault-free";
  std::string layout = "PNPN";
  std::string scenario_output;
  auto* scenario_cmd = app.add_subcommand("scenario", "Generate a synthetic telemetry CSV");
  scenario_cmd->add_option("--kind", kind, "fault-free or faulty")->capture_default_str();
  scenario_cmd->add_option("--seed", scenario.seed, "Noise seed")->capture_default_str();
  scenario_cmd->add_option("-o,--out", scenario_output, "Output CSV (stdout when omitted)");
  scenario_cmd->add_option("--duration", scenario.spec.duration_s, "Mission length, s")->capture_default_str();
  scenario_cmd->add_option("--period", scenario.spec.sample_period_s, "Sample period, s")->capture_default_str();
  scenario_cmd->add_option("--battery-fault-at", scenario.spec.battery_fault_at_s, "Battery fault time X, s")
      ->capture_default_str();
  scenario_cmd->add_option("--overheat-at", scenario.spec.overheat_at_s, "Overheat start Y, s")
      ->capture_default_str();
  scenario_cmd->add_option("--drop-from", scenario.spec.drop_from_pct, "Level just before the fault, %")
      ->capture_default_str();
  scenario_cmd->add_option("--drop-to", scenario.spec.drop_to_pct, "Level just after the fault, %")
      ->capture_default_str();
  scenario_cmd->add_option("--noise", scenario.spec.temp_noise_c, "Temperature noise amplitude, C")
      ->capture_default_str();
  scenario_cmd->add_option("--layout", layout, "Motor configuration tag")->capture_default_str();

  cli::ReplayCommand replay;
  auto* replay_cmd = app.add_subcommand("replay", "Evaluate a telemetry CSV and print the verdict");
  replay_cmd->add_option("telemetry", replay.telemetry, "Telemetry CSV")->required();
  replay_cmd->add_option("-c,--config", replay.config, "Mission config JSON");
  replay_cmd->add_option("-o,--out", replay.results_csv, "Per-tick results CSV");
  replay_cmd->add_option("--jsonl", replay.results_jsonl, "Per-tick results as JSON lines");
  replay_cmd->add_option("--threshold", replay.threshold, "Override the recommendation threshold");

  cli::QueryCommand query;
  auto* query_cmd = app.add_subcommand("query", "Print MTTF or failure probability of one model");
  query_cmd->add_option("quantity", query.quantity, "mttf or prob")->required();
  query_cmd->add_option("model", query.model, "propulsion, battery, processor or event")->required();
  query_cmd->add_option("--config", query.configuration, "Propulsion configuration (PNPN, PNPNPN, PPNNPN)");
  query_cmd->add_option("--motors", query.motors, "Motor status string, e.g. OOFO");
  query_cmd->add_option("--lambda", query.lambda, "Per-motor failure rate, 1/h");
  query_cmd->add_option("--level", query.level, "Battery level, %");
  query_cmd->add_option("--activity", query.activity, "active or inactive");
  query_cmd->add_option("--horizon", query.horizon_h, "Probability horizon, h");
  query_cmd->add_option("--ta", query.ta_c, "Processor temperature, C");
  query_cmd->add_option("--ref", query.mttf_ref_h, "Processor MTTF at the reference temperature, h");
  query_cmd->add_option("--tr", query.tr_c, "Reference temperature, C");
  query_cmd->add_option("--ea", query.ea_ev, "Activation energy, eV");
  query_cmd->add_option("--rate", query.rate, "Constant failure rate, 1/h");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  if (*scenario_cmd) {
    try {
      scenario.spec.kind = scenario::parse_kind(kind);
      scenario.spec.configuration = models::parse_configuration(layout);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return cli::kExitError;
    }
    if (!scenario_output.empty()) scenario.output = scenario_output;
    return cli::run_scenario(scenario, std::cout, std::cerr);
  }
  if (*replay_cmd) return cli::run_replay(replay, std::cout, std::cerr);
  return cli::run_query(query, std::cout, std::cerr);
}
