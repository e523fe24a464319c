#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uavrel/scenario/generator.hpp"

namespace uavrel::cli {

inline constexpr int kExitCompleted = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitAborted = 2;

struct ReplayCommand {
  std::filesystem::path telemetry;
  /// Mission config JSON; defaults apply when absent.
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> results_csv;
  std::optional<std::filesystem::path> results_jsonl;
  std::optional<double> threshold;
};

/// Prints the verdict line to `out`, diagnostics to `err`. Returns
/// kExitCompleted, kExitAborted or kExitError.
int run_replay(const ReplayCommand& command, std::ostream& out, std::ostream& err);

struct ScenarioCommand {
  scenario::ScenarioSpec spec;
  std::uint64_t seed = 1;
  /// Telemetry CSV destination; written to `out` when absent.
  std::optional<std::filesystem::path> output;
};

int run_scenario(const ScenarioCommand& command, std::ostream& out, std::ostream& err);

struct QueryCommand {
  std::string quantity;  ///< mttf | prob
  std::string model;     ///< propulsion | battery | processor | event
  std::optional<std::string> configuration;
  std::optional<std::string> motors;
  std::optional<double> lambda;
  std::optional<double> level;
  std::optional<std::string> activity;
  std::optional<double> horizon_h;
  std::optional<double> ta_c;
  std::optional<double> mttf_ref_h;
  std::optional<double> tr_c;
  std::optional<double> ea_ev;
  std::optional<double> rate;
};

/// key=value pairs for one model query. Throws UNKNOWN_MODEL,
/// MISSING_PARAMETER or the model's own errors.
std::vector<std::pair<std::string, std::string>> query(const QueryCommand& command);

int run_query(const QueryCommand& command, std::ostream& out, std::ostream& err);

}  // namespace uavrel::cli
