#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uavrel/fta/fault_tree.hpp"
#include "uavrel/runtime/config.hpp"
#include "uavrel/runtime/telemetry.hpp"

namespace uavrel::runtime {

enum class Recommendation { kContinue, kEmergencyLanding };

std::string_view to_string(Recommendation recommendation) noexcept;

/// EMERGENCY_LANDING iff probability > threshold.
Recommendation decide(double probability, double threshold);

struct ComponentResult {
  std::string leaf_id;
  double probability = 0.0;
  double mttf_h = 0.0;  ///< +infinity for a leaf that cannot fail
};

struct EvaluationResult {
  double time_s = 0.0;
  /// One entry per tree leaf, in tree.leaves() order.
  std::vector<ComponentResult> components;
  double system_probability = 0.0;
  /// NaN when system MTTF is disabled in the config.
  double system_mttf_h = 0.0;
  bool system_mttf_capped = false;
  /// Empty once the mission has been aborted.
  std::optional<Recommendation> recommendation;

  /// Throws INVALID_ARGUMENT for an unknown leaf id.
  const ComponentResult& component(std::string_view leaf_id) const;
};

/**
 * Runtime evaluation loop for one mission. Each sample is mapped onto the
 * leaf models of the tree:
 *
 * - battery: band from the charge level, absorption probability within the
 *   evaluation horizon;
 * - propulsion: state from the motor status, absorption probability within
 *   the horizon;
 * - processor: accumulated Arrhenius hazard of the temperature history, each
 *   reading held until the next one;
 * - constant-rate event: 1 - exp(-rate * horizon);
 * - inline Markov model: absorption within the horizon from its first state.
 *
 * A leaf that reaches an absorbing state stays failed for the rest of the
 * mission. After the first EMERGENCY_LANDING no further recommendations are
 * issued, but probabilities are still computed.
 */
class Engine {
 public:
  explicit Engine(MissionConfig config);
  Engine(MissionConfig config, fta::FaultTree tree);
  ~Engine();
  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;

  /// Throws OUT_OF_ORDER_SAMPLE unless time_s exceeds the previous sample's.
  EvaluationResult evaluate_sample(const TelemetrySample& sample);

  const fta::FaultTree& tree() const noexcept;
  const MissionConfig& config() const noexcept;
  std::optional<double> aborted_at() const noexcept;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct Verdict {
  /// Time of the first EMERGENCY_LANDING, seconds; empty when completed.
  std::optional<double> aborted_at_s;

  bool completed() const noexcept { return !aborted_at_s; }
};

/// "COMPLETED" or "ABORTED_AT <t>s".
std::string format_verdict(const Verdict& verdict);

struct ReplayResult {
  std::vector<EvaluationResult> results;
  Verdict verdict;
};

/// Feeds every sample through a fresh engine. Throws EMPTY_STREAM.
ReplayResult replay(std::span<const TelemetrySample> stream, const MissionConfig& config);
ReplayResult replay(std::span<const TelemetrySample> stream, const MissionConfig& config,
                    const fta::FaultTree& tree);

}  // namespace uavrel::runtime
