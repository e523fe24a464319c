#include "uavrel/models/propulsion.hpp"

#include <algorithm>
#include <cmath>

#include "uavrel/error.hpp"

namespace uavrel::models {

namespace {

std::vector<std::size_t> tolerable_set(const PropulsionParams& params) {
  auto set = params.tolerable_single_losses.value_or(default_tolerable_losses(params.configuration));
  const std::size_t n = motor_count(params.configuration);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  for (std::size_t pos : set) {
    if (pos >= n) {
      throw Error(ErrorCode::kOutOfRange, "tolerable motor position " + std::to_string(pos) +
                                              " outside a " + std::to_string(n) + "-motor frame");
    }
  }
  return set;
}

}  // namespace

std::vector<std::size_t> default_tolerable_losses(MotorConfiguration configuration) {
  switch (configuration) {
    case MotorConfiguration::kPNPN: return {};
    case MotorConfiguration::kPNPNPN: return {0, 1, 2, 3, 4, 5};
    case MotorConfiguration::kPPNNPN: return {0, 1, 2, 3};
  }
  return {};
}

markov::MarkovModel build_propulsion_model(const PropulsionParams& params) {
  const double lambda = params.motor_failure_rate;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorCode::kNegativeRate, "motor failure rate must be positive");
  }
  const auto n = static_cast<double>(motor_count(params.configuration));
  const auto k = static_cast<double>(tolerable_set(params).size());

  const std::vector<std::string> absorbing = {"Failure"};
  if (k == 0.0) {
    const std::vector<markov::RateTransition> tr = {{"AllOk", "Failure", n * lambda}};
    return markov::build_markov_model({"AllOk", "Failure"}, tr, absorbing);
  }
  std::vector<markov::RateTransition> tr = {{"AllOk", "OneOut", k * lambda},
                                            {"OneOut", "Failure", (n - 1.0) * lambda}};
  if (k < n) tr.push_back({"AllOk", "Failure", (n - k) * lambda});
  return markov::build_markov_model({"AllOk", "OneOut", "Failure"}, tr, absorbing);
}

markov::StateIndex propulsion_state_from_symptom(const PropulsionParams& params,
                                                 std::span<const MotorStatus> motors) {
  const std::size_t n = motor_count(params.configuration);
  if (motors.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "expected " + std::to_string(n) + " motor readings for " +
                    std::string(to_string(params.configuration)) + ", got " +
                    std::to_string(motors.size()));
  }
  const auto tolerable = tolerable_set(params);
  const markov::StateIndex failure = tolerable.empty() ? 1 : 2;

  std::vector<std::size_t> failed;
  for (std::size_t i = 0; i < n; ++i) {
    if (motors[i] == MotorStatus::kFailed) failed.push_back(i);
  }
  if (failed.empty()) return 0;
  if (failed.size() == 1 &&
      std::binary_search(tolerable.begin(), tolerable.end(), failed.front())) {
    return 1;
  }
  return failure;
}

markov::StateIndex propulsion_state_from_symptom(const SymptomReading& reading) {
  PropulsionParams params;
  params.configuration = reading.configuration;
  return propulsion_state_from_symptom(params, reading.motor_status);
}

}  // namespace uavrel::models
