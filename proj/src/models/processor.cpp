#include "uavrel/models/processor.hpp"

#include <cmath>

#include "uavrel/error.hpp"

namespace uavrel::models {

void validate(const ProcessorParams& params) {
  if (!(params.mttf_ref_h > 0.0) || !(params.activation_energy_ev > 0.0) ||
      !(params.boltzmann_ev_per_k > 0.0) || !(params.ref_temperature_c > kAbsoluteZeroCelsius)) {
    throw Error(ErrorCode::kInvalidArgument,
                "processor parameters need MTTF_ref > 0, Ea > 0, k > 0, Tr above absolute zero");
  }
}

double arrhenius_acceleration(double ta_c, const ProcessorParams& params) {
  validate(params);
  if (!(ta_c > kAbsoluteZeroCelsius) || !std::isfinite(ta_c)) {
    throw Error(ErrorCode::kNonphysicalTemperature,
                "temperature " + std::to_string(ta_c) + " C is at or below absolute zero");
  }
  if (ta_c == params.ref_temperature_c) return 1.0;
  const double tr_k = params.ref_temperature_c - kAbsoluteZeroCelsius;
  const double ta_k = ta_c - kAbsoluteZeroCelsius;
  return std::exp(params.activation_energy_ev / params.boltzmann_ev_per_k *
                  (1.0 / tr_k - 1.0 / ta_k));
}

double processor_mttf(const ProcessorParams& params, double ta_c) {
  return params.mttf_ref_h / arrhenius_acceleration(ta_c, params);
}

double processor_hazard(std::span<const TemperatureSegment> history,
                        const ProcessorParams& params) {
  double hazard = 0.0;
  for (const auto& seg : history) {
    if (!(seg.duration_h >= 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "history durations must be non-negative");
    }
    if (seg.duration_h == 0.0) continue;
    hazard += seg.duration_h / processor_mttf(params, seg.temperature_c);
  }
  return hazard;
}

double processor_failure_probability(std::span<const TemperatureSegment> history,
                                     const ProcessorParams& params) {
  return -std::expm1(-processor_hazard(history, params));
}

}  // namespace uavrel::models
