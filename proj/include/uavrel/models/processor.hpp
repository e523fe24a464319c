#pragma once

#include <span>

namespace uavrel::models {

inline constexpr double kAbsoluteZeroCelsius = -273.15;

/// Arrhenius parameters for the onboard processor. Utilization is carried
/// for configuration completeness and does not enter the model.
struct ProcessorParams {
  double mttf_ref_h = 1000.0;
  double activation_energy_ev = 0.3;
  double boltzmann_ev_per_k = 8.617e-5;
  double ref_temperature_c = 29.0;
  double utilization = 1.0;
};

/// Throws INVALID_ARGUMENT if a parameter is out of its physical range.
void validate(const ProcessorParams& params);

/// AF = exp(Ea/k * (1/Tr - 1/Ta)) with both temperatures in Kelvin.
/// Throws NONPHYSICAL_TEMPERATURE for Ta at or below absolute zero.
double arrhenius_acceleration(double ta_c, const ProcessorParams& params);

/// MTTF_ref / AF(Ta), hours.
double processor_mttf(const ProcessorParams& params, double ta_c);

struct TemperatureSegment {
  double duration_h;
  double temperature_c;
};

/// Cumulative hazard sum(duration / MTTF(Ta)) of a piecewise-constant
/// temperature history.
double processor_hazard(std::span<const TemperatureSegment> history,
                        const ProcessorParams& params);

/// 1 - exp(-hazard).
double processor_failure_probability(std::span<const TemperatureSegment> history,
                                     const ProcessorParams& params);

}  // namespace uavrel::models
