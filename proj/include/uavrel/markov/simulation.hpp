#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "uavrel/markov/model.hpp"

namespace uavrel::markov {

struct SimulationOptions {
  std::size_t paths = 100000;
  std::uint64_t seed = 0;
  /// Paths still operational at the horizon are censored.
  double horizon = std::numeric_limits<double>::infinity();
  /// Times (hours) at which state occupancy is estimated.
  std::vector<double> occupancy_times;
};

struct SimulationResult {
  /// Absorption time per path; +infinity when censored at the horizon.
  std::vector<double> absorption_times;
  /// Empirical state distribution at each requested occupancy time.
  std::vector<StateDistribution> occupancy;
  std::size_t censored = 0;

  /// Mean and standard error over uncensored paths. INVALID_ARGUMENT if
  /// any path was censored, since the mean would be biased.
  double mean_absorption_time() const;
  double standard_error() const;
};

/**
 * Seeded Monte Carlo trajectories of either model kind.
 *
 * Path k draws from its own mt19937_64 seeded by a SplitMix64 hash of
 * (seed, k), and all variates go through explicit inverse-CDF transforms, so
 * results are bit-identical for a given seed regardless of how paths are
 * scheduled.
 */
SimulationResult simulate_paths(const MarkovModel& model, const StateDistribution& p0,
                                const SimulationOptions& options);

/// SplitMix64 finaliser, exposed for seed derivation elsewhere.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace uavrel::markov
