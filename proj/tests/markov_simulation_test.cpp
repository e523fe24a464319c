#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "uavrel/error.hpp"
#include "uavrel/markov/simulation.hpp"
#include "uavrel/markov/transient.hpp"

namespace uavrel::markov {
namespace {

TEST(SimulatePaths, TwoStateMeanAbsorptionTime) {
  SimulationOptions options;
  options.paths = 100000;
  options.seed = 1;
  const auto sim = simulate_paths(testing::two_state(0.001), StateDistribution::point_mass(2, 0),
                                  options);
  EXPECT_EQ(sim.censored, 0u);
  // sigma of the sample mean is 1000 / sqrt(n)
  EXPECT_LE(std::abs(sim.mean_absorption_time() - 1000.0), 3.0 * 1000.0 / std::sqrt(1e5));
}

TEST(SimulatePaths, SameSeedIsBitIdentical) {
  SimulationOptions options;
  options.paths = 2000;
  options.seed = 123;
  options.occupancy_times = {10.0, 100.0};
  const auto model = testing::battery_by_hand();
  const auto p0 = StateDistribution::point_mass(5, 0);
  const auto a = simulate_paths(model, p0, options);
  const auto b = simulate_paths(model, p0, options);
  EXPECT_EQ(a.absorption_times, b.absorption_times);
  for (std::size_t q = 0; q < 2; ++q) EXPECT_EQ(a.occupancy[q].probs, b.occupancy[q].probs);

  options.seed = 124;
  const auto c = simulate_paths(model, p0, options);
  EXPECT_NE(a.absorption_times, c.absorption_times);
}

TEST(SimulatePaths, OccupancyMatchesTransientDistribution) {
  const auto model = testing::battery_by_hand();
  const auto p0 = StateDistribution::point_mass(5, 0);
  SimulationOptions options;
  options.paths = 100000;
  options.seed = 31;
  options.occupancy_times = {100.0};
  const auto sim = simulate_paths(model, p0, options);
  const auto exact = transient_distribution(model, p0, 100.0);
  EXPECT_NEAR(sim.occupancy[0].total(), 1.0, 1e-12);
  for (Eigen::Index s = 0; s < 5; ++s) EXPECT_NEAR(sim.occupancy[0].probs(s), exact.probs(s), 0.005);
}

TEST(SimulatePaths, HorizonCensorsSurvivors) {
  SimulationOptions options;
  options.paths = 10000;
  options.seed = 4;
  options.horizon = 100.0;
  const auto sim = simulate_paths(testing::two_state(0.001), StateDistribution::point_mass(2, 0),
                                  options);
  // P(survive 100 h) = exp(-0.1) ~ 0.905
  EXPECT_NEAR(static_cast<double>(sim.censored) / 1e4, std::exp(-0.1), 0.01);
  EXPECT_THROW(sim.mean_absorption_time(), Error);
}

}  // namespace
}  // namespace uavrel::markov
