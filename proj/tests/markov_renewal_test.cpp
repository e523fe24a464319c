#include <cmath>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "uavrel/error.hpp"
#include "uavrel/markov/renewal.hpp"
#include "uavrel/markov/simulation.hpp"
#include "uavrel/markov/transient.hpp"

namespace uavrel::markov {
namespace {

MarkovModel single_transition(SojournDistribution sojourn) {
  const std::vector<KernelTransition> tr = {{"Op", "Fail", 1.0, sojourn}};
  return build_semi_markov_model({"Op", "Fail"}, tr, std::vector<std::string>{"Fail"});
}

TEST(MarkovRenewal, ExponentialSojournMatchesClosedForm) {
  const auto model = single_transition(Exponential{0.001});
  const auto grid = TimeGrid::with_step(2000.0, 0.5);
  const auto sol = solve_markov_renewal(model, StateDistribution::point_mass(2, 0), grid);
  ASSERT_EQ(sol.distributions.size(), grid.points());
  EXPECT_FALSE(sol.grid_too_coarse);
  double worst = 0.0;
  for (const auto& p : sol.distributions) {
    worst = std::max(worst, std::abs(p.probs(1) - (1.0 - std::exp(-0.001 * p.time))));
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(MarkovRenewal, ExponentialChainAgreesWithUniformization) {
  // Multi-state chain: the convolution terms are non-trivial here.
  const auto model = testing::battery_by_hand();
  const auto p0 = StateDistribution::point_mass(5, 0);
  const auto sol = solve_markov_renewal(model, p0, TimeGrid::with_step(400.0, 0.5));
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.distributions.size(); k += 40) {
    const auto& p = sol.distributions[k];
    const auto exact = transient_distribution(model, p0, p.time);
    worst = std::max(worst, (p.probs - exact.probs).cwiseAbs().maxCoeff());
  }
  EXPECT_LE(worst, 1e-3);
}

TEST(MarkovRenewal, DeterministicSojournStepsAtDelay) {
  const auto model = single_transition(Deterministic{10.0});
  const auto grid = TimeGrid::with_step(20.0, 0.1);
  const auto sol = solve_markov_renewal(model, StateDistribution::point_mass(2, 0), grid);
  for (const auto& p : sol.distributions) {
    if (p.time < 10.0 - grid.step) EXPECT_NEAR(p.probs(1), 0.0, 1e-12) << p.time;
    if (p.time > 10.0 + grid.step) EXPECT_NEAR(p.probs(1), 1.0, 1e-12) << p.time;
  }
}

TEST(MarkovRenewal, WeibullAgreesWithMonteCarlo) {
  const auto model = single_transition(Weibull{2.0, 100.0});
  const auto p0 = StateDistribution::point_mass(2, 0);
  const auto grid = TimeGrid::with_step(200.0, 0.5);
  const auto sol = solve_markov_renewal(model, p0, grid);

  SimulationOptions options;
  options.paths = 100000;
  options.seed = 99;
  options.occupancy_times = {50.0, 100.0, 200.0};
  const auto sim = simulate_paths(model, p0, options);
  for (std::size_t q = 0; q < 3; ++q) {
    const auto k = static_cast<std::size_t>(std::lround(options.occupancy_times[q] / grid.step));
    EXPECT_NEAR(sol.distributions[k].probs(1), sim.occupancy[q].probs(1), 0.01)
        << "t=" << options.occupancy_times[q];
  }
}

TEST(MarkovRenewal, SemiMarkovChainConservesProbabilityAndAbsorbsMonotonically) {
  const std::vector<KernelTransition> tr = {
      {"Up", "Degraded", 0.8, Weibull{1.5, 40.0}},
      {"Up", "Down", 0.2, Exponential{0.02}},
      {"Degraded", "Up", 0.3, Deterministic{5.0}},
      {"Degraded", "Down", 0.7, Weibull{3.0, 20.0}},
  };
  const auto model =
      build_semi_markov_model({"Up", "Degraded", "Down"}, tr, std::vector<std::string>{"Down"});
  const auto sol = solve_markov_renewal(model, StateDistribution::point_mass(3, 0),
                                        TimeGrid::with_step(300.0, 0.25));
  double absorbed = 0.0;
  for (const auto& p : sol.distributions) {
    EXPECT_NEAR(p.total(), 1.0, 1e-6);
    EXPECT_GE(p.probs.minCoeff(), -1e-9);
    EXPECT_GE(p.probs(2), absorbed - 1e-12);
    absorbed = p.probs(2);
  }

  SimulationOptions options;
  options.paths = 100000;
  options.seed = 5;
  options.occupancy_times = {30.0, 120.0};
  const auto sim = simulate_paths(model, StateDistribution::point_mass(3, 0), options);
  for (std::size_t q = 0; q < 2; ++q) {
    const auto k = static_cast<std::size_t>(std::lround(options.occupancy_times[q] / 0.25));
    for (Eigen::Index s = 0; s < 3; ++s) {
      EXPECT_NEAR(sol.distributions[k].probs(s), sim.occupancy[q].probs(s), 0.01);
    }
  }
}

TEST(MarkovRenewal, CoarseGridIsFlaggedOrRejected) {
  const auto model = single_transition(Exponential{1.0});
  const auto grid = TimeGrid::with_step(10.0, 0.5);
  const auto p0 = StateDistribution::point_mass(2, 0);
  EXPECT_TRUE(solve_markov_renewal(model, p0, grid).grid_too_coarse);
  try {
    solve_markov_renewal(model, p0, grid, GridPolicy::kStrict);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGridTooCoarse);
  }
}

}  // namespace
}  // namespace uavrel::markov
