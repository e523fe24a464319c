#pragma once

#include <vector>

#include "uavrel/markov/model.hpp"

namespace uavrel::markov {

enum class GridPolicy {
  kWarn,    ///< flag a coarse grid in the solution and carry on
  kStrict,  ///< throw GRID_TOO_COARSE
};

struct RenewalSolution {
  /// One distribution per grid point, times offset by p0.time.
  std::vector<StateDistribution> distributions;
  /// Grid step exceeded a tenth of the smallest sojourn time scale.
  bool grid_too_coarse = false;
};

/**
 * Solves the Markov renewal (Kolmogorov-Feller) system
 *
 *   P_ij(t) = delta_ij (1 - G_i(t)) + sum_k int_0^t P_kj(t - x) dQ_ik(x)
 *
 * on a uniform grid. Kernel increments dQ are taken exactly per cell and
 * P(t - x) is averaged over the cell ends (trapezoid), which leaves one small
 * implicit solve per step. Row sums of P are conserved up to rounding.
 *
 * Cost is O(points^2 * kernel_entries * states), so the default
 * TimeGrid::subdivide(horizon) grid is meant for models with a handful of
 * states.
 */
RenewalSolution solve_markov_renewal(const MarkovModel& model, const StateDistribution& p0,
                                     const TimeGrid& grid,
                                     GridPolicy policy = GridPolicy::kWarn);

}  // namespace uavrel::markov
