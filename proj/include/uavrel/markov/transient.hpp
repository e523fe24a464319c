#pragma once

#include <vector>

#include "uavrel/markov/model.hpp"

namespace uavrel::markov {

/// Poisson tail mass truncated by uniformization, summed over all substeps.
inline constexpr double kUniformizationTolerance = 1e-10;

/**
 * State probabilities of an exponential-rate model at time `t` (hours),
 * computed by uniformization.
 *
 * The interval is split into substeps with at most 20 expected uniformized
 * jumps each, and each substep truncates its Poisson series once the
 * remaining tail is below kUniformizationTolerance / substeps. The retained
 * weights are renormalised, so probability is conserved to rounding and the
 * total truncation error stays within kUniformizationTolerance.
 *
 * Throws WRONG_KIND for general-sojourn models.
 */
StateDistribution transient_distribution(const MarkovModel& model,
                                         const StateDistribution& p0, double t);

/// transient_distribution evaluated at every point of `grid` (times are
/// offsets from p0.time). Uses one uniformized step matrix, so it is much
/// cheaper than calling transient_distribution per point.
std::vector<StateDistribution> transient_curve(const MarkovModel& model,
                                               const StateDistribution& p0,
                                               const TimeGrid& grid);

/// exp(Q t) by uniformization, for callers that need the full matrix.
Eigen::MatrixXd transition_matrix(const MarkovModel& model, double t);

}  // namespace uavrel::markov
