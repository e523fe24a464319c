#pragma once

#include <span>
#include <vector>

#include "uavrel/markov/model.hpp"

namespace uavrel::markov {

/**
 * Block layout of a matrix with transient states first:
 *
 *     [ transient            to_absorbing    ]
 *     [ absorbing_transient  absorbing_block ]
 *
 * For a stochastic matrix the bottom row is [0 I]; for a generator it is
 * [0 0]. Both bottom blocks are kept so reassemble() is exact for any input.
 */
struct CanonicalDecomposition {
  /// permutation[k] is the original index of canonical position k.
  std::vector<StateIndex> permutation;
  Eigen::MatrixXd transient;
  Eigen::MatrixXd to_absorbing;
  Eigen::MatrixXd absorbing_transient;
  Eigen::MatrixXd absorbing_block;

  std::size_t transient_count() const { return static_cast<std::size_t>(transient.rows()); }
  std::size_t absorbing_count() const { return static_cast<std::size_t>(absorbing_block.rows()); }

  /// Original-order matrix rebuilt from the blocks.
  Eigen::MatrixXd reassemble() const;
};

/// Throws NONE_ABSORBING, ALL_ABSORBING, or OUT_OF_RANGE.
CanonicalDecomposition canonical_form(const Eigen::MatrixXd& matrix,
                                      std::span<const StateIndex> absorbing);

/// Canonical form of the model's embedded jump chain.
CanonicalDecomposition canonical_form(const MarkovModel& model);

/// N = (I - Q)^-1 of a stochastic canonical decomposition. Throws
/// SINGULAR_SYSTEM when absorption is not certain.
Eigen::MatrixXd fundamental_matrix(const CanonicalDecomposition& chain);

/// t = N C with C the column of ones: expected jumps before absorption,
/// in canonical transient order.
Eigen::VectorXd expected_steps(const CanonicalDecomposition& chain);

/// Expected time to absorption from every state (zero on absorbing states),
/// via the embedded chain: N applied to the transient mean sojourn times.
Eigen::VectorXd mean_time_to_absorption(const MarkovModel& model);

/**
 * Expected time (hours) to reach any absorbing state from `start`.
 *
 * Exponential kind solves -Q_TT m = 1 on the generator's transient block;
 * general kind uses mean_time_to_absorption. An absorbing start returns 0,
 * which callers can tell apart through model.is_absorbing(start).
 */
double mttf_from_state(const MarkovModel& model, StateIndex start);

}  // namespace uavrel::markov
