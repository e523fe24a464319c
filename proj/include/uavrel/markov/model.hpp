#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace uavrel::markov {

using StateIndex = std::size_t;

// -----------------------------------------------------------------------------
// Sojourn-time distributions
// -----------------------------------------------------------------------------

struct Exponential {
  double rate;  ///< 1/hour
};

struct Deterministic {
  double delay;  ///< hours
};

struct Weibull {
  double shape;
  double scale;  ///< hours
};

using SojournDistribution = std::variant<Exponential, Deterministic, Weibull>;

/// P{S <= t}. Zero for t < 0.
double cdf(const SojournDistribution& dist, double t);

double mean(const SojournDistribution& dist);

/// Time scale the distribution varies on: 1/rate, delay or Weibull scale.
double characteristic_time(const SojournDistribution& dist);

/// Inverse-CDF draw for u in [0, 1).
double quantile(const SojournDistribution& dist, double u);

// -----------------------------------------------------------------------------
// Model
// -----------------------------------------------------------------------------

enum class ModelKind { kExponentialRates, kGeneralSojourn };

struct RateTransition {
  std::string from;
  std::string to;
  double rate;  ///< 1/hour
};

/// One entry of the semi-Markov kernel Q_ij(t) = p_ij * F_ij(t).
struct KernelTransition {
  std::string from;
  std::string to;
  double probability;  ///< embedded-chain jump probability p_ij
  SojournDistribution sojourn;
};

struct KernelEntry {
  StateIndex to;
  double probability;
  SojournDistribution sojourn;
};

/**
 * Labeled-state continuous-time stochastic process with designated absorbing
 * (failed) states.
 *
 * Two flavors share the type. Exponential-rate models carry a generator
 * matrix; general-sojourn (semi-Markov) models carry a kernel of jump
 * probabilities and per-transition sojourn distributions. Instances are
 * immutable and only obtainable through the validating builders below.
 */
class MarkovModel {
 public:
  ModelKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<std::string>& states() const noexcept { return states_; }
  const std::string& label(StateIndex s) const { return states_.at(s); }

  /// Throws UNKNOWN_STATE.
  StateIndex index_of(std::string_view label) const;

  bool is_absorbing(StateIndex s) const { return absorbing_mask_.at(s); }
  const std::vector<StateIndex>& absorbing() const noexcept { return absorbing_; }
  std::vector<StateIndex> operational() const;

  /// Generator matrix (exponential kind only, WRONG_KIND otherwise).
  const Eigen::MatrixXd& generator() const;

  /// Kernel row of `from` (general kind only, WRONG_KIND otherwise).
  std::span<const KernelEntry> kernel(StateIndex from) const;

  /// Embedded jump chain; absorbing rows are identity rows.
  Eigen::MatrixXd embedded_chain() const;

  /// Expected holding time per visit; zero for absorbing states.
  Eigen::VectorXd mean_sojourn() const;

 private:
  friend MarkovModel build_markov_model(std::vector<std::string>,
                                        std::span<const RateTransition>,
                                        std::span<const std::string>);
  friend MarkovModel build_semi_markov_model(std::vector<std::string>,
                                             std::span<const KernelTransition>,
                                             std::span<const std::string>);

  MarkovModel() = default;

  ModelKind kind_ = ModelKind::kExponentialRates;
  std::vector<std::string> states_;
  std::vector<bool> absorbing_mask_;
  std::vector<StateIndex> absorbing_;
  Eigen::MatrixXd generator_;
  std::vector<std::vector<KernelEntry>> kernel_;
};

/// Validated exponential-rate model. Parallel transitions between the same
/// pair of states are summed.
MarkovModel build_markov_model(std::vector<std::string> states,
                               std::span<const RateTransition> transitions,
                               std::span<const std::string> absorbing);

/// Validated semi-Markov model. Self-transitions are allowed (renewal in
/// place); jump probabilities out of each operational state must sum to 1.
MarkovModel build_semi_markov_model(std::vector<std::string> states,
                                    std::span<const KernelTransition> transitions,
                                    std::span<const std::string> absorbing);

/// Same process expressed as a semi-Markov kernel with exponential sojourns.
MarkovModel as_semi_markov(const MarkovModel& exponential);

// -----------------------------------------------------------------------------
// Distributions over states
// -----------------------------------------------------------------------------

struct StateDistribution {
  double time = 0.0;  ///< hours
  Eigen::VectorXd probs;

  static StateDistribution point_mass(std::size_t n, StateIndex s);
  double total() const { return probs.sum(); }
};

/// Throws INVALID_PROBABILITY unless entries lie in [0,1] and sum to 1
/// within `tolerance`, or LENGTH_MISMATCH against the model size.
void validate_distribution(const MarkovModel& model, const StateDistribution& p,
                           double tolerance = 1e-9);

/// Probability mass sitting in absorbing states.
double absorbed_probability(const MarkovModel& model, const StateDistribution& p);

// -----------------------------------------------------------------------------
// Time grids
// -----------------------------------------------------------------------------

/// Uniform grid {0, step, 2*step, ..., intervals*step}.
struct TimeGrid {
  double step = 1.0;
  std::size_t intervals = 0;

  double at(std::size_t k) const { return static_cast<double>(k) * step; }
  double horizon() const { return at(intervals); }
  std::size_t points() const { return intervals + 1; }

  static TimeGrid with_step(double horizon, double step);
  static TimeGrid subdivide(double horizon, std::size_t intervals = 4096);
};

}  // namespace uavrel::markov
