#include "uavrel/markov/transient.hpp"

#include <algorithm>
#include <cmath>

#include "uavrel/error.hpp"

namespace uavrel::markov {

namespace {

constexpr double kMaxJumpsPerSubstep = 20.0;

// Returns x * exp(Q t) for a row block x.
Eigen::MatrixXd uniformize(const Eigen::MatrixXd& q, Eigen::MatrixXd x, double t,
                           double tolerance = kUniformizationTolerance) {
  const double lambda = (-q.diagonal()).maxCoeff();
  if (t == 0.0 || lambda <= 0.0) return x;

  const Eigen::Index n = q.rows();
  const Eigen::MatrixXd p = Eigen::MatrixXd::Identity(n, n) + q / lambda;

  const double total = lambda * t;
  const auto substeps = static_cast<long>(std::max(1.0, std::ceil(total / kMaxJumpsPerSubstep)));
  const double a = total / static_cast<double>(substeps);
  // below ~1e-15 the running sum cannot resolve the tail any better
  const double eps = std::max(tolerance / static_cast<double>(substeps), 1e-15);
  const auto max_terms = static_cast<long>(a + 12.0 * std::sqrt(a) + 64.0);

  for (long s = 0; s < substeps; ++s) {
    double weight = std::exp(-a);
    double accumulated = weight;
    Eigen::MatrixXd term = x;
    Eigen::MatrixXd sum = weight * term;
    for (long k = 1; 1.0 - accumulated > eps && k <= max_terms; ++k) {
      term = term * p;
      weight *= a / static_cast<double>(k);
      accumulated += weight;
      sum += weight * term;
    }
    // retained weights renormalised, so each substep stays stochastic
    x = sum / accumulated;
  }
  return x;
}

void require_exponential(const MarkovModel& model) {
  if (model.kind() != ModelKind::kExponentialRates) {
    throw Error(ErrorCode::kWrongKind,
                "transient analysis by uniformization needs an exponential-rate model; "
                "use solve_markov_renewal");
  }
}

}  // namespace

StateDistribution transient_distribution(const MarkovModel& model,
                                         const StateDistribution& p0, double t) {
  require_exponential(model);
  validate_distribution(model, p0);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidArgument, "time must be finite and non-negative");
  }
  StateDistribution out;
  out.time = p0.time + t;
  out.probs = uniformize(model.generator(), p0.probs.transpose(), t).transpose();
  return out;
}

Eigen::MatrixXd transition_matrix(const MarkovModel& model, double t) {
  require_exponential(model);
  const auto n = static_cast<Eigen::Index>(model.size());
  return uniformize(model.generator(), Eigen::MatrixXd::Identity(n, n), t);
}

std::vector<StateDistribution> transient_curve(const MarkovModel& model,
                                               const StateDistribution& p0,
                                               const TimeGrid& grid) {
  require_exponential(model);
  validate_distribution(model, p0);
  // the step matrix is applied `intervals` times, so it gets that share of
  // the tolerance
  const auto n = static_cast<Eigen::Index>(model.size());
  const Eigen::MatrixXd step =
      uniformize(model.generator(), Eigen::MatrixXd::Identity(n, n), grid.step,
                 kUniformizationTolerance / static_cast<double>(std::max<std::size_t>(grid.intervals, 1)));

  std::vector<StateDistribution> out;
  out.reserve(grid.points());
  Eigen::RowVectorXd row = p0.probs.transpose();
  for (std::size_t k = 0; k < grid.points(); ++k) {
    if (k > 0) row = row * step;
    out.push_back(StateDistribution{p0.time + grid.at(k), row.transpose()});
  }
  return out;
}

}  // namespace uavrel::markov
