#include "uavrel/markov/model.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <type_traits>
#include <unordered_map>

#include "uavrel/error.hpp"

namespace uavrel::markov {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

void check_sojourn(const SojournDistribution& dist, const std::string& where) {
  bool ok = std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return positive_finite(d.rate);
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          return positive_finite(d.delay);
        } else {
          return positive_finite(d.shape) && positive_finite(d.scale);
        }
      },
      dist);
  if (!ok) {
    throw Error(ErrorCode::kNegativeRate,
                "sojourn parameters must be positive on " + where);
  }
}

struct StateTable {
  std::vector<std::string> labels;
  std::unordered_map<std::string, StateIndex> index;

  explicit StateTable(std::vector<std::string> states) : labels(std::move(states)) {
    if (labels.size() < 2) {
      throw Error(ErrorCode::kTooFewStates, "a model needs at least two states");
    }
    for (StateIndex i = 0; i < labels.size(); ++i) {
      if (!index.emplace(labels[i], i).second) {
        throw Error(ErrorCode::kDuplicateState, "state '" + labels[i] + "' declared twice");
      }
    }
  }

  StateIndex lookup(const std::string& label) const {
    auto it = index.find(label);
    if (it == index.end()) {
      throw Error(ErrorCode::kUnknownState, "state '" + label + "' is not declared");
    }
    return it->second;
  }
};

std::vector<bool> absorbing_mask(const StateTable& table,
                                 std::span<const std::string> absorbing) {
  std::vector<bool> mask(table.labels.size(), false);
  for (const auto& label : absorbing) mask[table.lookup(label)] = true;
  return mask;
}

// Every operational state must be able to reach some absorbing state.
void check_reachability(const StateTable& table, const std::vector<bool>& absorbing,
                        const std::vector<std::vector<StateIndex>>& successors) {
  const std::size_t n = absorbing.size();
  std::vector<std::vector<StateIndex>> predecessors(n);
  for (StateIndex i = 0; i < n; ++i) {
    for (StateIndex j : successors[i]) predecessors[j].push_back(i);
  }
  std::vector<bool> reaches(n, false);
  std::deque<StateIndex> queue;
  for (StateIndex i = 0; i < n; ++i) {
    if (absorbing[i]) {
      reaches[i] = true;
      queue.push_back(i);
    }
  }
  if (queue.empty()) {
    throw Error(ErrorCode::kUnreachableAbsorbing, "no absorbing (failure) state declared");
  }
  while (!queue.empty()) {
    StateIndex j = queue.front();
    queue.pop_front();
    for (StateIndex i : predecessors[j]) {
      if (!reaches[i]) {
        reaches[i] = true;
        queue.push_back(i);
      }
    }
  }
  for (StateIndex i = 0; i < n; ++i) {
    if (!reaches[i]) {
      throw Error(ErrorCode::kUnreachableAbsorbing,
                  "no failure state reachable from '" + table.labels[i] + "'");
    }
  }
}

}  // namespace

double cdf(const SojournDistribution& dist, double t) {
  if (t < 0.0) return 0.0;
  return std::visit(
      [t](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return -std::expm1(-d.rate * t);
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          return t >= d.delay ? 1.0 : 0.0;
        } else {
          return -std::expm1(-std::pow(t / d.scale, d.shape));
        }
      },
      dist);
}

double mean(const SojournDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / d.rate;
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          return d.delay;
        } else {
          return d.scale * std::tgamma(1.0 + 1.0 / d.shape);
        }
      },
      dist);
}

double characteristic_time(const SojournDistribution& dist) {
  return std::visit(
      [](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return 1.0 / d.rate;
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          return d.delay;
        } else {
          return d.scale;
        }
      },
      dist);
}

double quantile(const SojournDistribution& dist, double u) {
  return std::visit(
      [u](const auto& d) -> double {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Exponential>) {
          return -std::log1p(-u) / d.rate;
        } else if constexpr (std::is_same_v<T, Deterministic>) {
          return d.delay;
        } else {
          return d.scale * std::pow(-std::log1p(-u), 1.0 / d.shape);
        }
      },
      dist);
}

StateIndex MarkovModel::index_of(std::string_view label) const {
  for (StateIndex i = 0; i < states_.size(); ++i) {
    if (states_[i] == label) return i;
  }
  throw Error(ErrorCode::kUnknownState, "state '" + std::string(label) + "' is not declared");
}

std::vector<StateIndex> MarkovModel::operational() const {
  std::vector<StateIndex> out;
  for (StateIndex i = 0; i < size(); ++i) {
    if (!absorbing_mask_[i]) out.push_back(i);
  }
  return out;
}

const Eigen::MatrixXd& MarkovModel::generator() const {
  if (kind_ != ModelKind::kExponentialRates) {
    throw Error(ErrorCode::kWrongKind, "general-sojourn model has no generator matrix");
  }
  return generator_;
}

std::span<const KernelEntry> MarkovModel::kernel(StateIndex from) const {
  if (kind_ != ModelKind::kGeneralSojourn) {
    throw Error(ErrorCode::kWrongKind, "exponential-rate model has no explicit kernel");
  }
  return kernel_.at(from);
}

Eigen::MatrixXd MarkovModel::embedded_chain() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (StateIndex i = 0; i < size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    if (absorbing_mask_[i]) {
      p(r, r) = 1.0;
      continue;
    }
    if (kind_ == ModelKind::kExponentialRates) {
      const double exit = -generator_(r, r);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j != r) p(r, j) = generator_(r, j) / exit;
      }
    } else {
      for (const auto& e : kernel_[i]) p(r, static_cast<Eigen::Index>(e.to)) += e.probability;
    }
  }
  return p;
}

Eigen::VectorXd MarkovModel::mean_sojourn() const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
  for (StateIndex i = 0; i < size(); ++i) {
    if (absorbing_mask_[i]) continue;
    const auto r = static_cast<Eigen::Index>(i);
    if (kind_ == ModelKind::kExponentialRates) {
      m(r) = -1.0 / generator_(r, r);
    } else {
      for (const auto& e : kernel_[i]) m(r) += e.probability * mean(e.sojourn);
    }
  }
  return m;
}

MarkovModel build_markov_model(std::vector<std::string> states,
                               std::span<const RateTransition> transitions,
                               std::span<const std::string> absorbing) {
  StateTable table(std::move(states));
  const std::size_t n = table.labels.size();
  auto mask = absorbing_mask(table, absorbing);

  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  std::vector<std::vector<StateIndex>> successors(n);
  for (const auto& tr : transitions) {
    const StateIndex i = table.lookup(tr.from);
    const StateIndex j = table.lookup(tr.to);
    const std::string where = tr.from + "->" + tr.to;
    if (!positive_finite(tr.rate)) {
      throw Error(ErrorCode::kNegativeRate, "rate must be positive on " + where);
    }
    if (i == j) {
      throw Error(ErrorCode::kInvalidArgument, "self-loop rate on " + where);
    }
    if (mask[i]) {
      throw Error(ErrorCode::kAbsorbingHasOutgoing, "absorbing state has transition " + where);
    }
    q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += tr.rate;
    successors[i].push_back(j);
  }
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    q(i, i) = 0.0;
    q(i, i) = -q.row(i).sum();
  }
  check_reachability(table, mask, successors);

  MarkovModel model;
  model.kind_ = ModelKind::kExponentialRates;
  model.states_ = std::move(table.labels);
  model.absorbing_mask_ = mask;
  for (StateIndex i = 0; i < n; ++i) {
    if (mask[i]) model.absorbing_.push_back(i);
  }
  model.generator_ = std::move(q);
  return model;
}

MarkovModel build_semi_markov_model(std::vector<std::string> states,
                                    std::span<const KernelTransition> transitions,
                                    std::span<const std::string> absorbing) {
  StateTable table(std::move(states));
  const std::size_t n = table.labels.size();
  auto mask = absorbing_mask(table, absorbing);

  std::vector<std::vector<KernelEntry>> kernel(n);
  std::vector<std::vector<StateIndex>> successors(n);
  for (const auto& tr : transitions) {
    const StateIndex i = table.lookup(tr.from);
    const StateIndex j = table.lookup(tr.to);
    const std::string where = tr.from + "->" + tr.to;
    if (!(tr.probability > 0.0 && tr.probability <= 1.0)) {
      throw Error(ErrorCode::kInvalidProbability, "jump probability outside (0,1] on " + where);
    }
    check_sojourn(tr.sojourn, where);
    if (mask[i]) {
      throw Error(ErrorCode::kAbsorbingHasOutgoing, "absorbing state has transition " + where);
    }
    kernel[i].push_back(KernelEntry{j, tr.probability, tr.sojourn});
    successors[i].push_back(j);
  }
  for (StateIndex i = 0; i < n; ++i) {
    if (mask[i]) continue;
    double total = 0.0;
    for (const auto& e : kernel[i]) total += e.probability;
    if (std::abs(total - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidProbability,
                  "jump probabilities out of '" + table.labels[i] + "' sum to " +
                      std::to_string(total));
    }
  }
  check_reachability(table, mask, successors);

  MarkovModel model;
  model.kind_ = ModelKind::kGeneralSojourn;
  model.states_ = std::move(table.labels);
  model.absorbing_mask_ = mask;
  for (StateIndex i = 0; i < n; ++i) {
    if (mask[i]) model.absorbing_.push_back(i);
  }
  model.kernel_ = std::move(kernel);
  return model;
}

MarkovModel as_semi_markov(const MarkovModel& exponential) {
  const Eigen::MatrixXd& q = exponential.generator();
  std::vector<KernelTransition> kernel;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    const double exit = -q(i, i);
    if (exit <= 0.0) continue;
    double assigned = 0.0;
    Eigen::Index last = -1;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (j == i || q(i, j) <= 0.0) continue;
      kernel.push_back({exponential.label(static_cast<StateIndex>(i)),
                        exponential.label(static_cast<StateIndex>(j)), q(i, j) / exit,
                        Exponential{exit}});
      assigned += q(i, j) / exit;
      last = static_cast<Eigen::Index>(kernel.size()) - 1;
    }
    // absorb rounding so the row passes the 1e-12 sum check
    if (last >= 0) kernel[static_cast<std::size_t>(last)].probability += 1.0 - assigned;
  }
  std::vector<std::string> absorbing;
  for (StateIndex s : exponential.absorbing()) absorbing.push_back(exponential.label(s));
  return build_semi_markov_model(exponential.states(), kernel, absorbing);
}

StateDistribution StateDistribution::point_mass(std::size_t n, StateIndex s) {
  if (s >= n) throw Error(ErrorCode::kOutOfRange, "state index outside the model");
  StateDistribution d;
  d.probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  d.probs(static_cast<Eigen::Index>(s)) = 1.0;
  return d;
}

void validate_distribution(const MarkovModel& model, const StateDistribution& p,
                           double tolerance) {
  if (static_cast<std::size_t>(p.probs.size()) != model.size()) {
    throw Error(ErrorCode::kLengthMismatch, "distribution length does not match model size");
  }
  if (!(p.time >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "distribution time must be non-negative");
  }
  for (Eigen::Index i = 0; i < p.probs.size(); ++i) {
    if (!(p.probs(i) >= 0.0 && p.probs(i) <= 1.0)) {
      throw Error(ErrorCode::kInvalidProbability, "entry outside [0,1]");
    }
  }
  if (std::abs(p.total() - 1.0) > tolerance) {
    throw Error(ErrorCode::kInvalidProbability, "entries do not sum to 1");
  }
}

double absorbed_probability(const MarkovModel& model, const StateDistribution& p) {
  double total = 0.0;
  for (StateIndex s : model.absorbing()) total += p.probs(static_cast<Eigen::Index>(s));
  return total;
}

TimeGrid TimeGrid::with_step(double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs step > 0 and finite horizon >= 0");
  }
  const double n = std::ceil(horizon / step - 1e-9);
  return TimeGrid{step, static_cast<std::size_t>(std::max(n, 0.0))};
}

TimeGrid TimeGrid::subdivide(double horizon, std::size_t intervals) {
  if (!(horizon > 0.0) || intervals == 0) {
    throw Error(ErrorCode::kInvalidArgument, "grid needs horizon > 0 and intervals >= 1");
  }
  return TimeGrid{horizon / static_cast<double>(intervals), intervals};
}

}  // namespace uavrel::markov
