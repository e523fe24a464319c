#include "uavrel/markov/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "uavrel/error.hpp"

namespace uavrel::markov {

namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(const Eigen::VectorXd& weights, double u) {
  double acc = 0.0;
  Eigen::Index last = 0;
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) <= 0.0) continue;
    acc += weights(i);
    last = i;
    if (u < acc) return static_cast<std::size_t>(i);
  }
  return static_cast<std::size_t>(last);
}

struct Step {
  StateIndex next;
  double holding;
};

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double SimulationResult::mean_absorption_time() const {
  if (censored > 0 || absorption_times.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "mean absorption time needs uncensored paths");
  }
  double sum = 0.0;
  for (double t : absorption_times) sum += t;
  return sum / static_cast<double>(absorption_times.size());
}

double SimulationResult::standard_error() const {
  const double mu = mean_absorption_time();
  const auto n = static_cast<double>(absorption_times.size());
  if (n < 2) return std::numeric_limits<double>::infinity();
  double ss = 0.0;
  for (double t : absorption_times) ss += (t - mu) * (t - mu);
  return std::sqrt(ss / (n - 1.0) / n);
}

SimulationResult simulate_paths(const MarkovModel& model, const StateDistribution& p0,
                                const SimulationOptions& options) {
  if (options.paths == 0) {
    throw Error(ErrorCode::kInvalidArgument, "at least one path is required");
  }
  if (!(options.horizon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be positive");
  }
  validate_distribution(model, p0);
  for (double t : options.occupancy_times) {
    if (!(t >= 0.0 && t <= options.horizon)) {
      throw Error(ErrorCode::kInvalidArgument, "occupancy times must lie in [0, horizon]");
    }
  }

  const std::size_t n = model.size();
  std::vector<double> times = options.occupancy_times;
  std::vector<std::size_t> order(times.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return times[a] < times[b]; });

  const bool exponential = model.kind() == ModelKind::kExponentialRates;
  const Eigen::MatrixXd jumps = exponential ? model.embedded_chain() : Eigen::MatrixXd();

  auto draw_step = [&](StateIndex s, std::mt19937_64& rng) -> Step {
    if (exponential) {
      const auto r = static_cast<Eigen::Index>(s);
      const double exit = -model.generator()(r, r);
      const double holding = -std::log1p(-unit_uniform(rng)) / exit;
      const StateIndex next = pick(jumps.row(r).transpose(), unit_uniform(rng));
      return {next, holding};
    }
    const auto row = model.kernel(s);
    const double u = unit_uniform(rng);
    double acc = 0.0;
    const KernelEntry* chosen = &row.back();
    for (const auto& e : row) {
      acc += e.probability;
      if (u < acc) {
        chosen = &e;
        break;
      }
    }
    return {chosen->to, quantile(chosen->sojourn, unit_uniform(rng))};
  };

  SimulationResult result;
  result.absorption_times.resize(options.paths);
  std::vector<std::vector<double>> counts(times.size(), std::vector<double>(n, 0.0));

  for (std::size_t path = 0; path < options.paths; ++path) {
    std::mt19937_64 rng(splitmix64(options.seed ^ splitmix64(path)));
    StateIndex state = pick(p0.probs, unit_uniform(rng));
    double clock = 0.0;
    std::size_t next_query = 0;
    while (true) {
      if (model.is_absorbing(state)) break;
      const Step step = draw_step(state, rng);
      const double leave = clock + step.holding;
      while (next_query < order.size() && times[order[next_query]] < leave) {
        counts[order[next_query]][state] += 1.0;
        ++next_query;
      }
      if (leave > options.horizon) {
        clock = std::numeric_limits<double>::infinity();
        break;
      }
      clock = leave;
      state = step.next;
    }
    for (; next_query < order.size(); ++next_query) {
      counts[order[next_query]][state] += 1.0;
    }
    if (std::isinf(clock)) ++result.censored;
    result.absorption_times[path] = clock;
  }

  const auto total = static_cast<double>(options.paths);
  for (std::size_t q = 0; q < times.size(); ++q) {
    StateDistribution d;
    d.time = p0.time + times[q];
    d.probs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t s = 0; s < n; ++s) d.probs(static_cast<Eigen::Index>(s)) = counts[q][s] / total;
    result.occupancy.push_back(std::move(d));
  }
  return result;
}

}  // namespace uavrel::markov
