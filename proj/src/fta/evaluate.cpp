#include <algorithm>
#include <cmath>
#include <string>

#include "uavrel/error.hpp"
#include "uavrel/fta/fault_tree.hpp"

namespace uavrel::fta {

namespace {

void check_probability(double p, std::string_view id) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::kInvalidProbability,
                "leaf '" + std::string(id) + "' has probability " + std::to_string(p));
  }
}

double fold(const FaultTree& tree, std::vector<double>& value) {
  for (std::size_t n : tree.evaluation_order()) {
    const auto* gate = std::get_if<Gate>(&tree.node(n).body);
    if (!gate) continue;
    double acc = 1.0;
    if (gate->type == GateType::kAnd) {
      for (std::size_t c : gate->children) acc *= value[c];
      value[n] = acc;
    } else {
      for (std::size_t c : gate->children) acc *= 1.0 - value[c];
      value[n] = 1.0 - acc;
    }
  }
  return std::clamp(value[tree.root_index()], 0.0, 1.0);
}

}  // namespace

double evaluate_top(const FaultTree& tree, std::span<const double> by_leaf) {
  const auto& leaves = tree.leaves();
  if (by_leaf.size() != leaves.size()) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(leaves.size()) +
                                                " leaf probabilities, got " +
                                                std::to_string(by_leaf.size()));
  }
  std::vector<double> value(tree.nodes().size(), 0.0);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    check_probability(by_leaf[k], tree.node(leaves[k]).id);
    value[leaves[k]] = by_leaf[k];
  }
  return fold(tree, value);
}

double evaluate_top(const FaultTree& tree, std::span<const ComponentProbability> leaf_probs) {
  std::vector<double> by_leaf;
  by_leaf.reserve(tree.leaves().size());
  for (std::size_t leaf : tree.leaves()) {
    const auto& id = tree.node(leaf).id;
    const ComponentProbability* hit = nullptr;
    for (const auto& cp : leaf_probs) {
      if (cp.leaf_id == id) {
        hit = &cp;
        break;
      }
    }
    if (!hit) throw Error(ErrorCode::kMissingLeafProbability, "no probability for leaf '" + id + "'");
    by_leaf.push_back(hit->probability);
  }
  return evaluate_top(tree, std::span<const double>(by_leaf));
}

SystemMttf system_mttf(const FaultTree& tree,
                       const std::map<std::string, ReliabilityFunction, std::less<>>& leaf_reliability,
                       const SystemMttfOptions& options) {
  if (!(options.step_h > 0.0) || !(options.cap_h > 0.0) || !(options.survival_cutoff > 0.0) ||
      !(options.survival_cutoff < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "system_mttf needs positive step, cap and cutoff in (0,1)");
  }
  std::vector<const ReliabilityFunction*> functions;
  for (std::size_t leaf : tree.leaves()) {
    const auto& id = tree.node(leaf).id;
    auto it = leaf_reliability.find(id);
    if (it == leaf_reliability.end() || !it->second) {
      throw Error(ErrorCode::kMissingLeafProbability, "no reliability function for leaf '" + id + "'");
    }
    functions.push_back(&it->second);
  }

  std::vector<double> unreliability(functions.size());
  auto system_reliability = [&](double t) {
    for (std::size_t k = 0; k < functions.size(); ++k) {
      unreliability[k] = std::clamp(1.0 - (*functions[k])(t), 0.0, 1.0);
    }
    return 1.0 - evaluate_top(tree, std::span<const double>(unreliability));
  };

  SystemMttf out;
  double previous = system_reliability(0.0);
  double t = 0.0;
  for (std::size_t k = 1;; ++k) {
    const double next_t = std::min(static_cast<double>(k) * options.step_h, options.cap_h);
    const double r = system_reliability(next_t);
    out.hours += 0.5 * (previous + r) * (next_t - t);
    t = next_t;
    previous = r;
    if (r < options.survival_cutoff) break;
    if (t >= options.cap_h) {
      out.horizon_capped = true;
      break;
    }
  }
  out.horizon_h = t;
  return out;
}

}  // namespace uavrel::fta
