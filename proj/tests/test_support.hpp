// Shared model fixtures for the test suites.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uavrel/fta/fault_tree.hpp"
#include "uavrel/markov/model.hpp"

namespace uavrel::testing {

inline markov::MarkovModel two_state(double lambda) {
  const std::vector<markov::RateTransition> tr = {{"Op", "Fail", lambda}};
  const std::vector<std::string> absorbing = {"Fail"};
  return markov::build_markov_model({"Op", "Fail"}, tr, absorbing);
}

// Four-band battery with the mission-time rates (D + alpha between bands,
// lambda_b straight to failure), written out by hand.
inline markov::MarkovModel battery_by_hand() {
  const double band = 0.0064 + 0.008;
  const double fail = 0.0001;
  const std::vector<markov::RateTransition> tr = {
      {"B100", "B75", band}, {"B75", "B50", band},  {"B50", "B25", band},
      {"B25", "BFailed", band}, {"B100", "BFailed", fail}, {"B75", "BFailed", fail},
      {"B50", "BFailed", fail}, {"B25", "BFailed", fail}};
  const std::vector<std::string> absorbing = {"BFailed"};
  return markov::build_markov_model({"B100", "B75", "B50", "B25", "BFailed"}, tr, absorbing);
}

inline markov::MarkovModel hexacopter_by_hand(double lambda) {
  const std::vector<markov::RateTransition> tr = {{"AllOk", "OneOut", 6 * lambda},
                                                  {"OneOut", "Failure", 5 * lambda}};
  const std::vector<std::string> absorbing = {"Failure"};
  return markov::build_markov_model({"AllOk", "OneOut", "Failure"}, tr, absorbing);
}

/// Random absorbing chain: 2..6 states, the last one or two absorbing, a
/// spine i -> i+1 guaranteeing reachability plus random extra edges.
inline markov::MarkovModel random_exponential_model(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size_dist(2, 6);
  std::uniform_real_distribution<double> rate(0.01, 2.0);
  std::bernoulli_distribution coin(0.4);
  const int n = size_dist(rng);
  const int absorbing_count = (n > 3 && coin(rng)) ? 2 : 1;
  const int transient = n - absorbing_count;

  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back("S" + std::to_string(i));
  std::vector<markov::RateTransition> tr;
  for (int i = 0; i < transient; ++i) {
    tr.push_back({states[i], states[i + 1], rate(rng)});
    for (int j = 0; j < n; ++j) {
      if (j != i && j != i + 1 && coin(rng)) tr.push_back({states[i], states[j], rate(rng)});
    }
  }
  std::vector<std::string> absorbing(states.end() - absorbing_count, states.end());
  return markov::build_markov_model(states, tr, absorbing);
}

// Boolean top event for one assignment of leaf states, read straight off
// the gate structure.
inline bool top_fails(const fta::FaultTree& tree, std::size_t n, const std::vector<bool>& leaf_failed) {
  const auto& node = tree.node(n);
  if (node.is_leaf()) return leaf_failed[n];
  const auto& gate = std::get<fta::Gate>(node.body);
  if (gate.type == fta::GateType::kAnd) {
    for (std::size_t c : gate.children) {
      if (!top_fails(tree, c, leaf_failed)) return false;
    }
    return true;
  }
  for (std::size_t c : gate.children) {
    if (top_fails(tree, c, leaf_failed)) return true;
  }
  return false;
}

inline double enumerate_top(const fta::FaultTree& tree, const std::vector<double>& by_leaf) {
  const auto& leaves = tree.leaves();
  const std::size_t count = leaves.size();
  double total = 0.0;
  std::vector<bool> failed(tree.nodes().size(), false);
  for (std::uint32_t mask = 0; mask < (1u << count); ++mask) {
    double weight = 1.0;
    for (std::size_t k = 0; k < count; ++k) {
      const bool f = (mask >> k) & 1u;
      failed[leaves[k]] = f;
      weight *= f ? by_leaf[k] : 1.0 - by_leaf[k];
    }
    if (top_fails(tree, tree.root_index(), failed)) total += weight;
  }
  return total;
}

// Random AND/OR tree over 1..10 constant-rate leaves.
inline std::string random_tree_document(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> leaf_count(1, 10);
  std::bernoulli_distribution and_gate(0.5);
  std::ostringstream doc;
  std::vector<std::string> open;
  const int n = leaf_count(rng);
  for (int i = 0; i < n; ++i) {
    doc << "event e" << i << " rate=0.001\n";
    open.push_back("e" + std::to_string(i));
  }
  int gates = 0;
  do {
    std::shuffle(open.begin(), open.end(), rng);
    const int take = std::uniform_int_distribution<int>(
        1, std::min<int>(4, static_cast<int>(open.size())))(rng);
    const std::string id = "g" + std::to_string(gates++);
    doc << "gate " << id << (and_gate(rng) ? " AND" : " OR") << " children=";
    for (int k = 0; k < take; ++k) doc << (k ? "," : "") << open[open.size() - 1 - k];
    doc << "\n";
    open.resize(open.size() - take);
    open.push_back(id);
  } while (open.size() > 1);
  doc << "top " << open.front() << "\n";
  return doc.str();
}

}  // namespace uavrel::testing
