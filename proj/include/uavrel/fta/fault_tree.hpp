#pragma once

#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uavrel/markov/model.hpp"

namespace uavrel::fta {

enum class GateType { kAnd, kOr };

/// Which dynamic model backs a complex basic event.
enum class CbeModel { kPropulsion, kBattery, kProcessor, kMarkov };

std::string_view to_string(CbeModel model) noexcept;

struct BasicEvent {
  double rate = 0.0;  ///< constant failure rate, 1/hour
};

struct ComplexBasicEvent {
  CbeModel model = CbeModel::kMarkov;
  /// Name of an inline `markov` block, for CbeModel::kMarkov.
  std::string ref;
  /// Telemetry fields feeding the event (see kSymptomNames).
  std::vector<std::string> symptoms;
};

struct Gate {
  GateType type = GateType::kOr;
  std::vector<std::size_t> children;
};

struct Node {
  std::string id;
  std::string label;
  std::variant<BasicEvent, ComplexBasicEvent, Gate> body;

  bool is_leaf() const { return !std::holds_alternative<Gate>(body); }
  bool is_gate() const { return std::holds_alternative<Gate>(body); }
};

/// Telemetry symptom names a complex event may bind to.
inline constexpr std::string_view kSymptomNames[] = {"battery_pct", "temp_c", "motor_status",
                                                     "config", "activity"};

/**
 * Validated AND/OR fault tree. Every node has at most one parent, so leaf
 * events are independent and bottom-up quantification is exact.
 */
class FaultTree {
 public:
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t root_index() const noexcept { return root_; }
  const Node& root() const { return nodes_.at(root_); }

  /// Leaf node indices in document order.
  const std::vector<std::size_t>& leaves() const noexcept { return leaves_; }
  /// Gate node indices in document order.
  std::vector<std::size_t> gates() const;

  std::optional<std::size_t> find(std::string_view id) const;

  /// Inline Markov models declared in the document, by name.
  const std::map<std::string, markov::MarkovModel, std::less<>>& markov_models() const noexcept {
    return markov_;
  }

  /// Children before parents, root last.
  const std::vector<std::size_t>& evaluation_order() const noexcept { return order_; }

 private:
  friend FaultTree parse_fault_tree(std::string_view text);

  std::vector<Node> nodes_;
  std::size_t root_ = 0;
  std::vector<std::size_t> leaves_;
  std::vector<std::size_t> order_;
  std::map<std::string, markov::MarkovModel, std::less<>> markov_;
};

/**
 * Parses the line-oriented tree format:
 *
 *   event <id> rate=<1/h> [label="..."]
 *   cbe <id> model=<propulsion|battery|processor|markov> [ref=<name>]
 *       [symptoms=<name,...>] [link=deterministic] [label="..."]
 *   gate <id> <AND|OR> children=<id,...> [label="..."]
 *   markov <name> states=<s,...> absorbing=<s,...>
 *   rate <name> <from> <to> <1/h>
 *   top <id>
 *
 * `#` starts a comment. Errors carry "line:column" positions.
 */
FaultTree parse_fault_tree(std::string_view text);

/// Reads and parses a tree document; IO_ERROR when unreadable.
FaultTree load_fault_tree(const std::filesystem::path& path);

struct ComponentProbability {
  std::string leaf_id;
  double probability = 0.0;
  /// Hours; +infinity for a leaf that never fails.
  double mttf_h = std::numeric_limits<double>::infinity();
};

/// Top-event probability under leaf independence: OR = 1 - prod(1 - p),
/// AND = prod(p). Throws MISSING_LEAF_PROBABILITY or INVALID_PROBABILITY.
double evaluate_top(const FaultTree& tree, std::span<const ComponentProbability> leaf_probs);

/// Same, with probabilities aligned to tree.leaves().
double evaluate_top(const FaultTree& tree, std::span<const double> by_leaf);

using ReliabilityFunction = std::function<double(double)>;

struct SystemMttfOptions {
  double step_h = 0.5;
  double cap_h = 1.0e6;
  /// Integration stops once system reliability drops below this.
  double survival_cutoff = 1e-6;
};

struct SystemMttf {
  double hours = 0.0;
  double horizon_h = 0.0;
  /// The cap was hit first; `hours` is then a lower bound.
  bool horizon_capped = false;
};

/// Trapezoidal integral of R_sys(t) = 1 - top(1 - R_leaf(t)) from 0 until
/// R_sys falls below the cutoff or the cap is reached. Every leaf needs a
/// reliability function of time-from-now (hours).
SystemMttf system_mttf(const FaultTree& tree,
                       const std::map<std::string, ReliabilityFunction, std::less<>>& leaf_reliability,
                       const SystemMttfOptions& options = {});

}  // namespace uavrel::fta
