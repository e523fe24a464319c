#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "uavrel/error.hpp"
#include "uavrel/fta/fault_tree.hpp"
#include "uavrel/markov/absorbing.hpp"
#include "uavrel/markov/transient.hpp"
#include "uavrel/models/battery.hpp"
#include "uavrel/models/processor.hpp"
#include "uavrel/models/propulsion.hpp"

namespace uavrel::fta {
namespace {

using testing::enumerate_top;
using testing::random_tree_document;

const std::string kModels = std::string(UAVREL_SOURCE_DIR) + "/models/";

std::pair<ErrorCode, std::string> failure_of(std::string_view text) {
  try {
    parse_fault_tree(text);
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  ADD_FAILURE() << "document parsed unexpectedly:\n" << text;
  return {ErrorCode::kInvalidArgument, ""};
}

TEST(FaultTreeParse, MinimalDocumentHasThreeNodes) {
  const auto tree = parse_fault_tree(
      "event a rate=0.001\n"
      "event b rate=0.002\n"
      "gate top OR children=a,b\n"
      "top top\n");
  EXPECT_EQ(tree.nodes().size(), 3u);
  EXPECT_EQ(tree.leaves().size(), 2u);
  EXPECT_EQ(tree.root().id, "top");
  EXPECT_EQ(std::get<Gate>(tree.root().body).type, GateType::kOr);
  EXPECT_DOUBLE_EQ(std::get<BasicEvent>(tree.node(*tree.find("b")).body).rate, 0.002);
  EXPECT_EQ(tree.evaluation_order().back(), tree.root_index());
}

TEST(FaultTreeParse, GenericDocumentShape) {
  const auto tree = load_fault_tree(kModels + "uav_generic.ft");
  EXPECT_EQ(tree.leaves().size(), 28u);
  EXPECT_EQ(std::get<Gate>(tree.root().body).type, GateType::kOr);
  const auto& top_children = std::get<Gate>(tree.root().body).children;
  EXPECT_EQ(top_children.size(), 9u);
  for (std::size_t c : top_children) {
    ASSERT_TRUE(tree.node(c).is_gate()) << tree.node(c).id;
    for (std::size_t leaf : std::get<Gate>(tree.node(c).body).children) {
      EXPECT_TRUE(tree.node(leaf).is_leaf());
    }
  }
  EXPECT_EQ(tree.gates().size(), 10u);
  int cbes = 0;
  for (std::size_t leaf : tree.leaves()) {
    cbes += std::holds_alternative<ComplexBasicEvent>(tree.node(leaf).body);
  }
  EXPECT_EQ(cbes, 3);
}

TEST(FaultTreeParse, SmallDocumentHasThreeComplexEvents) {
  const auto tree = load_fault_tree(kModels + "uav_small.ft");
  ASSERT_EQ(tree.leaves().size(), 3u);
  const auto& battery = std::get<ComplexBasicEvent>(tree.node(*tree.find("battery")).body);
  EXPECT_EQ(battery.model, CbeModel::kBattery);
  EXPECT_EQ(battery.symptoms, (std::vector<std::string>{"battery_pct", "activity"}));
  EXPECT_EQ(std::get<ComplexBasicEvent>(tree.node(*tree.find("processor")).body).model,
            CbeModel::kProcessor);
  EXPECT_EQ(tree.root().label, "UAV failure");
}

TEST(FaultTreeParse, DefaultSymptomsAndQuotedLabels) {
  const auto tree = parse_fault_tree(
      "cbe p model=propulsion label=\"Motors # and props\"  # trailing comment\n"
      "gate t OR children=p\n"
      "top t\n");
  const auto& node = tree.node(*tree.find("p"));
  EXPECT_EQ(node.label, "Motors # and props");
  EXPECT_EQ(std::get<ComplexBasicEvent>(node.body).symptoms,
            (std::vector<std::string>{"motor_status", "config"}));
}

TEST(FaultTreeParse, InlineMarkovModel) {
  const auto tree = parse_fault_tree(
      "markov pump states=Up,Degraded,Down absorbing=Down\n"
      "rate pump Up Degraded 0.01\n"
      "rate pump Degraded Down 0.05\n"
      "cbe pump_cbe model=markov ref=pump\n"
      "top pump_cbe\n");
  ASSERT_EQ(tree.markov_models().count("pump"), 1u);
  const auto& model = tree.markov_models().at("pump");
  EXPECT_NEAR(markov::mttf_from_state(model, 0), 100.0 + 20.0, 1e-9);
  EXPECT_TRUE(tree.root().is_leaf());
}

TEST(FaultTreeParse, DuplicateIdIsNamed) {
  const auto [code, what] = failure_of(
      "event a rate=0.001\n"
      "event a rate=0.002\n"
      "gate t OR children=a\n"
      "top t\n");
  EXPECT_EQ(code, ErrorCode::kDuplicateId);
  EXPECT_NE(what.find("'a'"), std::string::npos);
  EXPECT_NE(what.find("line 2:7"), std::string::npos) << what;
}

TEST(FaultTreeParse, ParseErrorsCarryPositions) {
  auto [code, what] = failure_of("event a rate=abc\ntop a\n");
  EXPECT_EQ(code, ErrorCode::kParseError);
  EXPECT_NE(what.find("line 1:"), std::string::npos) << what;

  std::tie(code, what) = failure_of("event a rate=0.1\n\n  frobnicate x\ntop a\n");
  EXPECT_EQ(code, ErrorCode::kParseError);
  EXPECT_NE(what.find("line 3:3"), std::string::npos) << what;

  std::tie(code, what) = failure_of("event a rate=0.1 label=\"open\ntop a\n");
  EXPECT_EQ(code, ErrorCode::kParseError);

  std::tie(code, what) = failure_of("event a rate=0.1\ngate g XOR children=a\ntop g\n");
  EXPECT_EQ(code, ErrorCode::kParseError);
  EXPECT_NE(what.find("line 2:8"), std::string::npos) << what;

  EXPECT_EQ(failure_of("event a rate=-1\ntop a\n").first, ErrorCode::kParseError);
  EXPECT_EQ(failure_of("event a rate=0.1\n").first, ErrorCode::kParseError);
  EXPECT_EQ(failure_of("event a rate=0.1 colour=red\ntop a\n").first, ErrorCode::kParseError);
  EXPECT_EQ(failure_of("event a rate=0.1\ntop a\ntop a\n").first, ErrorCode::kParseError);
}

TEST(FaultTreeParse, StructuralErrors) {
  EXPECT_EQ(failure_of("gate g OR children=g\ntop g\n").first, ErrorCode::kCycleDetected);
  EXPECT_EQ(failure_of("event e rate=0.1\n"
                       "gate a OR children=b\n"
                       "gate b OR children=a\n"
                       "top e\n")
                .first,
            ErrorCode::kCycleDetected);
  EXPECT_EQ(failure_of("gate g OR children=missing\ntop g\n").first, ErrorCode::kUndefinedNode);
  EXPECT_EQ(failure_of("event a rate=0.1\ntop b\n").first, ErrorCode::kUndefinedNode);
  EXPECT_EQ(failure_of("event a rate=0.1\n"
                       "gate g1 OR children=a\n"
                       "gate g2 OR children=a\n"
                       "gate t AND children=g1,g2\n"
                       "top t\n")
                .first,
            ErrorCode::kSharedNode);
  EXPECT_EQ(failure_of("event a rate=0.1\nevent stray rate=0.1\ntop a\n").first,
            ErrorCode::kUnreachableNode);
}

TEST(FaultTreeParse, BindingErrors) {
  EXPECT_EQ(failure_of("cbe c model=turbine\ntop c\n").first, ErrorCode::kUnresolvedBinding);
  EXPECT_EQ(failure_of("cbe c model=markov ref=nothing\ntop c\n").first,
            ErrorCode::kUnresolvedBinding);
  EXPECT_EQ(failure_of("cbe c model=markov\ntop c\n").first, ErrorCode::kUnresolvedBinding);
  EXPECT_EQ(failure_of("cbe c model=battery symptoms=battery_pct,wind\ntop c\n").first,
            ErrorCode::kUnresolvedBinding);
  EXPECT_EQ(failure_of("rate ghost A B 0.1\nevent a rate=0.1\ntop a\n").first,
            ErrorCode::kUnresolvedBinding);
  EXPECT_EQ(failure_of("cbe c model=battery link=probabilistic\ntop c\n").first,
            ErrorCode::kUnsupportedFeature);
  EXPECT_EQ(failure_of("markov m states=A,B absorbing=B\n"
                       "rate m A C 0.1\n"
                       "cbe c model=markov ref=m\ntop c\n")
                .first,
            ErrorCode::kUnknownState);
}

TEST(FaultTreeEvaluate, WorkedValues) {
  const auto tree = parse_fault_tree(
      "event a rate=0.001\nevent b rate=0.002\ngate t OR children=a,b\ntop t\n");
  const std::vector<ComponentProbability> zero = {{"a", 0.0}, {"b", 0.0}};
  EXPECT_EQ(evaluate_top(tree, zero), 0.0);
  const std::vector<ComponentProbability> some = {{"b", 0.2}, {"a", 0.1}};
  EXPECT_NEAR(evaluate_top(tree, some), 0.28, 1e-15);
}

TEST(FaultTreeEvaluate, MissingAndInvalidLeaves) {
  const auto tree = parse_fault_tree(
      "event a rate=0.001\nevent b rate=0.002\ngate t OR children=a,b\ntop t\n");
  const std::vector<ComponentProbability> partial = {{"a", 0.1}};
  try {
    evaluate_top(tree, partial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingLeafProbability);
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
  const std::vector<ComponentProbability> bad = {{"a", 1.5}, {"b", 0.1}};
  EXPECT_THROW(evaluate_top(tree, bad), Error);
  const std::vector<double> short_list = {0.1};
  EXPECT_THROW(evaluate_top(tree, std::span<const double>(short_list)), Error);
}

TEST(FaultTreeEvaluate, GateAlgebra) {
  const auto or_tree =
      parse_fault_tree("event a rate=0\nevent b rate=0\ngate t OR children=a,b\ntop t\n");
  const auto and_tree =
      parse_fault_tree("event a rate=0\nevent b rate=0\ngate t AND children=a,b\ntop t\n");
  for (double p : {0.0, 1e-9, 0.01, 0.3, 0.5, 0.77, 1.0}) {
    const std::vector<double> both = {p, p};
    EXPECT_EQ(evaluate_top(or_tree, std::span<const double>(both)), 1.0 - (1.0 - p) * (1.0 - p));
    EXPECT_EQ(evaluate_top(and_tree, std::span<const double>(both)), p * p);
  }
}

TEST(FaultTreeEvaluate, MatchesEnumerationOnRandomTrees) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tree = parse_fault_tree(random_tree_document(rng));
    std::vector<double> p(tree.leaves().size());
    for (auto& x : p) x = prob(rng);
    EXPECT_NEAR(evaluate_top(tree, std::span<const double>(p)), enumerate_top(tree, p), 1e-12)
        << "trial " << trial;
  }
}

TEST(FaultTreeEvaluate, GenericTreeAtOnePercent) {
  const auto tree = load_fault_tree(kModels + "uav_generic.ft");
  const std::vector<double> p(28, 0.01);
  EXPECT_NEAR(evaluate_top(tree, std::span<const double>(p)), 1.0 - std::pow(0.99, 28), 1e-12);

  // Sub-tree of the first three categories (10 leaves), rebuilt from the
  // loaded structure and checked against enumeration.
  std::ostringstream doc;
  std::vector<std::string> kept;
  for (std::size_t c : std::get<Gate>(tree.root().body).children) {
    const auto& category = tree.node(c);
    const auto& gate = std::get<Gate>(category.body);
    std::size_t leaves_so_far = 0;
    for (const auto& k : kept) leaves_so_far += std::get<Gate>(tree.node(*tree.find(k)).body).children.size();
    if (leaves_so_far + gate.children.size() > 10) break;
    std::string ids;
    for (std::size_t leaf : gate.children) {
      doc << "event " << tree.node(leaf).id << " rate=0\n";
      ids += (ids.empty() ? "" : ",") + tree.node(leaf).id;
    }
    doc << "gate " << category.id << " OR children=" << ids << "\n";
    kept.push_back(category.id);
  }
  std::string top_children;
  for (const auto& k : kept) top_children += (top_children.empty() ? "" : ",") + k;
  doc << "gate top OR children=" << top_children << "\ntop top\n";
  const auto pruned = parse_fault_tree(doc.str());
  ASSERT_EQ(pruned.leaves().size(), 10u);
  const std::vector<double> q(10, 0.01);
  EXPECT_NEAR(evaluate_top(pruned, std::span<const double>(q)), enumerate_top(pruned, q), 1e-12);
}

TEST(FaultTreeEvaluate, MonotoneInEveryLeaf) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tree = parse_fault_tree(random_tree_document(rng));
    std::vector<double> p(tree.leaves().size());
    for (auto& x : p) x = prob(rng);
    const double base = evaluate_top(tree, std::span<const double>(p));
    for (std::size_t k = 0; k < p.size(); ++k) {
      auto raised = p;
      raised[k] = p[k] + (1.0 - p[k]) * prob(rng);
      EXPECT_GE(evaluate_top(tree, std::span<const double>(raised)), base - 1e-15);
    }
  }
}

std::map<std::string, ReliabilityFunction, std::less<>> exponential_leaves(
    std::initializer_list<std::pair<const char*, double>> rates) {
  std::map<std::string, ReliabilityFunction, std::less<>> out;
  for (const auto& [id, lambda] : rates) {
    out.emplace(id, [lambda = lambda](double t) { return std::exp(-lambda * t); });
  }
  return out;
}

TEST(SystemMttf, SingleExponentialLeaf) {
  const auto tree = parse_fault_tree("event a rate=0.001\ntop a\n");
  const auto result = system_mttf(tree, exponential_leaves({{"a", 0.001}}));
  EXPECT_NEAR(result.hours, 1000.0, 10.0);
  EXPECT_FALSE(result.horizon_capped);
  EXPECT_GT(result.horizon_h, 1000.0 * std::log(1e6) - 1.0);
}

TEST(SystemMttf, SeriesOfTwoExponentials) {
  const auto tree = parse_fault_tree(
      "event a rate=0.001\nevent b rate=0.004\ngate t OR children=a,b\ntop t\n");
  const auto result = system_mttf(tree, exponential_leaves({{"a", 0.001}, {"b", 0.004}}));
  EXPECT_NEAR(result.hours, 200.0, 2.0);
}

TEST(SystemMttf, ParallelPairExceedsEitherLeaf) {
  const auto tree = parse_fault_tree(
      "event a rate=0.01\nevent b rate=0.01\ngate t AND children=a,b\ntop t\n");
  const auto result = system_mttf(tree, exponential_leaves({{"a", 0.01}, {"b", 0.01}}));
  EXPECT_NEAR(result.hours, 150.0, 1.5);
}

TEST(SystemMttf, CapYieldsFlaggedLowerBound) {
  const auto tree = parse_fault_tree("event a rate=0.001\ntop a\n");
  SystemMttfOptions options;
  options.cap_h = 100.0;
  const auto result = system_mttf(tree, exponential_leaves({{"a", 0.001}}), options);
  EXPECT_TRUE(result.horizon_capped);
  EXPECT_EQ(result.horizon_h, 100.0);
  EXPECT_LT(result.hours, 1000.0);
  EXPECT_NEAR(result.hours, 1000.0 * (1.0 - std::exp(-0.1)), 1e-3);
}

TEST(SystemMttf, MissingFunctionAndBadOptions) {
  const auto tree = parse_fault_tree(
      "event a rate=0.001\nevent b rate=0.004\ngate t OR children=a,b\ntop t\n");
  EXPECT_THROW(system_mttf(tree, exponential_leaves({{"a", 0.001}})), Error);
  SystemMttfOptions bad;
  bad.step_h = 0.0;
  EXPECT_THROW(system_mttf(tree, exponential_leaves({{"a", 0.001}, {"b", 0.004}}), bad), Error);
}

TEST(SystemMttf, TrapezoidErrorShrinksWithStep) {
  const auto tree = parse_fault_tree("event a rate=0.001\ntop a\n");
  const auto leaves = exponential_leaves({{"a", 0.001}});
  double previous_error = 0.0;
  for (double step : {8.0, 4.0, 2.0, 1.0}) {
    SystemMttfOptions options;
    options.step_h = step;
    options.survival_cutoff = 1e-12;
    const double error = std::abs(system_mttf(tree, leaves, options).hours - 1000.0);
    if (previous_error > 0.0) EXPECT_LE(error / previous_error, 0.5) << "step " << step;
    previous_error = error;
  }
}

TEST(SystemMttf, SmallTreeBoundedByWeakestComponent) {
  const auto tree = load_fault_tree(kModels + "uav_small.ft");
  const auto battery = models::build_battery_model(models::BatteryParams{});
  models::PropulsionParams prop_params;
  prop_params.configuration = models::MotorConfiguration::kPNPN;
  const auto propulsion = models::build_propulsion_model(prop_params);
  const models::ProcessorParams processor;

  auto operational = [](const markov::MarkovModel& model) {
    return [&model](double t) {
      const auto p0 = markov::StateDistribution::point_mass(model.size(), 0);
      return 1.0 - markov::absorbed_probability(model, markov::transient_distribution(model, p0, t));
    };
  };
  std::map<std::string, ReliabilityFunction, std::less<>> leaves;
  leaves.emplace("battery", operational(battery));
  leaves.emplace("propulsion", operational(propulsion));
  const double processor_mttf = models::processor_mttf(processor, 29.0);
  leaves.emplace("processor", [processor_mttf](double t) { return std::exp(-t / processor_mttf); });

  SystemMttfOptions options;
  options.step_h = 2.0;
  const auto result = system_mttf(tree, leaves, options);
  const double weakest = std::min({markov::mttf_from_state(battery, 0),
                                   markov::mttf_from_state(propulsion, 0), processor_mttf});
  EXPECT_GT(result.hours, 0.0);
  EXPECT_LE(result.hours, weakest);
}

}  // namespace
}  // namespace uavrel::fta
