#include "uavrel/runtime/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uavrel/error.hpp"
#include "uavrel/markov/absorbing.hpp"
#include "uavrel/markov/transient.hpp"
#include "uavrel/models/battery.hpp"
#include "uavrel/models/processor.hpp"
#include "uavrel/models/propulsion.hpp"

namespace uavrel::runtime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Absorption probabilities from every start state on a uniform time grid,
// extended on demand.
class AbsorptionCurve {
 public:
  AbsorptionCurve(const markov::MarkovModel& model, double step_h)
      : model_(&model),
        step_h_(step_h),
        step_(markov::transition_matrix(model, step_h)),
        power_(Eigen::MatrixXd::Identity(model.size(), model.size())),
        absorbing_(Eigen::VectorXd::Zero(model.size())) {
    for (auto s : model.absorbing()) absorbing_(s) = 1.0;
    absorbed_.push_back(absorbing_);
  }

  double at(markov::StateIndex start, double t) {
    const double k_real = t / step_h_;
    const double k_round = std::round(k_real);
    if (std::abs(k_real - k_round) > 1e-9) {
      const auto p0 = markov::StateDistribution::point_mass(model_->size(), start);
      return markov::absorbed_probability(*model_, markov::transient_distribution(*model_, p0, t));
    }
    const auto k = static_cast<std::size_t>(k_round);
    while (absorbed_.size() <= k) {
      power_ = power_ * step_;
      absorbed_.push_back(power_ * absorbing_);
    }
    return std::clamp(absorbed_[k](static_cast<Eigen::Index>(start)), 0.0, 1.0);
  }

 private:
  const markov::MarkovModel* model_;
  double step_h_;
  Eigen::MatrixXd step_;
  Eigen::MatrixXd power_;
  Eigen::VectorXd absorbing_;
  std::vector<Eigen::VectorXd> absorbed_;
};

// A Markov model plus per-start-state caches.
struct ModelSlot {
  explicit ModelSlot(markov::MarkovModel m) : model(std::move(m)) {}

  markov::MarkovModel model;
  std::map<markov::StateIndex, double> horizon_probability;
  std::map<markov::StateIndex, double> mttf;
  std::unique_ptr<AbsorptionCurve> curve;

  double probability_within(markov::StateIndex s, double horizon_h) {
    auto [it, fresh] = horizon_probability.try_emplace(s, 0.0);
    if (fresh) {
      const auto p0 = markov::StateDistribution::point_mass(model.size(), s);
      it->second = std::clamp(
          markov::absorbed_probability(model, markov::transient_distribution(model, p0, horizon_h)),
          0.0, 1.0);
    }
    return it->second;
  }

  double mttf_from(markov::StateIndex s) {
    auto [it, fresh] = mttf.try_emplace(s, 0.0);
    if (fresh) it->second = markov::mttf_from_state(model, s);
    return it->second;
  }

  AbsorptionCurve& curve_with_step(double step_h) {
    if (!curve) curve = std::make_unique<AbsorptionCurve>(model, step_h);
    return *curve;
  }
};

enum class LeafKind { kConstant, kBattery, kPropulsion, kProcessor, kMarkov };

struct LeafState {
  std::string id;
  LeafKind kind = LeafKind::kConstant;
  double rate = 0.0;
  std::string markov_ref;
  bool uses_level = false;
  bool uses_activity = false;
  bool uses_motors = false;
  bool uses_temperature = false;

  bool latched_failed = false;
  double hazard = 0.0;
  double held_temperature_c = 0.0;
};

bool binds(const fta::ComplexBasicEvent& cbe, std::string_view symptom) {
  return std::find(cbe.symptoms.begin(), cbe.symptoms.end(), symptom) != cbe.symptoms.end();
}

}  // namespace

std::string_view to_string(Recommendation recommendation) noexcept {
  return recommendation == Recommendation::kContinue ? "CONTINUE" : "EMERGENCY_LANDING";
}

Recommendation decide(double probability, double threshold) {
  return probability > threshold ? Recommendation::kEmergencyLanding : Recommendation::kContinue;
}

const ComponentResult& EvaluationResult::component(std::string_view leaf_id) const {
  for (const auto& c : components) {
    if (c.leaf_id == leaf_id) return c;
  }
  throw Error(ErrorCode::kInvalidArgument, "no component '" + std::string(leaf_id) + "'");
}

struct Engine::State {
  MissionConfig config;
  fta::FaultTree tree;
  std::vector<LeafState> leaves;
  std::map<models::Activity, ModelSlot> battery;
  std::map<models::MotorConfiguration, ModelSlot> propulsion;
  std::map<std::string, ModelSlot, std::less<>> custom;
  std::optional<double> last_time_s;
  std::optional<double> aborted_at_s;

  ModelSlot& battery_slot(models::Activity activity) {
    auto it = battery.find(activity);
    if (it == battery.end()) {
      it = battery.emplace(activity, ModelSlot(models::build_battery_model(config.battery, activity)))
               .first;
    }
    return it->second;
  }

  models::PropulsionParams propulsion_params(models::MotorConfiguration configuration) const {
    models::PropulsionParams p;
    p.configuration = configuration;
    p.motor_failure_rate = config.propulsion.motor_failure_rate;
    auto it = config.propulsion.tolerable_single_losses.find(configuration);
    if (it != config.propulsion.tolerable_single_losses.end()) p.tolerable_single_losses = it->second;
    return p;
  }

  ModelSlot& propulsion_slot(models::MotorConfiguration configuration) {
    auto it = propulsion.find(configuration);
    if (it == propulsion.end()) {
      it = propulsion
               .emplace(configuration,
                        ModelSlot(models::build_propulsion_model(propulsion_params(configuration))))
               .first;
    }
    return it->second;
  }
};

Engine::Engine(MissionConfig config) : Engine(config, load_tree(config)) {}

Engine::Engine(MissionConfig config, fta::FaultTree tree)
    : state_(std::make_unique<State>(State{std::move(config), std::move(tree), {}, {}, {}, {}, {}, {}})) {
  validate(state_->config);
  for (const auto& [name, model] : state_->tree.markov_models()) {
    state_->custom.emplace(name, ModelSlot(model));
  }
  for (std::size_t index : state_->tree.leaves()) {
    const auto& node = state_->tree.node(index);
    LeafState leaf;
    leaf.id = node.id;
    if (const auto* event = std::get_if<fta::BasicEvent>(&node.body)) {
      leaf.kind = LeafKind::kConstant;
      leaf.rate = event->rate;
    } else {
      const auto& cbe = std::get<fta::ComplexBasicEvent>(node.body);
      switch (cbe.model) {
        case fta::CbeModel::kBattery: leaf.kind = LeafKind::kBattery; break;
        case fta::CbeModel::kPropulsion: leaf.kind = LeafKind::kPropulsion; break;
        case fta::CbeModel::kProcessor: leaf.kind = LeafKind::kProcessor; break;
        case fta::CbeModel::kMarkov: leaf.kind = LeafKind::kMarkov; break;
      }
      leaf.markov_ref = cbe.ref;
      leaf.uses_level = binds(cbe, "battery_pct");
      leaf.uses_activity = binds(cbe, "activity");
      leaf.uses_motors = binds(cbe, "motor_status");
      leaf.uses_temperature = binds(cbe, "temp_c");
    }
    state_->leaves.push_back(std::move(leaf));
  }
}

Engine::~Engine() = default;
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;

const fta::FaultTree& Engine::tree() const noexcept { return state_->tree; }
const MissionConfig& Engine::config() const noexcept { return state_->config; }
std::optional<double> Engine::aborted_at() const noexcept { return state_->aborted_at_s; }

EvaluationResult Engine::evaluate_sample(const TelemetrySample& sample) {
  auto& st = *state_;
  const auto& cfg = st.config;
  if (!(sample.time_s >= 0.0) || !std::isfinite(sample.time_s)) {
    throw Error(ErrorCode::kInvalidArgument, "sample time must be finite and non-negative");
  }
  if (st.last_time_s && !(sample.time_s > *st.last_time_s)) {
    throw Error(ErrorCode::kOutOfOrderSample, "sample at " + format_double(sample.time_s) +
                                                  " s does not follow " +
                                                  format_double(*st.last_time_s) + " s");
  }
  models::validate(sample.reading);
  const auto& reading = sample.reading;
  const double horizon = cfg.evaluation_horizon_h;
  const double mttf_step = cfg.system_mttf.step_h;
  const double elapsed_h = (sample.time_s - st.last_time_s.value_or(0.0)) * cfg.hours_per_second;

  EvaluationResult result;
  result.time_s = sample.time_s;
  std::map<std::string, fta::ReliabilityFunction, std::less<>> reliability;

  for (auto& leaf : st.leaves) {
    ComponentResult component{leaf.id, 0.0, kInf};
    fta::ReliabilityFunction r_of_t;

    // Markov-backed leaves resolve to a model slot and a start state.
    ModelSlot* slot = nullptr;
    markov::StateIndex start = 0;

    switch (leaf.kind) {
      case LeafKind::kConstant: {
        const double rate = leaf.rate;
        component.probability = -std::expm1(-rate * horizon);
        component.mttf_h = rate > 0.0 ? 1.0 / rate : kInf;
        r_of_t = [rate](double t) { return std::exp(-rate * t); };
        break;
      }
      case LeafKind::kBattery: {
        const auto activity = leaf.uses_activity ? reading.activity : models::Activity::kActive;
        slot = &st.battery_slot(activity);
        start = leaf.uses_level ? models::battery_state_from_level(reading.battery_level) : 0;
        break;
      }
      case LeafKind::kPropulsion: {
        slot = &st.propulsion_slot(reading.configuration);
        if (leaf.uses_motors) {
          start = models::propulsion_state_from_symptom(st.propulsion_params(reading.configuration),
                                                        reading.motor_status);
        }
        break;
      }
      case LeafKind::kMarkov: {
        slot = &st.custom.find(leaf.markov_ref)->second;
        break;
      }
      case LeafKind::kProcessor: {
        const double current_c =
            leaf.uses_temperature ? reading.processor_temp : cfg.processor.ref_temperature_c;
        // The previous reading holds until now; before the first sample the
        // first reading is assumed.
        const double held_c = st.last_time_s ? leaf.held_temperature_c : current_c;
        const models::TemperatureSegment segment{elapsed_h, held_c};
        leaf.hazard += models::processor_hazard(std::span(&segment, 1), cfg.processor);
        leaf.held_temperature_c = current_c;
        component.probability = -std::expm1(-leaf.hazard);
        component.mttf_h = models::processor_mttf(cfg.processor, current_c);
        const double mttf = component.mttf_h;
        r_of_t = [mttf](double t) { return std::exp(-t / mttf); };
        break;
      }
    }

    if (slot) {
      if (slot->model.is_absorbing(start)) leaf.latched_failed = true;
      if (!leaf.latched_failed) {
        component.probability = slot->probability_within(start, horizon);
        component.mttf_h = slot->mttf_from(start);
        AbsorptionCurve* curve = &slot->curve_with_step(mttf_step);
        r_of_t = [curve, start](double t) { return 1.0 - curve->at(start, t); };
      }
    }
    if (leaf.latched_failed) {
      component.probability = 1.0;
      component.mttf_h = 0.0;
      r_of_t = [](double) { return 0.0; };
    }
    reliability.emplace(leaf.id, std::move(r_of_t));
    result.components.push_back(std::move(component));
  }

  std::vector<double> by_leaf;
  by_leaf.reserve(result.components.size());
  for (const auto& c : result.components) by_leaf.push_back(c.probability);
  result.system_probability = fta::evaluate_top(st.tree, std::span<const double>(by_leaf));

  if (cfg.compute_system_mttf) {
    const auto mttf = fta::system_mttf(st.tree, reliability, cfg.system_mttf);
    result.system_mttf_h = mttf.hours;
    result.system_mttf_capped = mttf.horizon_capped;
  } else {
    result.system_mttf_h = std::numeric_limits<double>::quiet_NaN();
  }

  if (!st.aborted_at_s) {
    const auto rec = decide(result.system_probability, cfg.threshold);
    result.recommendation = rec;
    if (rec == Recommendation::kEmergencyLanding) st.aborted_at_s = sample.time_s;
  }
  st.last_time_s = sample.time_s;
  return result;
}

std::string format_verdict(const Verdict& verdict) {
  if (verdict.completed()) return "COMPLETED";
  return "ABORTED_AT " + format_double(*verdict.aborted_at_s) + "s";
}

ReplayResult replay(std::span<const TelemetrySample> stream, const MissionConfig& config) {
  return replay(stream, config, load_tree(config));
}

ReplayResult replay(std::span<const TelemetrySample> stream, const MissionConfig& config,
                    const fta::FaultTree& tree) {
  if (stream.empty()) throw Error(ErrorCode::kEmptyStream, "telemetry stream has no samples");
  Engine engine(config, tree);
  ReplayResult out;
  out.results.reserve(stream.size());
  for (const auto& sample : stream) out.results.push_back(engine.evaluate_sample(sample));
  out.verdict.aborted_at_s = engine.aborted_at();
  return out;
}

}  // namespace uavrel::runtime
