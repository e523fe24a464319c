#include "uavrel/runtime/results.hpp"

#include <cmath>
#include <ostream>

#include <json.hpp>

namespace uavrel::runtime {

namespace {

std::string recommendation_field(const EvaluationResult& r) {
  return r.recommendation ? std::string(to_string(*r.recommendation)) : "-";
}

nlohmann::json finite_or_null(double value) {
  return std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
}

}  // namespace

void write_results_csv(std::ostream& out, std::span<const EvaluationResult> results) {
  out << "time_s";
  if (!results.empty()) {
    for (const auto& c : results.front().components) out << ',' << c.leaf_id << "_p," << c.leaf_id << "_mttf_h";
  }
  out << ",system_p,system_mttf_h,recommendation\n";
  for (const auto& r : results) {
    out << format_double(r.time_s);
    for (const auto& c : r.components) {
      out << ',' << format_double(c.probability) << ',' << format_double(c.mttf_h);
    }
    out << ',' << format_double(r.system_probability) << ',' << format_double(r.system_mttf_h)
        << ',' << recommendation_field(r) << '\n';
  }
}

void write_results_jsonl(std::ostream& out, std::span<const EvaluationResult> results) {
  for (const auto& r : results) {
    nlohmann::json row;
    row["time_s"] = r.time_s;
    nlohmann::json components = nlohmann::json::array();
    for (const auto& c : r.components) {
      components.push_back(
          {{"id", c.leaf_id}, {"probability", c.probability}, {"mttf_h", finite_or_null(c.mttf_h)}});
    }
    row["components"] = std::move(components);
    row["system_probability"] = r.system_probability;
    row["system_mttf_h"] = finite_or_null(r.system_mttf_h);
    row["system_mttf_capped"] = r.system_mttf_capped;
    row["recommendation"] = r.recommendation ? nlohmann::json(std::string(to_string(*r.recommendation)))
                                             : nlohmann::json(nullptr);
    out << row.dump() << '\n';
  }
}

}  // namespace uavrel::runtime
