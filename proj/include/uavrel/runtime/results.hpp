#pragma once

#include <iosfwd>
#include <span>

#include "uavrel/runtime/engine.hpp"

namespace uavrel::runtime {

/// Columns: time_s, then <leaf>_p and <leaf>_mttf_h per leaf in tree order,
/// then system_p, system_mttf_h, recommendation ("-" after an abort).
void write_results_csv(std::ostream& out, std::span<const EvaluationResult> results);

/// One JSON object per line with the same fields; non-finite MTTFs are null.
void write_results_jsonl(std::ostream& out, std::span<const EvaluationResult> results);

}  // namespace uavrel::runtime
