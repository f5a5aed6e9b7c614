#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "sarx/counterfactual/counterfactual.hpp"
#include "sarx/errors.hpp"
#include "sarx/explain/contrast.hpp"
#include "sarx/explain/render.hpp"
#include "sarx/features/feature_expectation.hpp"
#include "sarx/service/simulate.hpp"
#include "sarx/service/workflow.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::service {

using nlohmann::json;

inline constexpr int kFormatVersion = 1;

json to_json(sar::Cell c);
/// `path` prefixes field paths in the ValidationError.
sar::Cell cell_from_json(const json& j, const std::string& path);

/// Every field written explicitly, defaults included.
json to_json(const sar::Scenario& s);
/// Optional fields take their defaults. Collects every problem (types,
/// unknown keys, ranges) into one ValidationError.
sar::Scenario scenario_from_json(const json& j);
/// 16 hex digits of FNV-1a over the canonical scenario document.
std::string scenario_id(const sar::Scenario& s);

json to_json(const solver::SolveStats& stats);
json to_json(const solver::AlphaPolicy& policy);
/// Inverse of to_json; doubles round-trip exactly.
solver::AlphaPolicy policy_from_json(const json& j);
std::string policy_id(const solver::AlphaPolicy& policy);

json to_json(const sar::SarState& s);
json to_json(const sar::Observation& o);
json to_json(const sar::SarBelief& b);
json to_json(const Trace& trace);

/// "[[x,y], ...]"; throws ValidationError with "/path/i" paths.
counterfactual::UserPath path_from_json(const json& j);
json to_json(const counterfactual::UserPath& path);
json to_json(const counterfactual::FeasibilityReport& r);
json to_json(const features::FeatureExpectation& mu);
json to_json(const explain::ContrastReport& r);
json to_json(const explain::ExplanationText& e);
json to_json(const CounterfactualResult& r);

json to_json(const ValidationError& e);

}  // namespace sarx::service
