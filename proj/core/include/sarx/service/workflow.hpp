#pragma once

#include <string_view>
#include <vector>

#include "sarx/counterfactual/counterfactual.hpp"
#include "sarx/explain/contrast.hpp"
#include "sarx/explain/render.hpp"
#include "sarx/features/feature_expectation.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::service {

/// Everything produced by contrasting the solved policy with one user path.
struct CounterfactualResult {
    counterfactual::UserPath path;
    std::vector<sar::Action> actions;           // the whole drawn path
    std::vector<sar::Action> executed_actions;  // the prefix the battery allows
    counterfactual::FeasibilityReport feasibility;
    features::FeatureExpectation mu_user;
    features::FeatureExpectation mu_optimal;
    double value_user = 0.0;
    double value_optimal = 0.0;
    explain::ContrastReport report;
    explain::ExplanationText explanation;
};

/// path -> actions -> truncation -> open-loop mu -> contrast with the policy's
/// exact mu -> rendered text. Throws the path errors of path_to_actions,
/// ValidationError, UnknownTemplateSet.
CounterfactualResult run_counterfactual(const solver::AlphaPolicy& policy, const sar::Scenario& scenario,
                                        const counterfactual::UserPath& path,
                                        std::string_view template_set = explain::kDefaultTemplateSet);

/// Two-row table of mu values in the layout used by the case studies.
std::string format_table(const CounterfactualResult& result, const std::vector<std::string>& labels);

}  // namespace sarx::service
