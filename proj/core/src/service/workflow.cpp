#include "sarx/service/workflow.hpp"

#include <cstdio>

#include "sarx/errors.hpp"

namespace sarx::service {

CounterfactualResult run_counterfactual(const solver::AlphaPolicy& policy, const sar::Scenario& scenario,
                                        const counterfactual::UserPath& path, std::string_view template_set) {
    if (!(policy.scenario() == scenario))
        throw ValidationError("/policy", "policy was solved for a different scenario");
    const sar::SarModel model(scenario);
    const sar::SarBelief b0 = model.initial_belief();
    const sar::FeatureWeights alpha = sar::feature_weights(scenario);

    CounterfactualResult r;
    r.path = path;
    r.actions = counterfactual::path_to_actions(path, scenario);
    auto [executed, feasibility] = counterfactual::feasibility_truncate(r.actions, scenario);
    r.executed_actions = std::move(executed);
    r.feasibility = std::move(feasibility);

    r.mu_user = features::feature_expectation_open(r.executed_actions, b0, model);
    r.mu_optimal = features::feature_expectation_closed(policy, b0, model);
    r.value_user = features::value_from_features(alpha, r.mu_user);
    r.value_optimal = features::value_from_features(alpha, r.mu_optimal);
    r.report = explain::contrast(r.mu_optimal, r.mu_user, alpha, sar::feature_labels(scenario), r.feasibility);
    r.explanation = explain::render_explanation(r.report, template_set);
    return r;
}

std::string format_table(const CounterfactualResult& result, const std::vector<std::string>& labels) {
    std::string out;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-10s", "");
    out += buf;
    for (const auto& l : labels) {
        std::snprintf(buf, sizeof buf, "%9s", l.c_str());
        out += buf;
    }
    out += '\n';
    auto row = [&](const char* name, const sar::FeatureVector& mu) {
        std::snprintf(buf, sizeof buf, "%-10s", name);
        out += buf;
        for (double v : mu.values) {
            std::snprintf(buf, sizeof buf, "%9.3f", v);
            out += buf;
        }
        out += '\n';
    };
    row("optimal", result.mu_optimal.mu);
    row("user", result.mu_user.mu);
    return out;
}

}  // namespace sarx::service
