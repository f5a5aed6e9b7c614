#include "sarx/features/feature_expectation.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <unordered_map>

#include "sarx/errors.hpp"
#include "sarx/features/rollout.hpp"

namespace sarx::features {

using sar::Action;
using sar::FeatureVector;
using sar::Observation;
using sar::SarBelief;

namespace {

FeatureExpectation exact(FeatureVector mu) {
    FeatureExpectation out;
    out.mu = std::move(mu);
    out.method = Method::Exact;
    return out;
}

class ClosedLoopEnumerator {
public:
    ClosedLoopEnumerator(ClosedLoopTree& tree, const sar::SarModel& model, FeatureVector& mu)
        : tree_(tree), model_(model), mu_(mu) {}

    void descend(int node, const sar::SarState& s, double weight, double discount) {
        const sar::SarState next = model_.transition(s, tree_.action(node));
        discount *= model_.discount();
        mu_.add_scaled(model_.phi_state(next), weight * discount);
        if (next.terminal != sar::TerminalCause::None) return;

        if (tree_.is_point_mass(node)) {
            descend(tree_.child(node, Observation::none()), next, weight, discount);
            return;
        }
        if (model_.in_detection_radius(next.robot, next.target)) {
            const double p = model_.scenario().p_detect;
            if (p > 0.0) descend(tree_.child(node, Observation::at(next.target)), next, weight * p, discount);
            if (p < 1.0) descend(tree_.child(node, Observation::none()), next, weight * (1.0 - p), discount);
            return;
        }
        descend(tree_.child(node, Observation::none()), next, weight, discount);
    }

private:
    ClosedLoopTree& tree_;
    const sar::SarModel& model_;
    FeatureVector& mu_;
};

// Belief-space recursion shared by the closed- and open-loop cross-checks.
// `choose(belief, t)` returns the action at decision t or nullopt to stop.
using Chooser = std::function<std::optional<Action>(const SarBelief&, int)>;

class BeliefRecursion {
public:
    BeliefRecursion(const sar::SarModel& model, Chooser choose)
        : model_(model), choose_(std::move(choose)) {}

    FeatureVector evaluate(const SarBelief& b0) {
        FeatureVector mu = model_.phi_belief(b0);
        const auto split = model_.split_live(b0);
        if (split.live) mu.add_scaled(future(*split.live, 0), split.live_mass);
        return mu;
    }

private:
    FeatureVector future(const SarBelief& b, int t) {
        const int features = model_.scenario().num_features();
        if (!model_.can_act(b)) return FeatureVector(features);
        const std::optional<Action> a = choose_(b, t);
        if (!a) return FeatureVector(features);

        std::string key = model_.belief_key(b) + '#' + std::to_string(t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int next = model_.step_index(model_.grid().index(b.robot), *a);
        const SarBelief arrival{model_.grid().cell(next), b.battery - 1, b.target};
        FeatureVector mu = model_.phi_belief(arrival);
        for (const auto& br : model_.successors(b, *a).branches)
            mu.add_scaled(future(br.next, t + 1), br.probability);
        for (double& v : mu.values) v *= model_.discount();
        memo_.emplace(std::move(key), mu);
        return mu;
    }

    const sar::SarModel& model_;
    Chooser choose_;
    std::unordered_map<std::string, FeatureVector> memo_;
};

struct MomentAccumulator {
    std::vector<double> sum;
    std::vector<double> sum_sq;

    explicit MomentAccumulator(std::size_t n) : sum(n, 0.0), sum_sq(n, 0.0) {}

    void add(const FeatureVector& f) {
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += f[i];
            sum_sq[i] += f[i] * f[i];
        }
    }

    FeatureExpectation finish(std::int64_t n) const {
        FeatureExpectation out;
        out.method = Method::MonteCarlo;
        out.mu = FeatureVector(sum.size());
        std::vector<double> se(sum.size(), 0.0);
        const double dn = static_cast<double>(n);
        for (std::size_t i = 0; i < sum.size(); ++i) {
            const double mean = sum[i] / dn;
            out.mu[i] = mean;
            if (n > 1) {
                const double var = std::max(0.0, (sum_sq[i] - dn * mean * mean) / (dn - 1.0));
                se[i] = std::sqrt(var / dn);
            }
        }
        out.standard_errors = std::move(se);
        return out;
    }
};

}  // namespace

FeatureExpectation feature_expectation_closed(const solver::AlphaPolicy& policy,
                                              const SarBelief& b0, const sar::SarModel& model) {
    FeatureVector mu(model.scenario().num_features());
    std::optional<ClosedLoopTree> tree;
    if (auto live = live_belief(b0, model)) tree.emplace(policy, model, std::move(*live));

    const auto p = b0.target.probabilities();
    for (std::size_t y = 0; y < p.size(); ++y) {
        if (p[y] <= 0.0) continue;
        const sar::SarState s0 = model.make_state(b0.robot, model.grid().cell(static_cast<int>(y)), b0.battery);
        mu.add_scaled(model.phi_state(s0), p[y]);
        if (s0.terminal != sar::TerminalCause::None) continue;
        ClosedLoopEnumerator(*tree, model, mu).descend(ClosedLoopTree::kRoot, s0, p[y], 1.0);
    }
    return exact(std::move(mu));
}

FeatureExpectation feature_expectation_closed_recursive(const solver::AlphaPolicy& policy,
                                                        const SarBelief& b0,
                                                        const sar::SarModel& model) {
    BeliefRecursion rec(model, [&](const SarBelief& b, int) -> std::optional<Action> {
        return solver::policy_action(policy, b);
    });
    return exact(rec.evaluate(b0));
}

void check_feasible(std::span<const Action> actions, const SarBelief& b0, const sar::SarModel& model) {
    sar::Cell robot = b0.robot;
    int battery = b0.battery;
    if (!actions.empty() && model.battery_exhausted(robot, battery))
        throw InfeasiblePath("the start state is already battery-terminal");
    for (std::size_t k = 0; k < actions.size(); ++k) {
        robot = model.grid().step(robot, actions[k]);
        --battery;
        if (model.battery_exhausted(robot, battery) && k + 1 < actions.size())
            throw InfeasiblePath("battery-terminal after action " + std::to_string(k + 1) + " of " +
                                 std::to_string(actions.size()) + "; truncate the path first");
    }
}

FeatureExpectation feature_expectation_open(std::span<const Action> actions, const SarBelief& b0,
                                            const sar::SarModel& model) {
    check_feasible(actions, b0, model);
    FeatureVector mu(model.scenario().num_features());
    const double gamma = model.discount();
    const auto p = b0.target.probabilities();
    for (std::size_t y = 0; y < p.size(); ++y) {
        if (p[y] <= 0.0) continue;
        sar::SarState s = model.make_state(b0.robot, model.grid().cell(static_cast<int>(y)), b0.battery);
        double discount = 1.0;
        mu.add_scaled(model.phi_state(s), p[y]);
        for (Action a : actions) {
            if (s.terminal != sar::TerminalCause::None) break;
            s = model.transition(s, a);
            discount *= gamma;
            mu.add_scaled(model.phi_state(s), p[y] * discount);
        }
    }
    return exact(std::move(mu));
}

FeatureExpectation feature_expectation_open_recursive(std::span<const Action> actions,
                                                      const SarBelief& b0,
                                                      const sar::SarModel& model) {
    check_feasible(actions, b0, model);
    BeliefRecursion rec(model, [&](const SarBelief&, int t) -> std::optional<Action> {
        if (t >= static_cast<int>(actions.size())) return std::nullopt;
        return actions[t];
    });
    return exact(rec.evaluate(b0));
}

FeatureExpectation feature_expectation_mc(const solver::AlphaPolicy& policy, const SarBelief& b0,
                                          const sar::SarModel& model, std::int64_t n_rollouts,
                                          std::uint64_t seed) {
    if (n_rollouts < 1) throw std::invalid_argument("n_rollouts must be positive");
    std::mt19937_64 rng(seed);
    std::optional<ClosedLoopTree> tree;
    if (auto live = live_belief(b0, model)) tree.emplace(policy, model, std::move(*live));
    MomentAccumulator acc(static_cast<std::size_t>(model.scenario().num_features()));
    for (std::int64_t i = 0; i < n_rollouts; ++i) {
        const sar::Cell target = sample_target(b0, model, rng);
        if (!tree) {
            // Nothing can act: every rollout ends at t = 0.
            acc.add(model.phi_state(model.make_state(b0.robot, target, b0.battery)));
            continue;
        }
        acc.add(run_closed_loop(*tree, b0, target, model, rng, false).discounted_features);
    }
    return acc.finish(n_rollouts);
}

FeatureExpectation feature_expectation_mc(std::span<const Action> actions, const SarBelief& b0,
                                          const sar::SarModel& model, std::int64_t n_rollouts,
                                          std::uint64_t seed) {
    if (n_rollouts < 1) throw std::invalid_argument("n_rollouts must be positive");
    check_feasible(actions, b0, model);
    std::mt19937_64 rng(seed);
    MomentAccumulator acc(static_cast<std::size_t>(model.scenario().num_features()));
    for (std::int64_t i = 0; i < n_rollouts; ++i) {
        const sar::Cell target = sample_target(b0, model, rng);
        acc.add(run_open_loop(actions, b0, target, model, rng, false).discounted_features);
    }
    return acc.finish(n_rollouts);
}

double value_from_features(const sar::FeatureWeights& alpha, const FeatureExpectation& mu) {
    return sar::dot(alpha, mu.mu);
}

}  // namespace sarx::features
