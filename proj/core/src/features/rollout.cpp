#include "sarx/features/rollout.hpp"

#include <cmath>

#include "sarx/errors.hpp"

namespace sarx::features {

using sar::Action;
using sar::Observation;
using sar::SarBelief;

ClosedLoopTree::ClosedLoopTree(const solver::AlphaPolicy& policy, const sar::SarModel& model,
                               SarBelief live_root)
    : policy_(policy), model_(model) {
    add(std::move(live_root));
}

int ClosedLoopTree::add(SarBelief b) {
    Node n;
    std::size_t id = 0;
    if (b.target.is_point_mass(&id)) n.point_mass = static_cast<int>(id);
    if (model_.can_act(b)) n.action = solver::policy_action(policy_, b);
    n.belief = std::move(b);
    nodes_.push_back(std::move(n));
    return static_cast<int>(nodes_.size()) - 1;
}

int ClosedLoopTree::child(int node, const Observation& o) {
    if (!nodes_[node].action) throw TerminalStateStep("belief node has no action");
    const Action a = *nodes_[node].action;
    const int next = model_.step_index(model_.grid().index(nodes_[node].belief.robot), a);
    const sar::Cell next_cell = model_.grid().cell(next);
    const int battery = nodes_[node].belief.battery - 1;
    const auto cells = static_cast<std::size_t>(model_.num_cells());

    if (nodes_[node].point_mass >= 0) {
        if (nodes_[node].no_detect < 0) {
            const auto y = static_cast<std::size_t>(nodes_[node].point_mass);
            const int c = add(SarBelief{next_cell, battery,
                                        pomdp::DiscreteDistribution::point_mass(y, cells)});
            nodes_[node].no_detect = c;
        }
        return nodes_[node].no_detect;
    }

    if (o.detected) {
        const int y = model_.grid().index(*o.detected);
        if (nodes_[node].detect.empty()) nodes_[node].detect.assign(cells, -1);
        if (nodes_[node].detect[y] < 0) {
            const int c = add(SarBelief{next_cell, battery,
                                        pomdp::DiscreteDistribution::point_mass(
                                            static_cast<std::size_t>(y), cells)});
            nodes_[node].detect[y] = c;
        }
        return nodes_[node].detect[y];
    }

    if (nodes_[node].no_detect < 0) {
        std::vector<double> w(cells);
        model_.no_detect_weights(nodes_[node].belief.target.probabilities(), next, w);
        const int c = add(SarBelief{next_cell, battery,
                                    pomdp::DiscreteDistribution::from_weights(std::move(w))});
        nodes_[node].no_detect = c;
    }
    return nodes_[node].no_detect;
}

sar::Cell sample_target(const SarBelief& b, const sar::SarModel& model, std::mt19937_64& rng) {
    const double u = uniform01(rng);
    const auto p = b.target.probabilities();
    double cum = 0.0;
    int last = -1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        cum += p[i];
        last = static_cast<int>(i);
        if (u < cum) return model.grid().cell(last);
    }
    return model.grid().cell(last);
}

std::optional<SarBelief> live_belief(const SarBelief& b0, const sar::SarModel& model) {
    auto split = model.split_live(b0);
    return std::move(split.live);
}

namespace {

Observation sample_observation(const sar::SarState& s, const sar::SarModel& model,
                               std::mt19937_64& rng) {
    if (s.robot == s.target) return Observation::at(s.target);
    if (model.in_detection_radius(s.robot, s.target)) {
        return uniform01(rng) < model.scenario().p_detect ? Observation::at(s.target)
                                                          : Observation::none();
    }
    return Observation::none();
}

struct Recorder {
    const sar::SarModel& model;
    Episode& ep;
    bool record;
    double discount = 1.0;

    void step(int t, const sar::SarState& s, std::optional<Action> a,
              std::optional<Observation> o, const SarBelief* belief) {
        const double r = model.reward(s);
        ep.discounted_return += discount * r;
        ep.discounted_features.add_scaled(model.phi_state(s), discount);
        if (record) {
            StepRecord rec{t, s, a, std::move(o), r, discount * r, std::nullopt};
            if (belief) rec.belief = *belief;
            ep.steps.push_back(std::move(rec));
        }
    }
};

template <class Act, class Observe, class Belief>
Episode run(const SarBelief& b0, sar::Cell target, const sar::SarModel& model,
            std::mt19937_64& rng, bool record, Act&& act, Observe&& observe, Belief&& belief) {
    Episode ep;
    ep.target = target;
    ep.discounted_features = sar::FeatureVector(model.scenario().num_features());
    Recorder rec{model, ep, record};
    const double gamma = model.discount();

    sar::SarState s = model.make_state(b0.robot, target, b0.battery);
    rec.step(0, s, std::nullopt, std::nullopt, s.terminal == sar::TerminalCause::None ? belief() : nullptr);
    for (int t = 1; s.terminal == sar::TerminalCause::None; ++t) {
        const std::optional<Action> a = act(t - 1);
        if (!a) break;
        s = model.transition(s, *a);
        const Observation o = sample_observation(s, model, rng);
        rec.discount *= gamma;
        if (s.terminal == sar::TerminalCause::None) observe(o);
        rec.step(t, s, a, o, s.terminal == sar::TerminalCause::None ? belief() : nullptr);
    }
    ep.cause = s.terminal;
    return ep;
}

}  // namespace

Episode run_closed_loop(ClosedLoopTree& tree, const SarBelief& b0, sar::Cell target,
                        const sar::SarModel& model, std::mt19937_64& rng, bool record) {
    int node = ClosedLoopTree::kRoot;
    return run(
        b0, target, model, rng, record,
        [&](int) -> std::optional<Action> { return tree.action(node); },
        [&](const Observation& o) { node = tree.child(node, o); },
        [&]() -> const SarBelief* { return &tree.belief(node); });
}

Episode run_open_loop(std::span<const Action> actions, const SarBelief& b0, sar::Cell target,
                      const sar::SarModel& model, std::mt19937_64& rng, bool record) {
    return run(
        b0, target, model, rng, record,
        [&](int t) -> std::optional<Action> {
            if (t >= static_cast<int>(actions.size())) return std::nullopt;
            return actions[t];
        },
        [](const Observation&) {}, []() -> const SarBelief* { return nullptr; });
}

}  // namespace sarx::features
