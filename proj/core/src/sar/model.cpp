#include "sarx/sar/model.hpp"

#include <cstring>

#include "sarx/errors.hpp"

namespace sarx::sar {

std::string_view to_string(TerminalCause c) {
    switch (c) {
        case TerminalCause::None: return "none";
        case TerminalCause::TargetFound: return "target-found";
        case TerminalCause::Battery: return "battery";
    }
    return "?";
}

std::string to_string(const Observation& o) {
    return o.detected ? "detect" + to_string(*o.detected) : "no-detect";
}

int batt_to_go(Cell robot, Cell start) { return manhattan(robot, start); }

SarModel::SarModel(Scenario scenario) : scenario_(std::move(scenario)) {
    validate(scenario_);
    grid_ = scenario_.grid();
    const int c = grid_.num_cells();
    dist_to_start_.resize(c);
    step_.resize(static_cast<std::size_t>(c) * 4);
    radius_.assign(static_cast<std::size_t>(c) * c, 0);
    interest_reward_.assign(c, 0.0);
    interest_at_.assign(c, {});
    for (int i = 0; i < c; ++i) {
        const Cell ci = grid_.cell(i);
        dist_to_start_[i] = manhattan(ci, scenario_.start);
        for (Action a : kActions) step_[i * 4 + static_cast<int>(a)] = grid_.index(grid_.step(ci, a));
        for (int j = 0; j < c; ++j) radius_[i * c + j] = in_detection_radius(ci, grid_.cell(j));
    }
    for (int k = 0; k < scenario_.num_interests(); ++k) {
        const int idx = grid_.index(scenario_.interests[k].cell);
        interest_reward_[idx] += scenario_.interests[k].weight;
        interest_at_[idx].push_back(k);
    }
}

bool SarModel::in_detection_radius(Cell robot, Cell target) const {
    if (robot == target) return false;
    const int d = scenario_.metric == DetectionMetric::Chebyshev ? chebyshev(robot, target)
                                                                  : manhattan(robot, target);
    return d <= 1;
}

TerminalCause SarModel::is_terminal(const SarState& s) const {
    if (s.robot == s.target) return TerminalCause::TargetFound;
    if (battery_exhausted(s.robot, s.battery)) return TerminalCause::Battery;
    return TerminalCause::None;
}

SarState SarModel::make_state(Cell robot, Cell target, int battery) const {
    SarState s{robot, target, battery, TerminalCause::None};
    s.terminal = is_terminal(s);
    return s;
}

SarState SarModel::transition(const SarState& s, Action a) const {
    if (is_terminal(s) != TerminalCause::None)
        throw TerminalStateStep("cannot act in a terminal state");
    return make_state(grid_.step(s.robot, a), s.target, s.battery - 1);
}

double SarModel::observation_prob(const SarState& next, const Observation& o) const {
    if (next.robot == next.target) return o.detected == next.target ? 1.0 : 0.0;
    if (in_detection_radius(next.robot, next.target)) {
        if (!o.detected) return 1.0 - scenario_.p_detect;
        return *o.detected == next.target ? scenario_.p_detect : 0.0;
    }
    return o.detected ? 0.0 : 1.0;
}

FeatureVector SarModel::phi_state(const SarState& s, Action) const {
    FeatureVector phi(scenario_.num_features());
    for (int k = 0; k < scenario_.num_interests(); ++k)
        if (scenario_.interests[k].cell == s.robot) phi[k] = 1.0;
    if (s.robot == s.target) phi[scenario_.target_feature()] = 1.0;
    if (battery_exhausted(s.robot, s.battery)) phi[scenario_.battery_feature()] = 1.0;
    return phi;
}

FeatureVector SarModel::phi_belief(const SarBelief& b, Action) const {
    FeatureVector phi(scenario_.num_features());
    const int r = grid_.index(b.robot);
    for (int k : interest_at_[r]) phi[k] = 1.0;
    phi[scenario_.target_feature()] = b.target.probability(r);
    if (battery_exhausted(b.robot, b.battery)) phi[scenario_.battery_feature()] = 1.0;
    return phi;
}

double SarModel::reward(const SarState& s, Action a) const {
    return dot(feature_weights(scenario_), phi_state(s, a));
}

double SarModel::base_reward(int robot, int battery) const {
    double r = interest_reward_[robot];
    if (battery - dist_to_start_[robot] < 1) r += scenario_.battery_weight;
    return r;
}

SarBelief SarModel::initial_belief() const {
    return SarBelief{scenario_.start, scenario_.battery,
                     pomdp::DiscreteDistribution::uniform(static_cast<std::size_t>(num_cells()))};
}

pomdp::LiveSplit<SarBelief> SarModel::split_live(const SarBelief& b) const {
    const int r = grid_.index(b.robot);
    pomdp::LiveSplit<SarBelief> out;
    const double here = b.target.probability(r);
    out.expected_reward = base_reward(r, b.battery) + scenario_.target_weight * here;
    if (!can_act(b)) return out;
    out.live_mass = 1.0 - here;
    if (out.live_mass <= 0.0) {
        out.live_mass = 0.0;
        return out;
    }
    std::vector<double> p(b.target.probabilities().begin(), b.target.probabilities().end());
    p[r] = 0.0;
    out.live = SarBelief{b.robot, b.battery, pomdp::DiscreteDistribution::from_weights(std::move(p))};
    return out;
}

void SarModel::no_detect_weights(std::span<const double> b, int next_robot,
                                 std::span<double> out) const {
    const int c = num_cells();
    const double miss = 1.0 - scenario_.p_detect;
    const char* rad = &radius_[static_cast<std::size_t>(next_robot) * c];
    for (int y = 0; y < c; ++y) out[y] = rad[y] ? b[y] * miss : b[y];
    out[next_robot] = 0.0;
}

SarModel::Successors SarModel::successors(const SarBelief& b, Action a) const {
    if (!can_act(b)) throw TerminalStateStep("belief is battery-terminal; no action applies");
    const int c = num_cells();
    const int r = grid_.index(b.robot);
    const int next = step_index(r, a);
    const int battery = b.battery - 1;
    const Cell next_cell = grid_.cell(next);
    const auto p = b.target.probabilities();

    Successors out;
    const double found = p[next];
    out.expected_reward = base_reward(next, battery) + scenario_.target_weight * found;

    if (battery_exhausted(next_cell, battery)) {
        out.terminated = {{TerminalCause::TargetFound, found},
                          {TerminalCause::Battery, 1.0 - found}};
        return out;
    }
    out.terminated = {{TerminalCause::TargetFound, found}, {TerminalCause::Battery, 0.0}};

    std::vector<double> nd(c);
    no_detect_weights(p, next, nd);
    double total = 0.0;
    for (double w : nd) total += w;
    if (total > 0.0) {
        for (double& w : nd) w /= total;
        out.branches.push_back(
            {Observation::none(), total,
             SarBelief{next_cell, battery, pomdp::DiscreteDistribution(std::move(nd))}});
    }
    const double pd = scenario_.p_detect;
    for (int y = 0; y < c; ++y) {
        if (!in_radius(next, y) || !(p[y] * pd > 0.0)) continue;
        out.branches.push_back(
            {Observation::at(grid_.cell(y)), p[y] * pd,
             SarBelief{next_cell, battery,
                       pomdp::DiscreteDistribution::point_mass(static_cast<std::size_t>(y),
                                                               static_cast<std::size_t>(c))}});
    }
    return out;
}

std::string SarModel::belief_key(const SarBelief& b) const {
    const auto p = b.target.probabilities();
    std::string key(sizeof(int) * 2 + sizeof(double) * p.size(), '\0');
    const int head[2] = {grid_.index(b.robot), b.battery};
    std::memcpy(key.data(), head, sizeof(head));
    std::memcpy(key.data() + sizeof(head), p.data(), sizeof(double) * p.size());
    return key;
}

}  // namespace sarx::sar
