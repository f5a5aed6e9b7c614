#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sarx/sar/model.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::features {

/// Decision tree of a closed-loop policy over observation histories, expanded
/// on demand. Each node holds the agent's belief and the policy's action
/// there. Not thread-safe; build one per computation.
class ClosedLoopTree {
public:
    /// `live_root` must be a belief the agent can act in (target != robot).
    ClosedLoopTree(const solver::AlphaPolicy& policy, const sar::SarModel& model,
                   sar::SarBelief live_root);

    static constexpr int kRoot = 0;

    const sar::SarBelief& belief(int node) const { return nodes_[node].belief; }
    bool can_act(int node) const { return nodes_[node].action.has_value(); }
    sar::Action action(int node) const { return *nodes_[node].action; }
    /// Point-mass beliefs are fixed points of the filter, so every
    /// observation leads to the same child.
    bool is_point_mass(int node) const { return nodes_[node].point_mass >= 0; }
    int child(int node, const sar::Observation& o);
    std::size_t size() const noexcept { return nodes_.size(); }

private:
    struct Node {
        sar::SarBelief belief;
        std::optional<sar::Action> action;
        int point_mass = -1;
        int no_detect = -1;
        std::vector<int> detect;  // per target cell, lazily sized
    };

    int add(sar::SarBelief b);

    const solver::AlphaPolicy& policy_;
    const sar::SarModel& model_;
    std::vector<Node> nodes_;
};

/// One recorded step. Step 0 is the initial state; later steps follow one action.
struct StepRecord {
    int t = 0;
    sar::SarState state;
    std::optional<sar::Action> action;
    std::optional<sar::Observation> observation;
    double reward = 0.0;
    double discounted_reward = 0.0;
    std::optional<sar::SarBelief> belief;  // agent belief once this step's observation is in
};

struct Episode {
    sar::Cell target;
    std::vector<StepRecord> steps;
    sar::TerminalCause cause = sar::TerminalCause::None;  // None: action sequence ran out
    double discounted_return = 0.0;
    sar::FeatureVector discounted_features;
};

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

sar::Cell sample_target(const sar::SarBelief& b, const sar::SarModel& model, std::mt19937_64& rng);

/// Conditions the initial belief on the target not sitting under the robot.
/// Empty when no mass survives or the robot cannot act.
std::optional<sar::SarBelief> live_belief(const sar::SarBelief& b0, const sar::SarModel& model);

/// Simulates one episode for a known target, drawing detections from `rng`.
/// With `record` unset only the totals are filled in.
Episode run_closed_loop(ClosedLoopTree& tree, const sar::SarBelief& b0, sar::Cell target,
                        const sar::SarModel& model, std::mt19937_64& rng, bool record);

Episode run_open_loop(std::span<const sar::Action> actions, const sar::SarBelief& b0,
                      sar::Cell target, const sar::SarModel& model, std::mt19937_64& rng,
                      bool record);

}  // namespace sarx::features
