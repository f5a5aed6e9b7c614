#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sarx/pomdp/distribution.hpp"
#include "sarx/pomdp/model.hpp"
#include "sarx/sar/features.hpp"
#include "sarx/sar/grid.hpp"
#include "sarx/sar/scenario.hpp"

namespace sarx::sar {

enum class TerminalCause : std::uint8_t { None, TargetFound, Battery };

std::string_view to_string(TerminalCause c);

struct SarState {
    Cell robot;
    Cell target;
    int battery = 0;
    TerminalCause terminal = TerminalCause::None;

    bool operator==(const SarState&) const = default;
};

/// Either no detection, or a detection reporting a cell.
struct Observation {
    std::optional<Cell> detected;

    static Observation none() { return {}; }
    static Observation at(Cell c) { return Observation{c}; }
    bool is_detection() const noexcept { return detected.has_value(); }

    bool operator==(const Observation&) const = default;
};

std::string to_string(const Observation& o);

/// Robot cell and battery are known exactly; only the target is uncertain.
/// Target ids are row-major cell indices.
struct SarBelief {
    Cell robot;
    int battery = 0;
    pomdp::DiscreteDistribution target;

    bool operator==(const SarBelief&) const = default;
};

/// Manhattan distance back to the start cell.
int batt_to_go(Cell robot, Cell start);

/// The grid POMDP. Immutable after construction.
class SarModel {
public:
    using Belief = SarBelief;
    using Action = sar::Action;
    using Observation = sar::Observation;
    using TerminalCause = sar::TerminalCause;
    using Successors = pomdp::Successors<SarBelief, Observation, TerminalCause>;

    /// Validates the scenario.
    explicit SarModel(Scenario scenario);

    const Scenario& scenario() const noexcept { return scenario_; }
    const Grid& grid() const noexcept { return grid_; }
    int num_cells() const noexcept { return grid_.num_cells(); }
    double discount() const noexcept { return scenario_.discount; }
    std::span<const Action> actions() const noexcept { return kActions; }

    int batt_to_go(Cell robot) const { return dist_to_start_[grid_.index(robot)]; }
    /// True when battery - batt_to_go < 1.
    bool battery_exhausted(Cell robot, int battery) const {
        return battery - batt_to_go(robot) < 1;
    }
    /// Sensing neighbourhood: robot != target and within distance 1.
    bool in_detection_radius(Cell robot, Cell target) const;

    TerminalCause is_terminal(const SarState& s) const;
    SarState transition(const SarState& s, Action a) const;
    double observation_prob(const SarState& next, const Observation& o) const;

    FeatureVector phi_state(const SarState& s, Action a = Action::Up) const;
    FeatureVector phi_belief(const SarBelief& b, Action a = Action::Up) const;
    double reward(const SarState& s, Action a = Action::Up) const;

    SarBelief initial_belief() const;
    SarState make_state(Cell robot, Cell target, int battery) const;

    // --- FactoredPomdp interface -------------------------------------------------
    bool can_act(const SarBelief& b) const { return !battery_exhausted(b.robot, b.battery); }
    pomdp::LiveSplit<SarBelief> split_live(const SarBelief& b) const;
    /// One-step successors of a belief over states that are all still acting.
    /// Throws TerminalStateStep when the belief's robot/battery is terminal.
    Successors successors(const SarBelief& b, Action a) const;
    std::string belief_key(const SarBelief& b) const;

    // --- dense fast paths used by the solver and evaluators -------------------------
    /// Unnormalized no-detection weights after moving to `next_robot`:
    /// w(y) = b(y) * P(no-detect | y), with w(next_robot) = 0.
    void no_detect_weights(std::span<const double> b, int next_robot, std::span<double> out) const;
    bool in_radius(int robot, int target) const { return radius_[robot * num_cells() + target]; }
    int step_index(int robot, Action a) const {
        return step_[robot * 4 + static_cast<int>(a)];
    }
    int dist_to_start(int robot) const { return dist_to_start_[robot]; }
    /// Reward of the interest/battery features at (robot, battery), excluding the target term.
    double base_reward(int robot, int battery) const;

private:
    Scenario scenario_;
    Grid grid_;
    std::vector<int> dist_to_start_;
    std::vector<int> step_;
    std::vector<char> radius_;
    std::vector<double> interest_reward_;           // summed weights per cell
    std::vector<std::vector<int>> interest_at_;     // feature indices per cell
};

}  // namespace sarx::sar
