#pragma once

// Generic machinery for finite POMDPs whose belief tracks only the hidden part
// of the state. A model exposes one-step successor enumeration over beliefs;
// everything here (Bayes filtering, exhaustive expectimax, fixed-policy
// evaluation) is written against that interface alone.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ranges>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sarx/errors.hpp"
#include "sarx/pomdp/distribution.hpp"

namespace sarx::pomdp {

template <class Belief, class Observation>
struct SuccessorBranch {
    Observation observation;
    double probability = 0.0;  // P(o, not terminated | b, a)
    Belief next;               // normalized posterior over surviving states
};

template <class Belief, class Observation, class Cause>
struct Successors {
    std::vector<SuccessorBranch<Belief, Observation>> branches;
    std::vector<std::pair<Cause, double>> terminated;  // mass absorbed, per cause
    double expected_reward = 0.0;                      // E[R(s')] over every successor

    double terminated_mass() const {
        double m = 0.0;
        for (const auto& [cause, mass] : terminated) m += mass;
        return m;
    }

    double total_mass() const {
        double m = terminated_mass();
        for (const auto& br : branches) m += br.probability;
        return m;
    }
};

/// A belief split into the part that is already terminal and the part that
/// can still act.
template <class Belief>
struct LiveSplit {
    double expected_reward = 0.0;  // E_b[R(s)] over the whole belief
    double live_mass = 0.0;
    std::optional<Belief> live;    // conditioned on survival; empty iff live_mass == 0
};

template <class M>
concept FactoredPomdp = requires(const M& m, const typename M::Belief& b, typename M::Action a) {
    typename M::Observation;
    typename M::TerminalCause;
    { m.actions() } -> std::ranges::forward_range;
    { m.discount() } -> std::convertible_to<double>;
    { m.can_act(b) } -> std::convertible_to<bool>;
    { m.split_live(b) } -> std::same_as<LiveSplit<typename M::Belief>>;
    {
        m.successors(b, a)
    } -> std::same_as<Successors<typename M::Belief, typename M::Observation, typename M::TerminalCause>>;
};

/// Bayes posterior after taking `a` in `b` and observing `o`. Equal to the
/// normalized `o` branch of successors(b, a).
template <FactoredPomdp M>
typename M::Belief belief_update(const typename M::Belief& b, typename M::Action a,
                                 const typename M::Observation& o, const M& model) {
    auto succ = model.successors(b, a);
    for (auto& br : succ.branches) {
        if (br.observation == o) {
            if (br.probability < kZeroProbability) break;
            return std::move(br.next);
        }
    }
    throw ZeroProbabilityObservation("observation has zero likelihood under the belief and action");
}

template <FactoredPomdp M>
auto enumerate_successors(const typename M::Belief& b, typename M::Action a, const M& model) {
    return model.successors(b, a);
}

inline constexpr std::uint64_t kDefaultBranchBudget = 10'000'000;

namespace detail {

template <class M>
struct Expectimax {
    const M& model;
    std::uint64_t budget;
    std::uint64_t expanded = 0;
    std::unordered_map<std::string, double> memo;

    // Optimal discounted value of the future after a live belief, excluding
    // the reward of the current states.
    double future(const typename M::Belief& b, int horizon) {
        if (horizon <= 0 || !model.can_act(b)) return 0.0;
        std::string key;
        if constexpr (requires { model.belief_key(b); }) {
            key = model.belief_key(b) + '#' + std::to_string(horizon);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
        }
        if (++expanded > budget)
            throw BudgetExceeded("expectimax enumeration exceeded " + std::to_string(budget) +
                                 " expansions");
        const double gamma = model.discount();
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& a : model.actions()) {
            auto succ = model.successors(b, a);
            double q = succ.expected_reward;
            for (const auto& br : succ.branches) q += br.probability * future(br.next, horizon - 1);
            best = std::max(best, gamma * q);
        }
        if constexpr (requires { model.belief_key(b); }) memo.emplace(std::move(key), best);
        return best;
    }
};

}  // namespace detail

/// Exact optimal value of `b` over the next `horizon` actions by enumerating
/// every action and observation branch. Includes the reward of the states in
/// `b` itself. Identical subtrees are shared when the model can key beliefs.
template <FactoredPomdp M>
double expectimax_value(const typename M::Belief& b, const M& model, int horizon,
                        std::uint64_t budget = kDefaultBranchBudget) {
    const auto split = model.split_live(b);
    if (!split.live) return split.expected_reward;
    detail::Expectimax<M> ex{model, budget};
    return split.expected_reward + split.live_mass * ex.future(*split.live, horizon);
}

/// Expected discounted reward of a fixed policy, rolled up over the belief
/// tree. `policy(belief, t)` returns the action for decision `t`, or nullopt
/// to end the episode; it must be a function of its arguments, since subtrees
/// with equal (belief, t) are shared when the model can key beliefs.
template <FactoredPomdp M, class Policy>
double evaluate_policy(const typename M::Belief& b, const M& model, Policy&& policy,
                       std::uint64_t budget = kDefaultBranchBudget) {
    const double gamma = model.discount();
    std::uint64_t expanded = 0;
    std::unordered_map<std::string, double> memo;
    auto future = [&](auto& self, const typename M::Belief& belief, int t) -> double {
        if (!model.can_act(belief)) return 0.0;
        const std::optional<typename M::Action> a = policy(belief, t);
        if (!a) return 0.0;
        std::string key;
        if constexpr (requires { model.belief_key(belief); }) {
            key = model.belief_key(belief) + '#' + std::to_string(t);
            if (auto it = memo.find(key); it != memo.end()) return it->second;
        }
        if (++expanded > budget) throw BudgetExceeded("policy evaluation exceeded its budget");
        auto succ = model.successors(belief, *a);
        double q = succ.expected_reward;
        for (const auto& br : succ.branches) q += br.probability * self(self, br.next, t + 1);
        if constexpr (requires { model.belief_key(belief); }) memo.emplace(std::move(key), gamma * q);
        return gamma * q;
    };
    const auto split = model.split_live(b);
    if (!split.live) return split.expected_reward;
    return split.expected_reward + split.live_mass * future(future, *split.live, 0);
}

}  // namespace sarx::pomdp
