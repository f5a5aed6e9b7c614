#include <gtest/gtest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracle.hpp"
#include "sarx/errors.hpp"
#include "sarx/pomdp/model.hpp"
#include "sarx/solver/solver.hpp"

using namespace sarx;
using sar::Action;
using sar::Cell;
using sar::SarBelief;
using pomdp::DiscreteDistribution;

namespace {

SarBelief point(const sar::SarModel& m, Cell robot, int battery, Cell target) {
    return {robot, battery,
            DiscreteDistribution::point_mass(static_cast<std::size_t>(m.grid().index(target)),
                                             static_cast<std::size_t>(m.num_cells()))};
}

}  // namespace

TEST(Solver, KnownAdjacentTarget) {
    sar::Scenario s;
    s.interests = {};
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    const auto b = point(m, {1, 1}, 25, {2, 1});
    EXPECT_NEAR(solver::policy_value(policy, b), 475.0, 1e-6);
    EXPECT_EQ(solver::policy_action(policy, b), Action::Right);
    const auto up = point(m, {1, 1}, 25, {1, 2});
    EXPECT_EQ(solver::policy_action(policy, up), Action::Up);
}

TEST(Solver, BatteryOneMatchesOneStepOracle) {
    sar::Scenario s;
    s.grid_size = 3;
    s.battery = 1;
    s.interests = {};
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    const double v = solver::policy_value(policy, m.initial_belief());
    EXPECT_NEAR(v, pomdp::expectimax_value(m.initial_belief(), m, 1), 1e-9);
    EXPECT_NEAR(v, oracle::optimal_value(s, oracle::uniform_belief(s), 1), 1e-9);
}

TEST(Solver, ThreeByThreeMatchesExpectimax) {
    sar::Scenario s;
    s.grid_size = 3;
    s.battery = 6;
    s.interests = {{{3, 1}, 2.0}};
    solver::SolveOptions o;
    o.epsilon = 1e-3;
    const auto policy = solver::solve(s, o);
    sar::SarModel m(s);
    const double exact = pomdp::expectimax_value(m.initial_belief(), m, 6);
    EXPECT_TRUE(policy.stats().converged);
    EXPECT_LE(policy.stats().lower, exact + 1e-9);
    EXPECT_GE(policy.stats().upper, exact - 1e-9);
    EXPECT_NEAR(solver::policy_value(policy, m.initial_belief()), exact, 1e-3);
}

TEST(Solver, BoundsAreSoundOnRandomScenarios) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = gen::scenario(rng, 1, 3, 6);
        const auto policy = solver::solve(s);
        sar::SarModel m(s);
        const double exact = pomdp::expectimax_value(m.initial_belief(), m, s.battery);
        const auto& st = policy.stats();
        EXPECT_LE(st.lower, exact + 1e-9) << trial;
        EXPECT_GE(st.upper, exact - 1e-9) << trial;
        EXPECT_LE(exact - solver::policy_value(policy, m.initial_belief()), st.epsilon + 1e-9) << trial;
    }
}

TEST(Solver, Deterministic) {
    sar::Scenario s;
    s.grid_size = 4;
    s.battery = 8;
    s.interests = {{{4, 4}, 3.0}, {{2, 3}, 1.0}};
    solver::SolveOptions o;
    o.epsilon = 0.01;
    auto a = solver::solve(s, o);
    auto b = solver::solve(s, o);
    EXPECT_EQ(a.strata(), b.strata());
    EXPECT_EQ(a.stats().lower, b.stats().lower);
    EXPECT_EQ(a.stats().upper, b.stats().upper);
}

TEST(Solver, TiesGoToEarlierAction) {
    sar::Scenario s;
    s.grid_size = 3;
    s.battery = 4;
    s.interests = {};
    std::vector<std::vector<solver::AlphaVector>> strata((4 + 1) * 9);
    const std::size_t start = static_cast<std::size_t>(0 * 5 + 4);
    strata[start] = {{std::vector<double>(9, 1.0), Action::Right}, {std::vector<double>(9, 1.0), Action::Down}};
    solver::AlphaPolicy p(s, strata, {});
    sar::SarModel m(s);
    EXPECT_EQ(solver::policy_action(p, m.initial_belief()), Action::Down);
    strata[start] = {{std::vector<double>(9, 2.0), Action::Left}};
    solver::AlphaPolicy single(s, strata, {});
    EXPECT_EQ(solver::policy_action(single, m.initial_belief()), Action::Left);
}

TEST(Solver, UnreachableStratumThrows) {
    sar::Scenario s;
    s.grid_size = 4;
    s.battery = 3;
    s.interests = {};
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    // [4,4] is six steps from the start: never reachable with battery 3.
    EXPECT_THROW(solver::policy_action(policy, point(m, {4, 4}, 2, {1, 1})), UnreachableStratum);
    EXPECT_THROW(solver::policy_value(policy, point(m, {1, 1}, 9, {2, 2})), UnreachableStratum);
}

TEST(Solver, EveryReachableStratumHasVectors) {
    sar::Scenario s;
    s.grid_size = 4;
    s.battery = 7;
    s.interests = {{{2, 2}, 1.0}};
    const auto policy = solver::solve(s);
    sar::SarModel m(s);
    for (int x = 1; x <= 4; ++x)
        for (int y = 1; y <= 4; ++y)
            for (int b = 0; b <= 7; ++b) {
                const Cell c{x, y};
                if (sar::manhattan(c, s.start) <= 7 - b && !m.battery_exhausted(c, b)) {
                    EXPECT_FALSE(policy.stratum(c, b).empty()) << sar::to_string(c) << " " << b;
                }
            }
}

TEST(Solver, MemoryGuard) {
    sar::Scenario s;
    s.grid_size = 16;
    s.battery = 60;
    s.interests = {};
    EXPECT_THROW(solver::solve(s), BudgetExceeded);
}

TEST(Solver, IterationCapFlagsBudget) {
    sar::Scenario s;
    s.interests = {{{1, 5}, 3.0}};
    solver::SolveOptions o;
    o.epsilon = 1e-9;
    o.max_iterations = 1;
    const auto policy = solver::solve(s, o);
    EXPECT_TRUE(policy.stats().budget_exhausted);
    EXPECT_FALSE(policy.stats().converged);
    EXPECT_GE(policy.stats().gap(), 0.0);
}

TEST(Solver, DefaultEpsilonScalesWithTargetWeight) {
    sar::Scenario s;
    s.target_weight = -200.0;
    EXPECT_DOUBLE_EQ(solver::default_epsilon(s), 0.2);
}
