#include <gtest/gtest.h>

#include <random>

#include "../support/generators.hpp"
#include "../support/oracle.hpp"
#include "sarx/pomdp/model.hpp"
#include "sarx/sar/model.hpp"

using namespace sarx;
using sar::Action;
using sar::Cell;
using sar::Observation;
using sar::SarBelief;
using pomdp::DiscreteDistribution;

namespace {

sar::Scenario plain(int n, int battery) {
    sar::Scenario s;
    s.grid_size = n;
    s.battery = battery;
    return s;
}

SarBelief belief_over(const sar::SarModel& m, Cell robot, int battery, std::vector<std::pair<Cell, double>> mass) {
    std::vector<double> p(static_cast<std::size_t>(m.num_cells()), 0.0);
    for (auto [c, w] : mass) p[static_cast<std::size_t>(m.grid().index(c))] = w;
    return SarBelief{robot, battery, DiscreteDistribution(std::move(p))};
}

}  // namespace

TEST(BeliefUpdate, NoDetectShiftsMassAway) {
    sar::SarModel m(plain(5, 25));
    // After moving Right the robot is at [2,1]; [3,1] is adjacent, [5,5] is far.
    auto b = belief_over(m, {1, 1}, 25, {{{3, 1}, 0.5}, {{5, 5}, 0.5}});
    auto post = pomdp::belief_update(b, Action::Right, Observation::none(), m);
    EXPECT_NEAR(post.target[static_cast<std::size_t>(m.grid().index({3, 1}))], 1.0 / 6.0, 1e-12);
    EXPECT_NEAR(post.target[static_cast<std::size_t>(m.grid().index({5, 5}))], 5.0 / 6.0, 1e-12);
    EXPECT_EQ(post.robot, (Cell{2, 1}));
    EXPECT_EQ(post.battery, 24);
}

TEST(BeliefUpdate, PointMassIsFixed) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{3, 2}, 1.0}});
    auto nd = pomdp::belief_update(b, Action::Right, Observation::none(), m);
    auto d = pomdp::belief_update(b, Action::Right, Observation::at({3, 2}), m);
    EXPECT_EQ(nd.target, b.target);
    EXPECT_EQ(d.target, b.target);
}

TEST(BeliefUpdate, SurvivalConditioningWithoutSensing) {
    auto s = plain(5, 25);
    s.p_detect = 0.0;
    sar::SarModel m(s);
    auto post = pomdp::belief_update(m.initial_belief(), Action::Up, Observation::none(), m);
    const int entered = m.grid().index({1, 2});
    for (int y = 0; y < m.num_cells(); ++y) {
        if (y == entered) EXPECT_EQ(post.target[static_cast<std::size_t>(y)], 0.0);
        else EXPECT_NEAR(post.target[static_cast<std::size_t>(y)], 1.0 / 24.0, 1e-15);
    }
}

TEST(BeliefUpdate, ImpossibleObservationThrows) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{5, 5}, 1.0}});
    EXPECT_THROW(pomdp::belief_update(b, Action::Up, Observation::at({1, 3}), m), ZeroProbabilityObservation);
}

TEST(Successors, AdjacentPointMassSplitsByDetection) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{3, 2}, 1.0}});
    auto succ = pomdp::enumerate_successors(b, Action::Right, m);
    ASSERT_EQ(succ.branches.size(), 2u);
    EXPECT_EQ(succ.branches[0].observation, Observation::none());
    EXPECT_NEAR(succ.branches[0].probability, 0.2, 1e-12);
    EXPECT_EQ(succ.branches[1].observation, Observation::at({3, 2}));
    EXPECT_NEAR(succ.branches[1].probability, 0.8, 1e-12);
    EXPECT_NEAR(succ.terminated_mass(), 0.0, 1e-15);
}

TEST(Successors, FullyAbsorbedBeliefHasNoBranches) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{1, 2}, 1.0}});
    auto succ = pomdp::enumerate_successors(b, Action::Up, m);
    EXPECT_TRUE(succ.branches.empty());
    EXPECT_NEAR(succ.terminated_mass(), 1.0, 1e-15);
    EXPECT_NEAR(succ.expected_reward, 500.0, 1e-12);
}

TEST(Successors, FarMassGivesSingleNoDetectBranch) {
    sar::SarModel m(plain(3, 10));
    auto b = belief_over(m, {1, 1}, 10, {{{3, 3}, 0.5}, {{1, 2}, 0.5}});
    auto succ = pomdp::enumerate_successors(b, Action::Up, m);
    ASSERT_EQ(succ.branches.size(), 1u);
    EXPECT_EQ(succ.branches[0].observation, Observation::none());
    EXPECT_NEAR(succ.branches[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(succ.terminated_mass(), 0.5, 1e-15);
}

TEST(Successors, TerminalBeliefCannotStep) {
    sar::SarModel m(plain(5, 3));
    auto b = belief_over(m, {2, 2}, 2, {{{5, 5}, 1.0}});
    EXPECT_FALSE(m.can_act(b));
    EXPECT_THROW(m.successors(b, Action::Up), TerminalStateStep);
}

TEST(Successors, PartitionAndUpdateAgreeOnRandomBeliefs) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto s = gen::scenario(rng, 2, 5, 12);
        sar::SarModel m(s);
        std::vector<double> w(static_cast<std::size_t>(m.num_cells()));
        for (auto& v : w) v = gen::uniform_int(rng, 0, 3) == 0 ? 0.0 : gen::uniform_real(rng, 0.0, 1.0);
        w[0] += 1e-3;
        SarBelief b{gen::cell(rng, s.grid_size), s.battery + 20, DiscreteDistribution::from_weights(w)};
        for (Action a : sar::kActions) {
            auto succ = m.successors(b, a);
            EXPECT_NEAR(succ.total_mass(), 1.0, 1e-9);
            for (const auto& br : succ.branches) {
                if (br.probability < 1e-12) continue;
                auto post = pomdp::belief_update(b, a, br.observation, m);
                EXPECT_EQ(post, br.next);
                double sum = 0.0;
                for (double p : post.target.probabilities()) sum += p;
                EXPECT_NEAR(sum, 1.0, 1e-9);
            }
        }
    }
}

TEST(Expectimax, TargetUnderRobotPaysAtOnce) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{1, 1}, 1.0}});
    EXPECT_DOUBLE_EQ(pomdp::expectimax_value(b, m, 25), 500.0);
}

TEST(Expectimax, TargetOneStepAway) {
    sar::SarModel m(plain(5, 25));
    auto b = belief_over(m, {1, 1}, 25, {{{2, 1}, 1.0}});
    EXPECT_NEAR(pomdp::expectimax_value(b, m, 25), 475.0, 1e-9);
}

TEST(Expectimax, MatchesFullStateOracleOnTwoByTwo) {
    auto s = plain(2, 10);
    s.interests = {{{2, 2}, 2.0}};
    sar::SarModel m(s);
    const double v = pomdp::expectimax_value(m.initial_belief(), m, 3);
    EXPECT_NEAR(v, oracle::optimal_value(s, oracle::uniform_belief(s), 3), 1e-9);
}

TEST(Expectimax, MatchesOracleOnRandomSmallScenarios) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = gen::scenario(rng, 1, 3, 5);
        sar::SarModel m(s);
        const double v = pomdp::expectimax_value(m.initial_belief(), m, s.battery);
        EXPECT_NEAR(v, oracle::optimal_value(s, oracle::uniform_belief(s), s.battery), 1e-9) << "trial " << trial;
    }
}

TEST(Expectimax, MonotoneInHorizonAndBattery) {
    auto s = plain(3, 6);
    s.interests = {{{3, 3}, 4.0}};
    s.target_weight = 50.0;
    double last = -1.0;
    for (int h = 0; h <= 6; ++h) {
        sar::SarModel m(s);
        const double v = pomdp::expectimax_value(m.initial_belief(), m, h);
        EXPECT_GE(v, last - 1e-12);
        last = v;
    }
    last = -1.0;
    for (int battery = 1; battery <= 6; ++battery) {
        s.battery = battery;
        sar::SarModel m(s);
        const double v = pomdp::expectimax_value(m.initial_belief(), m, battery);
        EXPECT_GE(v, last - 1e-12);
        last = v;
    }
}

TEST(Expectimax, BudgetGuard) {
    sar::SarModel m(plain(4, 10));
    EXPECT_THROW(pomdp::expectimax_value(m.initial_belief(), m, 10, 5), BudgetExceeded);
}

TEST(EvaluatePolicy, FixedSequenceMatchesOracle) {
    auto s = plain(3, 6);
    s.interests = {{{1, 3}, 2.0}};
    sar::SarModel m(s);
    const std::vector<Action> seq{Action::Up, Action::Up, Action::Right, Action::Right};
    const double v = pomdp::evaluate_policy(m.initial_belief(), m, [&](const SarBelief&, int t) -> std::optional<Action> {
        if (t >= static_cast<int>(seq.size())) return std::nullopt;
        return seq[static_cast<std::size_t>(t)];
    });
    const auto mu = oracle::open_loop_mu(s, {0, 0, 3, 3});
    EXPECT_NEAR(v, 2.0 * mu[0] + 500.0 * mu[1], 1e-9);
}
