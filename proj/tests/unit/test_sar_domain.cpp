#include <gtest/gtest.h>

#include <cmath>

#include "sarx/errors.hpp"
#include "sarx/sar/model.hpp"

using namespace sarx;
using sar::Action;
using sar::Cell;
using sar::Observation;
using sar::TerminalCause;

namespace {

sar::Scenario case1() {
    sar::Scenario s;
    s.interests = {{{1, 5}, 3.0}};
    return s;
}

}  // namespace

TEST(Transition, MovesAndDrainsBattery) {
    sar::SarModel m(case1());
    auto s = m.make_state({1, 1}, {5, 5}, 25);
    auto up = m.transition(s, Action::Up);
    EXPECT_EQ(up.robot, (Cell{1, 2}));
    EXPECT_EQ(up.battery, 24);
    auto left = m.transition(s, Action::Left);
    EXPECT_EQ(left.robot, (Cell{1, 1}));
    EXPECT_EQ(left.battery, 24);
}

TEST(Transition, EnteringTargetEndsEpisode) {
    sar::SarModel m(case1());
    auto s = m.transition(m.make_state({4, 5}, {5, 5}, 25), Action::Right);
    EXPECT_EQ(s.terminal, TerminalCause::TargetFound);
    EXPECT_THROW(m.transition(s, Action::Up), TerminalStateStep);
}

TEST(Transition, WallsOnEveryBoundaryCell) {
    for (int n = 1; n <= 6; ++n) {
        sar::Scenario sc;
        sc.grid_size = n;
        sc.battery = 100;
        sc.interests = {};
        sar::SarModel m(sc);
        for (int x = 1; x <= n; ++x)
            for (int y = 1; y <= n; ++y)
                for (Action a : sar::kActions) {
                    const Cell c{x, y};
                    const Cell next = m.grid().step(c, a);
                    EXPECT_TRUE(m.grid().contains(next));
                    EXPECT_LE(sar::manhattan(c, next), 1);
                    const bool blocked = (a == Action::Up && y == n) || (a == Action::Down && y == 1) ||
                                         (a == Action::Left && x == 1) || (a == Action::Right && x == n);
                    EXPECT_EQ(next == c, blocked);
                }
    }
}

TEST(Terminal, MarginBoundary) {
    sar::Scenario sc = case1();
    sar::SarModel m(sc);
    EXPECT_EQ(m.is_terminal(m.make_state({4, 4}, {5, 1}, 7)), TerminalCause::None);
    EXPECT_EQ(m.is_terminal(m.make_state({4, 4}, {5, 1}, 6)), TerminalCause::Battery);
    EXPECT_EQ(m.is_terminal(m.make_state({4, 4}, {4, 4}, 6)), TerminalCause::TargetFound);
}

TEST(BattToGo, Manhattan) {
    EXPECT_EQ(sar::batt_to_go({4, 4}, {1, 1}), 6);
    EXPECT_EQ(sar::batt_to_go({1, 1}, {1, 1}), 0);
    EXPECT_EQ(sar::batt_to_go({5, 5}, {1, 1}), 8);
}

TEST(Observation, PerfectOnTargetNoisyNearbySilentFar) {
    sar::SarModel m(case1());
    auto on = m.make_state({3, 3}, {3, 3}, 20);
    EXPECT_EQ(m.observation_prob(on, Observation::at({3, 3})), 1.0);
    EXPECT_EQ(m.observation_prob(on, Observation::none()), 0.0);
    auto diag = m.make_state({2, 2}, {3, 3}, 20);
    EXPECT_NEAR(m.observation_prob(diag, Observation::at({3, 3})), 0.8, 1e-15);
    EXPECT_NEAR(m.observation_prob(diag, Observation::none()), 0.2, 1e-15);
    EXPECT_EQ(m.observation_prob(diag, Observation::at({2, 3})), 0.0);
    auto far = m.make_state({1, 1}, {4, 1}, 20);
    EXPECT_EQ(m.observation_prob(far, Observation::none()), 1.0);
}

TEST(Observation, ManhattanRadiusExcludesDiagonals) {
    auto sc = case1();
    sc.metric = sar::DetectionMetric::Manhattan;
    sar::SarModel m(sc);
    EXPECT_EQ(m.observation_prob(m.make_state({2, 2}, {3, 3}, 20), Observation::none()), 1.0);
    EXPECT_NEAR(m.observation_prob(m.make_state({2, 3}, {3, 3}, 20), Observation::none()), 0.2, 1e-15);
}

TEST(Features, IndicatorExamples) {
    sar::SarModel m(case1());
    EXPECT_EQ(m.phi_state(m.make_state({1, 5}, {3, 3}, 20)).values, (std::vector<double>{1, 0, 0}));
    EXPECT_EQ(m.phi_state(m.make_state({5, 5}, {5, 5}, 20)).values, (std::vector<double>{0, 1, 0}));
    EXPECT_EQ(m.phi_state(m.make_state({4, 4}, {5, 5}, 6)).values, (std::vector<double>{0, 0, 1}));
    EXPECT_EQ(m.phi_state(m.make_state({1, 1}, {5, 5}, 25)).values, (std::vector<double>{0, 0, 0}));
}

TEST(Features, BeliefExpectation) {
    auto sc = case1();
    sc.interests = {{{3, 3}, 3.0}};
    sar::SarModel m(sc);
    EXPECT_NEAR(m.phi_belief(m.initial_belief())[1], 0.04, 1e-15);

    std::vector<double> p(25, 0.0);
    p[static_cast<std::size_t>(m.grid().index({2, 2}))] = 0.3;
    p[static_cast<std::size_t>(m.grid().index({3, 3}))] = 0.7;
    sar::SarBelief b{{3, 3}, 20, pomdp::DiscreteDistribution(p)};
    auto f = m.phi_belief(b);
    EXPECT_NEAR(f[0], 1.0, 1e-15);
    EXPECT_NEAR(f[1], 0.7, 1e-15);
    EXPECT_NEAR(f[2], 0.0, 1e-15);

    sar::SarBelief point{{2, 4}, 20, pomdp::DiscreteDistribution::point_mass(7, 25)};
    EXPECT_EQ(m.phi_belief(point), m.phi_state(m.make_state({2, 4}, m.grid().cell(7), 20)));
}

TEST(Reward, DotProductOfFeatures) {
    auto sc = case1();
    sc.interests = {{{3, 3}, 3.0}};
    sar::SarModel m(sc);
    EXPECT_DOUBLE_EQ(m.reward(m.make_state({5, 5}, {5, 5}, 20)), 500.0);
    EXPECT_DOUBLE_EQ(m.reward(m.make_state({2, 1}, {5, 5}, 20)), 0.0);
    EXPECT_DOUBLE_EQ(m.reward(m.make_state({3, 3}, {3, 3}, 20)), 503.0);
    const auto alpha = sar::feature_weights(sc);
    EXPECT_EQ(alpha.alpha, (std::vector<double>{3.0, 500.0, 0.0}));
    for (int x = 1; x <= 5; ++x)
        for (int y = 1; y <= 5; ++y)
            for (int batt : {1, 4, 9}) {
                auto s = m.make_state({x, y}, {4, 2}, batt);
                EXPECT_DOUBLE_EQ(m.reward(s), sar::dot(alpha, m.phi_state(s)));
            }
}

TEST(InitialBelief, UniformIncludingStart) {
    for (int n : {2, 3, 5}) {
        sar::Scenario sc;
        sc.grid_size = n;
        sc.battery = 10;
        sar::SarModel m(sc);
        auto b = m.initial_belief();
        EXPECT_EQ(b.robot, sc.start);
        EXPECT_EQ(b.battery, 10);
        for (double p : b.target.probabilities()) EXPECT_DOUBLE_EQ(p, 1.0 / (n * n));
    }
}

TEST(Scenario, ValidationReportsEveryField) {
    sar::Scenario sc;
    sc.grid_size = 3;
    sc.start = {4, 1};
    sc.interests = {{{1, 2}, 1.0}, {{1, 2}, 2.0}, {{9, 9}, NAN}};
    sc.battery = 0;
    sc.p_detect = 1.5;
    sc.discount = 1.0;
    try {
        sar::validate(sc);
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        std::vector<std::string> paths;
        for (const auto& f : e.errors()) paths.push_back(f.path);
        for (const char* expected : {"/start", "/cells-of-interest/1/cell", "/cells-of-interest/2/cell",
                                     "/cells-of-interest/2/weight", "/battery", "/p-detect", "/discount"})
            EXPECT_NE(std::find(paths.begin(), paths.end(), expected), paths.end()) << expected;
    }
}

TEST(Scenario, LabelsAndLayout) {
    sar::Scenario sc;
    sc.interests = {{{5, 5}, 3.0}, {{4, 1}, 1.0}};
    EXPECT_EQ(sar::feature_labels(sc), (std::vector<std::string>{"l_1", "l_2", "target", "battery"}));
    EXPECT_EQ(sc.target_feature(), 2);
    EXPECT_EQ(sc.battery_feature(), 3);
    EXPECT_THROW(sar::dot(sar::FeatureWeights{{1.0}}, sar::FeatureVector(2)), DimensionMismatch);
}
