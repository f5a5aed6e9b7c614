#include <gtest/gtest.h>

#include <random>

#include "../support/generators.hpp"
#include "sarx/counterfactual/counterfactual.hpp"
#include "sarx/errors.hpp"
#include "sarx/features/feature_expectation.hpp"

using namespace sarx;
using counterfactual::TruncationCause;
using counterfactual::UserPath;
using sar::Action;

namespace {

sar::Scenario case2() {
    sar::Scenario s;
    s.interests = {{{5, 5}, 3.0}, {{4, 1}, 1.0}, {{3, 3}, 1.0}};
    s.target_weight = 100.0;
    s.battery = 12;
    return s;
}

}  // namespace

TEST(PathToActions, Examples) {
    sar::Scenario s;
    EXPECT_EQ(counterfactual::path_to_actions({{{1, 1}, {1, 2}, {2, 2}}}, s),
              (std::vector<Action>{Action::Up, Action::Right}));
    const UserPath case1{{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {5, 5}}};
    EXPECT_EQ(counterfactual::path_to_actions(case1, s),
              (std::vector<Action>{Action::Up, Action::Up, Action::Up, Action::Up, Action::Right, Action::Right,
                                   Action::Right, Action::Right}));
    EXPECT_TRUE(counterfactual::path_to_actions({{{1, 1}}}, s).empty());
}

TEST(PathToActions, Errors) {
    sar::Scenario s;
    try {
        counterfactual::path_to_actions({{{1, 1}, {3, 1}}}, s);
        FAIL();
    } catch (const NonAdjacentStep& e) {
        EXPECT_EQ(e.index(), 1u);
    }
    try {
        counterfactual::path_to_actions({{{1, 1}, {1, 2}, {1, 2}}}, s);
        FAIL();
    } catch (const StayNotSupported& e) {
        EXPECT_EQ(e.index(), 2u);
    }
    EXPECT_THROW(counterfactual::path_to_actions({{{2, 1}, {1, 1}}}, s), WrongStartCell);
    EXPECT_THROW(counterfactual::path_to_actions({}, s), WrongStartCell);
    try {
        counterfactual::path_to_actions({{{1, 1}, {1, 0}}}, s);
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.errors().front().path, "/path/1");
    }
}

TEST(Truncate, CaseOnePathUnchanged) {
    sar::Scenario s;
    const std::vector<Action> path{Action::Up,    Action::Up,    Action::Up,    Action::Up,
                                   Action::Right, Action::Right, Action::Right, Action::Right};
    auto [prefix, report] = counterfactual::feasibility_truncate(path, s);
    EXPECT_EQ(prefix, path);
    EXPECT_EQ(report.cause, TruncationCause::None);
    EXPECT_EQ(report.executed_length, 8u);
    EXPECT_FALSE(report.truncated_at);
}

TEST(Truncate, CaseTwoStopsBeforeFarCorner) {
    const auto s = case2();
    const UserPath path{{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 4}, {5, 5}}};
    auto [prefix, report] = counterfactual::feasibility_truncate(counterfactual::path_to_actions(path, s), s);
    EXPECT_EQ(report.cause, TruncationCause::Battery);
    EXPECT_EQ(report.original_length, 8u);
    EXPECT_EQ(report.executed_length, 6u);
    EXPECT_EQ(*report.truncated_at, (sar::Cell{4, 4}));
    EXPECT_EQ(report.unreached, (std::vector<sar::Cell>{{5, 4}, {5, 5}}));
    EXPECT_EQ(prefix.size(), 6u);
}

TEST(Truncate, TinyBattery) {
    sar::Scenario s;
    s.battery = 2;
    auto [prefix, report] = counterfactual::feasibility_truncate({Action::Up, Action::Right, Action::Right}, s);
    EXPECT_LE(report.executed_length, 1u);
    EXPECT_EQ(prefix.size(), report.executed_length);
}

TEST(Truncate, PropertiesOnRandomPaths) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const auto s = gen::scenario(rng, 2, 6, 14);
        const auto actions = gen::actions(rng, 20);
        // Round trip through cells.
        const auto cells = counterfactual::replay(actions, s);
        UserPath path;
        for (const auto& c : cells)
            if (path.cells.empty() || path.cells.back() != c) path.cells.push_back(c);
        const auto back = counterfactual::path_to_actions(path, s);
        EXPECT_EQ(counterfactual::replay(back, s).back(), cells.back());

        auto [prefix, report] = counterfactual::feasibility_truncate(actions, s);
        EXPECT_LE(report.executed_length, report.original_length);
        EXPECT_EQ(report.cause == TruncationCause::None, report.executed_length == report.original_length);
        auto [again, report2] = counterfactual::feasibility_truncate(prefix, s);
        EXPECT_EQ(again, prefix);
        EXPECT_EQ(report2.cause, TruncationCause::None);
        sar::SarModel m(s);
        EXPECT_NO_THROW(features::feature_expectation_open(prefix, m.initial_belief(), m));
    }
}

TEST(ParsePath, Format) {
    EXPECT_EQ(counterfactual::parse_path("1,1; 1,2;2,2").cells, (std::vector<sar::Cell>{{1, 1}, {1, 2}, {2, 2}}));
    EXPECT_THROW(counterfactual::parse_path("1,1;x,2"), ValidationError);
    EXPECT_THROW(counterfactual::parse_path("1;2"), ValidationError);
}
