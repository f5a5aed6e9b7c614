#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sarx/sar/grid.hpp"
#include "sarx/sar/scenario.hpp"

namespace sarx::counterfactual {

/// Cells drawn by the user, starting at the scenario's start cell.
struct UserPath {
    std::vector<sar::Cell> cells;

    bool operator==(const UserPath&) const = default;
};

enum class TruncationCause : std::uint8_t { None, Battery };

std::string_view to_string(TruncationCause c);

struct FeasibilityReport {
    std::size_t original_length = 0;  // in actions
    std::size_t executed_length = 0;
    TruncationCause cause = TruncationCause::None;
    std::optional<sar::Cell> truncated_at;  // last executed cell when truncated
    std::vector<sar::Cell> unreached;       // path cells after the cut, in order

    bool operator==(const FeasibilityReport&) const = default;
};

/// One cardinal action per consecutive cell pair. Throws WrongStartCell,
/// NonAdjacentStep or StayNotSupported (with the offending index), and
/// ValidationError for cells off the grid.
std::vector<sar::Action> path_to_actions(const UserPath& path, const sar::Scenario& scenario);

/// Cells visited when replaying `actions` from the start cell, start included.
std::vector<sar::Cell> replay(const std::vector<sar::Action>& actions, const sar::Scenario& scenario);

/// Keeps the longest prefix the battery allows: the sequence is cut right
/// after the first step that lands in a battery-terminal state, so that step
/// (and its features) still happens but nothing after it does.
std::pair<std::vector<sar::Action>, FeasibilityReport> feasibility_truncate(
    const std::vector<sar::Action>& actions, const sar::Scenario& scenario);

/// Parses "x,y;x,y;..." as used on the command line.
UserPath parse_path(const std::string& text);

}  // namespace sarx::counterfactual
