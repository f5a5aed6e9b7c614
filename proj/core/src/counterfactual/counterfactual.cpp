#include "sarx/counterfactual/counterfactual.hpp"

#include <charconv>
#include <sstream>

#include "sarx/errors.hpp"

namespace sarx::counterfactual {

using sar::Action;
using sar::Cell;

std::string_view to_string(TruncationCause c) { return c == TruncationCause::None ? "none" : "battery"; }

std::vector<Action> path_to_actions(const UserPath& path, const sar::Scenario& scenario) {
    const sar::Grid grid = scenario.grid();
    if (path.cells.empty()) throw WrongStartCell("path is empty; it must begin at the start cell", 0);
    std::vector<FieldError> bounds;
    for (std::size_t i = 0; i < path.cells.size(); ++i)
        if (!grid.contains(path.cells[i]))
            bounds.push_back({"/path/" + std::to_string(i), "cell " + sar::to_string(path.cells[i]) + " outside the grid"});
    if (!bounds.empty()) throw ValidationError(std::move(bounds));
    if (path.cells.front() != scenario.start)
        throw WrongStartCell("path starts at " + sar::to_string(path.cells.front()) +
                                 " instead of the start cell " + sar::to_string(scenario.start),
                             0);

    std::vector<Action> actions;
    actions.reserve(path.cells.size() - 1);
    for (std::size_t i = 1; i < path.cells.size(); ++i) {
        const Cell from = path.cells[i - 1];
        const Cell to = path.cells[i];
        const int dx = to.x - from.x;
        const int dy = to.y - from.y;
        if (dx == 0 && dy == 0)
            throw StayNotSupported("path repeats cell " + sar::to_string(to) + " at index " +
                                       std::to_string(i) + "; there is no stay action",
                                   i);
        if (std::abs(dx) + std::abs(dy) != 1)
            throw NonAdjacentStep("cells " + sar::to_string(from) + " and " + sar::to_string(to) +
                                      " at index " + std::to_string(i) + " are not adjacent",
                                  i);
        if (dy == 1) actions.push_back(Action::Up);
        else if (dy == -1) actions.push_back(Action::Down);
        else if (dx == -1) actions.push_back(Action::Left);
        else actions.push_back(Action::Right);
    }
    return actions;
}

std::vector<Cell> replay(const std::vector<Action>& actions, const sar::Scenario& scenario) {
    const sar::Grid grid = scenario.grid();
    std::vector<Cell> cells{scenario.start};
    for (Action a : actions) cells.push_back(grid.step(cells.back(), a));
    return cells;
}

std::pair<std::vector<Action>, FeasibilityReport> feasibility_truncate(const std::vector<Action>& actions,
                                                                       const sar::Scenario& scenario) {
    const sar::Grid grid = scenario.grid();
    FeasibilityReport report;
    report.original_length = actions.size();

    Cell robot = scenario.start;
    int battery = scenario.battery;
    std::size_t executed = actions.size();
    for (std::size_t k = 0; k < actions.size(); ++k) {
        robot = grid.step(robot, actions[k]);
        --battery;
        if (battery - sar::manhattan(robot, scenario.start) < 1) {
            executed = k + 1;
            break;
        }
    }
    report.executed_length = executed;
    std::vector<Action> prefix(actions.begin(), actions.begin() + static_cast<std::ptrdiff_t>(executed));
    if (executed < actions.size()) {
        report.cause = TruncationCause::Battery;
        const auto cells = replay(actions, scenario);
        report.truncated_at = cells[executed];
        report.unreached.assign(cells.begin() + static_cast<std::ptrdiff_t>(executed) + 1, cells.end());
    }
    return {std::move(prefix), std::move(report)};
}

UserPath parse_path(const std::string& text) {
    UserPath path;
    std::stringstream ss(text);
    std::string item;
    std::size_t index = 0;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        Cell c;
        auto parse = [&](std::string_view s, int& out) {
            while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
            while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
            return ec == std::errc() && ptr == s.data() + s.size();
        };
        if (comma == std::string::npos || !parse(std::string_view(item).substr(0, comma), c.x) ||
            !parse(std::string_view(item).substr(comma + 1), c.y))
            throw ValidationError("/path/" + std::to_string(index), "expected \"x,y\", got \"" + item + "\"");
        path.cells.push_back(c);
        ++index;
    }
    return path;
}

}  // namespace sarx::counterfactual
