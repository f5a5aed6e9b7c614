#include "sarx/sar/grid.hpp"

namespace sarx::sar {

std::string to_string(Cell c) { return "[" + std::to_string(c.x) + "," + std::to_string(c.y) + "]"; }

std::string_view to_string(Action a) {
    switch (a) {
        case Action::Up: return "Up";
        case Action::Down: return "Down";
        case Action::Left: return "Left";
        case Action::Right: return "Right";
    }
    return "?";
}

std::optional<Action> parse_action(std::string_view name) {
    for (Action a : kActions)
        if (to_string(a) == name) return a;
    return std::nullopt;
}

std::string_view to_string(DetectionMetric m) {
    return m == DetectionMetric::Chebyshev ? "chebyshev" : "manhattan";
}

std::optional<DetectionMetric> parse_metric(std::string_view name) {
    if (name == "chebyshev") return DetectionMetric::Chebyshev;
    if (name == "manhattan") return DetectionMetric::Manhattan;
    return std::nullopt;
}

Cell Grid::step(Cell c, Action a) const noexcept {
    Cell next = c;
    switch (a) {
        case Action::Up: ++next.y; break;
        case Action::Down: --next.y; break;
        case Action::Left: --next.x; break;
        case Action::Right: ++next.x; break;
    }
    return contains(next) ? next : c;
}

}  // namespace sarx::sar
