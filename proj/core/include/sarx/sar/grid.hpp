#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace sarx::sar {

/// Grid cell, 1-indexed. x grows rightward, y grows upward.
struct Cell {
    int x = 1;
    int y = 1;

    auto operator<=>(const Cell&) const = default;
};

std::string to_string(Cell c);

enum class Action : std::uint8_t { Up, Down, Left, Right };

/// Fixed action order; also the tie-breaking order everywhere.
inline constexpr std::array<Action, 4> kActions{Action::Up, Action::Down, Action::Left,
                                                Action::Right};

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view name);

enum class DetectionMetric : std::uint8_t { Chebyshev, Manhattan };

std::string_view to_string(DetectionMetric m);
std::optional<DetectionMetric> parse_metric(std::string_view name);

inline int manhattan(Cell a, Cell b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

inline int chebyshev(Cell a, Cell b) {
    const int dx = std::abs(a.x - b.x);
    const int dy = std::abs(a.y - b.y);
    return dx > dy ? dx : dy;
}

/// Square n x n grid with row-major cell indexing (index = (y-1)*n + (x-1)).
class Grid {
public:
    Grid() = default;
    explicit Grid(int n) : n_(n) {}

    int size() const noexcept { return n_; }
    int num_cells() const noexcept { return n_ * n_; }

    bool contains(Cell c) const noexcept { return c.x >= 1 && c.y >= 1 && c.x <= n_ && c.y <= n_; }
    int index(Cell c) const noexcept { return (c.y - 1) * n_ + (c.x - 1); }
    Cell cell(int index) const noexcept { return Cell{index % n_ + 1, index / n_ + 1}; }

    /// Moves one cell; a move off the grid leaves the position unchanged.
    Cell step(Cell c, Action a) const noexcept;

private:
    int n_ = 1;
};

}  // namespace sarx::sar
