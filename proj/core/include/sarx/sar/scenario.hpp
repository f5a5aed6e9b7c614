#pragma once

#include <span>
#include <string>
#include <vector>

#include "sarx/sar/grid.hpp"

namespace sarx::sar {

struct InterestCell {
    Cell cell;
    double weight = 0.0;

    bool operator==(const InterestCell&) const = default;
};

/// Complete definition of a search-and-rescue problem instance.
struct Scenario {
    int grid_size = 5;
    Cell start{1, 1};
    std::vector<InterestCell> interests;
    double target_weight = 500.0;
    int battery = 25;
    double p_detect = 0.8;
    DetectionMetric metric = DetectionMetric::Chebyshev;
    double discount = 0.95;
    double battery_weight = 0.0;  // weight of the battery-terminal feature

    int num_cells() const noexcept { return grid_size * grid_size; }
    int num_interests() const noexcept { return static_cast<int>(interests.size()); }
    /// Feature layout: [l_1..l_N, target, battery].
    int num_features() const noexcept { return num_interests() + 2; }
    int target_feature() const noexcept { return num_interests(); }
    int battery_feature() const noexcept { return num_interests() + 1; }
    Grid grid() const { return Grid(grid_size); }

    bool operator==(const Scenario&) const = default;
};

/// Throws ValidationError listing every offending field.
void validate(const Scenario& s);

/// Labels in feature order: "l_1".."l_N", "target", "battery".
std::vector<std::string> feature_labels(const Scenario& s);

}  // namespace sarx::sar
