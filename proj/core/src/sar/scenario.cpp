#include "sarx/sar/scenario.hpp"

#include <cmath>
#include <set>

#include "sarx/errors.hpp"
#include "sarx/sar/features.hpp"

namespace sarx::sar {

namespace {

constexpr int kMaxGridSize = 16;

}  // namespace

void validate(const Scenario& s) {
    std::vector<FieldError> errors;
    auto fail = [&](std::string path, std::string msg) {
        errors.push_back({std::move(path), std::move(msg)});
    };

    if (s.grid_size < 1 || s.grid_size > kMaxGridSize) {
        fail("/grid-size", "must be between 1 and " + std::to_string(kMaxGridSize));
    }
    const Grid grid(s.grid_size < 1 ? 1 : s.grid_size);
    if (!grid.contains(s.start)) fail("/start", "cell outside the grid");

    std::set<Cell> seen;
    for (std::size_t i = 0; i < s.interests.size(); ++i) {
        const auto& l = s.interests[i];
        const std::string base = "/cells-of-interest/" + std::to_string(i);
        if (!grid.contains(l.cell)) fail(base + "/cell", "cell outside the grid");
        if (!seen.insert(l.cell).second) fail(base + "/cell", "duplicate cell of interest");
        if (!std::isfinite(l.weight)) fail(base + "/weight", "must be finite");
    }
    if (!std::isfinite(s.target_weight)) fail("/target-weight", "must be finite");
    if (!std::isfinite(s.battery_weight)) fail("/battery-weight", "must be finite");
    if (s.battery < 1) fail("/battery", "must be at least 1");
    if (!(s.p_detect >= 0.0 && s.p_detect <= 1.0)) fail("/p-detect", "must lie in [0, 1]");
    if (!(s.discount > 0.0 && s.discount < 1.0)) fail("/discount", "must lie in (0, 1)");

    if (!errors.empty()) throw ValidationError(std::move(errors));
}

std::vector<std::string> feature_labels(const Scenario& s) {
    std::vector<std::string> labels;
    labels.reserve(s.num_features());
    for (int i = 0; i < s.num_interests(); ++i) labels.push_back("l_" + std::to_string(i + 1));
    labels.emplace_back("target");
    labels.emplace_back("battery");
    return labels;
}

void FeatureVector::add_scaled(const FeatureVector& other, double scale) {
    if (other.size() != size()) throw DimensionMismatch("feature vectors differ in length");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += scale * other.values[i];
}

FeatureWeights feature_weights(const Scenario& s) {
    FeatureWeights w;
    w.alpha.reserve(s.num_features());
    for (const auto& l : s.interests) w.alpha.push_back(l.weight);
    w.alpha.push_back(s.target_weight);
    w.alpha.push_back(s.battery_weight);
    return w;
}

double dot(const FeatureWeights& w, const FeatureVector& f) {
    if (w.size() != f.size())
        throw DimensionMismatch("weights have " + std::to_string(w.size()) + " entries, features " +
                                std::to_string(f.size()));
    double v = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) v += w.alpha[i] * f.values[i];
    return v;
}

}  // namespace sarx::sar
