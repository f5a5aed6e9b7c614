#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sarx/sar/scenario.hpp"

namespace sarx::sar {

/// Feature occupancies ordered [x_1..x_N, x_t, x_b]; a single-state indicator
/// or an expected discounted sum of them.
struct FeatureVector {
    std::vector<double> values;

    FeatureVector() = default;
    explicit FeatureVector(std::size_t n) : values(n, 0.0) {}
    explicit FeatureVector(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const noexcept { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    /// this += scale * other
    void add_scaled(const FeatureVector& other, double scale);

    bool operator==(const FeatureVector&) const = default;
};

/// Per-feature reward coefficients alpha, so that R(s,a) = alpha . phi(s,a).
struct FeatureWeights {
    std::vector<double> alpha;

    std::size_t size() const noexcept { return alpha.size(); }
    double operator[](std::size_t i) const { return alpha[i]; }

    bool operator==(const FeatureWeights&) const = default;
};

/// alpha = [r_1..r_N, r_target, battery weight].
FeatureWeights feature_weights(const Scenario& s);

/// Throws DimensionMismatch when the lengths differ.
double dot(const FeatureWeights& w, const FeatureVector& f);

}  // namespace sarx::sar
