#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sarx::pomdp {

inline constexpr double kNormalizationTolerance = 1e-9;
inline constexpr double kZeroProbability = 1e-12;

/// Probability distribution over the item ids 0..size()-1.
///
/// Stored densely; the support is the set of ids with positive mass. Every
/// constructor checks that entries are nonnegative and sum to one within
/// kNormalizationTolerance.
class DiscreteDistribution {
public:
    DiscreteDistribution() = default;

    /// Takes ownership of an already-normalized probability vector.
    explicit DiscreteDistribution(std::vector<double> probabilities);

    /// Normalizes nonnegative weights. Throws ZeroProbabilityObservation when
    /// the total mass is below kZeroProbability.
    static DiscreteDistribution from_weights(std::vector<double> weights);
    static DiscreteDistribution point_mass(std::size_t id, std::size_t size);
    static DiscreteDistribution uniform(std::size_t size);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t id) const { return probs_[id]; }
    double probability(std::size_t id) const { return id < probs_.size() ? probs_[id] : 0.0; }
    std::span<const double> probabilities() const noexcept { return probs_; }

    /// (id, probability) pairs with positive probability, in increasing id order.
    std::vector<std::pair<std::size_t, double>> support() const;

    /// Returns the single support id if this is a point mass.
    bool is_point_mass(std::size_t* id = nullptr) const;

    bool operator==(const DiscreteDistribution&) const = default;

private:
    std::vector<double> probs_;
};

}  // namespace sarx::pomdp
