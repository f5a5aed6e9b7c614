#include "sarx/pomdp/distribution.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sarx/errors.hpp"

namespace sarx::pomdp {

namespace {

void check_entries(const std::vector<double>& p) {
    for (double v : p) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("probabilities must be finite and nonnegative");
    }
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> probabilities)
    : probs_(std::move(probabilities)) {
    check_entries(probs_);
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kNormalizationTolerance)
        throw std::invalid_argument("probabilities sum to " + std::to_string(total) + ", not 1");
}

DiscreteDistribution DiscreteDistribution::from_weights(std::vector<double> weights) {
    check_entries(weights);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (total < kZeroProbability)
        throw ZeroProbabilityObservation("cannot normalize weights with total mass " +
                                         std::to_string(total));
    for (double& w : weights) w /= total;
    DiscreteDistribution d;
    d.probs_ = std::move(weights);
    return d;
}

DiscreteDistribution DiscreteDistribution::point_mass(std::size_t id, std::size_t size) {
    if (id >= size) throw std::out_of_range("point mass id outside the item range");
    std::vector<double> p(size, 0.0);
    p[id] = 1.0;
    DiscreteDistribution d;
    d.probs_ = std::move(p);
    return d;
}

DiscreteDistribution DiscreteDistribution::uniform(std::size_t size) {
    if (size == 0) throw std::invalid_argument("uniform distribution over zero items");
    DiscreteDistribution d;
    d.probs_.assign(size, 1.0 / static_cast<double>(size));
    return d;
}

std::vector<std::pair<std::size_t, double>> DiscreteDistribution::support() const {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t i = 0; i < probs_.size(); ++i)
        if (probs_[i] > 0.0) out.emplace_back(i, probs_[i]);
    return out;
}

bool DiscreteDistribution::is_point_mass(std::size_t* id) const {
    std::size_t count = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] > 0.0) {
            ++count;
            last = i;
        }
    }
    if (count != 1) return false;
    if (id) *id = last;
    return true;
}

}  // namespace sarx::pomdp
