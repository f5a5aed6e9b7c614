#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sarx/counterfactual/counterfactual.hpp"
#include "sarx/features/feature_expectation.hpp"
#include "sarx/sar/features.hpp"

namespace sarx::explain {

/// Qualitative reading of mu_optimal / mu_user for one feature.
enum class RatioBucket : std::uint8_t {
    Neither,      // both zero
    AlmostNever,
    MuchLess,
    AboutHalf,
    Less,
    AboutSame,
    More,
    AboutTwice,
    ManyTimes,
};

std::string_view to_string(RatioBucket b);

struct BucketRule {
    double low = 0.0;
    double high = 0.0;
    bool high_inclusive = false;
    RatioBucket bucket = RatioBucket::AboutSame;
};

struct ContrastConfig {
    /// Checked in order against the ratio; the first match wins.
    std::vector<BucketRule> buckets = default_buckets();
    /// The weighting sentence needs the dominant weight to be this many times
    /// larger than every other weight.
    double weighting_factor = 10.0;
    double zero_tolerance = 1e-12;

    static std::vector<BucketRule> default_buckets();
};

struct RatioFact {
    std::size_t feature = 0;
    std::optional<double> ratio;  // empty when the user policy's occupancy is zero
    RatioBucket bucket = RatioBucket::AboutSame;

    bool operator==(const RatioFact&) const = default;
};

/// Feature layout follows the scenario: [l_1..l_N, target, battery].
struct ContrastReport {
    std::vector<std::string> labels;
    sar::FeatureVector mu_optimal;
    sar::FeatureVector mu_user;
    sar::FeatureWeights alpha;
    std::vector<double> contributions_optimal;
    std::vector<double> contributions_user;
    double value_optimal = 0.0;
    double value_user = 0.0;
    std::size_t dominant_feature = 0;
    std::vector<RatioFact> ratios;
    std::vector<std::size_t> infeasible_features;
    std::vector<std::size_t> mentioned_features;  // rewarded, not dominant, ratio not about-same
    double weighting_factor = 10.0;
    bool zero_gap = false;

    std::size_t num_interests() const noexcept { return labels.size() - 2; }
    std::size_t target_feature() const noexcept { return labels.size() - 2; }
    std::size_t battery_feature() const noexcept { return labels.size() - 1; }
};

RatioBucket bucket_for(double mu_optimal, double mu_user, const ContrastConfig& config);

/// Builds the paired report. Cells of interest that neither policy reaches
/// are flagged infeasible only when `feasibility` shows the user path was
/// cut short by the battery. Throws DimensionMismatch.
ContrastReport contrast(const features::FeatureExpectation& mu_optimal,
                        const features::FeatureExpectation& mu_user,
                        const sar::FeatureWeights& alpha, const std::vector<std::string>& labels,
                        const std::optional<counterfactual::FeasibilityReport>& feasibility = std::nullopt,
                        const ContrastConfig& config = {});

}  // namespace sarx::explain
