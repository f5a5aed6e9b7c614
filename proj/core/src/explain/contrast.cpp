#include "sarx/explain/contrast.hpp"

#include <cmath>

#include "sarx/errors.hpp"

namespace sarx::explain {

std::string_view to_string(RatioBucket b) {
    switch (b) {
        case RatioBucket::Neither: return "neither";
        case RatioBucket::AlmostNever: return "almost-never";
        case RatioBucket::MuchLess: return "much-less";
        case RatioBucket::AboutHalf: return "about-half";
        case RatioBucket::Less: return "less";
        case RatioBucket::AboutSame: return "about-same";
        case RatioBucket::More: return "more";
        case RatioBucket::AboutTwice: return "about-twice";
        case RatioBucket::ManyTimes: return "many-times";
    }
    return "?";
}

std::vector<BucketRule> ContrastConfig::default_buckets() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {
        {0.0, 0.05, false, RatioBucket::AlmostNever},
        {0.05, 0.4, false, RatioBucket::MuchLess},
        {0.4, 0.6, false, RatioBucket::AboutHalf},
        {0.6, 0.9, false, RatioBucket::Less},
        {0.9, 1.1, true, RatioBucket::AboutSame},
        {1.1, 1.8, false, RatioBucket::More},
        {1.8, 2.5, true, RatioBucket::AboutTwice},
        {2.5, inf, true, RatioBucket::ManyTimes},
    };
}

RatioBucket bucket_for(double mu_optimal, double mu_user, const ContrastConfig& config) {
    const bool opt_zero = std::abs(mu_optimal) <= config.zero_tolerance;
    const bool user_zero = std::abs(mu_user) <= config.zero_tolerance;
    if (opt_zero && user_zero) return RatioBucket::Neither;
    if (user_zero) return RatioBucket::ManyTimes;
    const double r = mu_optimal / mu_user;
    for (const auto& rule : config.buckets) {
        if (r >= rule.low && (r < rule.high || (rule.high_inclusive && r <= rule.high))) return rule.bucket;
    }
    return RatioBucket::ManyTimes;
}

ContrastReport contrast(const features::FeatureExpectation& mu_optimal,
                        const features::FeatureExpectation& mu_user, const sar::FeatureWeights& alpha,
                        const std::vector<std::string>& labels,
                        const std::optional<counterfactual::FeasibilityReport>& feasibility,
                        const ContrastConfig& config) {
    const std::size_t n = labels.size();
    if (n < 2 || mu_optimal.mu.size() != n || mu_user.mu.size() != n || alpha.size() != n)
        throw DimensionMismatch("contrast needs matching feature, weight and label lengths");

    ContrastReport r;
    r.labels = labels;
    r.mu_optimal = mu_optimal.mu;
    r.mu_user = mu_user.mu;
    r.alpha = alpha;
    r.weighting_factor = config.weighting_factor;
    r.contributions_optimal.resize(n);
    r.contributions_user.resize(n);
    double best_gap = -1.0;
    bool all_equal = true;
    for (std::size_t k = 0; k < n; ++k) {
        r.contributions_optimal[k] = alpha[k] * r.mu_optimal[k];
        r.contributions_user[k] = alpha[k] * r.mu_user[k];
        const double gap = std::abs(r.contributions_optimal[k] - r.contributions_user[k]);
        if (gap > best_gap) {
            best_gap = gap;
            r.dominant_feature = k;
        }
        if (std::abs(r.mu_optimal[k] - r.mu_user[k]) > config.zero_tolerance) all_equal = false;

        RatioFact fact{k, std::nullopt, bucket_for(r.mu_optimal[k], r.mu_user[k], config)};
        if (std::abs(r.mu_user[k]) > config.zero_tolerance) fact.ratio = r.mu_optimal[k] / r.mu_user[k];
        r.ratios.push_back(fact);
    }
    r.value_optimal = sar::dot(alpha, r.mu_optimal);
    r.value_user = sar::dot(alpha, r.mu_user);
    r.zero_gap = all_equal;

    const bool truncated = feasibility && feasibility->cause == counterfactual::TruncationCause::Battery;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        if (truncated && r.ratios[k].bucket == RatioBucket::Neither) r.infeasible_features.push_back(k);
    }

    for (std::size_t k = 0; k < n; ++k) {
        const RatioBucket b = r.ratios[k].bucket;
        if (k == r.dominant_feature || alpha[k] == 0.0) continue;
        if (b != RatioBucket::Neither && b != RatioBucket::AboutSame) r.mentioned_features.push_back(k);
    }
    return r;
}

}  // namespace sarx::explain
