#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sarx/sar/features.hpp"
#include "sarx/sar/model.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::features {

enum class Method : std::uint8_t { Exact, MonteCarlo };

/// Expected discounted feature occupancies mu = E[sum_t gamma^t phi(s_t)].
struct FeatureExpectation {
    sar::FeatureVector mu;
    Method method = Method::Exact;
    std::optional<std::vector<double>> standard_errors;  // Monte Carlo only
    /// Zero for every evaluator here: the battery bounds episode length.
    double truncation_residual_bound = 0.0;
};

/// Exact mu of a closed-loop policy by conditioning on each target
/// hypothesis: for a fixed target only detection noise is random, so each
/// conditional expectation is a small enumeration, mixed by b0.
FeatureExpectation feature_expectation_closed(const solver::AlphaPolicy& policy,
                                              const sar::SarBelief& b0, const sar::SarModel& model);

/// Same quantity by the belief-space recursion
///   mu(b) = phi(b, pi(b)) + gamma * sum_o P(o | b) mu(b_o).
FeatureExpectation feature_expectation_closed_recursive(const solver::AlphaPolicy& policy,
                                                        const sar::SarBelief& b0,
                                                        const sar::SarModel& model);

/// Exact mu of an open-loop action sequence. The robot path is fixed, so each
/// target hypothesis ends the episode the first time the path enters it (or
/// on battery termination, or when the actions run out). Throws
/// InfeasiblePath when actions remain after a battery-terminal step.
FeatureExpectation feature_expectation_open(std::span<const sar::Action> actions,
                                            const sar::SarBelief& b0, const sar::SarModel& model);

/// Open-loop mu by belief-space recursion; used to cross-check the closed form.
FeatureExpectation feature_expectation_open_recursive(std::span<const sar::Action> actions,
                                                      const sar::SarBelief& b0,
                                                      const sar::SarModel& model);

/// Seeded Monte-Carlo estimate with per-feature standard errors. Rollout i
/// draws its target from b0 and then its detections, all from one generator
/// seeded with `seed`, so rollout 0 matches a simulation with the same seed.
FeatureExpectation feature_expectation_mc(const solver::AlphaPolicy& policy,
                                          const sar::SarBelief& b0, const sar::SarModel& model,
                                          std::int64_t n_rollouts, std::uint64_t seed);
FeatureExpectation feature_expectation_mc(std::span<const sar::Action> actions,
                                          const sar::SarBelief& b0, const sar::SarModel& model,
                                          std::int64_t n_rollouts, std::uint64_t seed);

/// V = alpha . mu.
double value_from_features(const sar::FeatureWeights& alpha, const FeatureExpectation& mu);

/// Throws InfeasiblePath if the robot reaches a battery-terminal state with
/// actions still left to execute.
void check_feasible(std::span<const sar::Action> actions, const sar::SarBelief& b0,
                    const sar::SarModel& model);

}  // namespace sarx::features
