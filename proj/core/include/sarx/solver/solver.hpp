#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sarx/sar/model.hpp"

namespace sarx::solver {

/// Linear value function over target hypotheses for one (robot cell, battery)
/// stratum, tagged with the first action of the conditional plan it values.
struct AlphaVector {
    std::vector<double> coefficients;
    sar::Action action = sar::Action::Up;

    bool operator==(const AlphaVector&) const = default;
};

struct SolveStats {
    double epsilon = 0.0;
    double lower = 0.0;  // certified lower bound at the initial belief
    double upper = 0.0;  // certified upper bound at the initial belief
    std::int64_t iterations = 0;
    std::int64_t backups = 0;
    double seconds = 0.0;
    bool converged = false;         // upper - lower <= epsilon
    bool budget_exhausted = false;  // stopped on the iteration or time cap

    double gap() const noexcept { return upper - lower; }
    bool operator==(const SolveStats&) const = default;
};

/// Closed-loop policy: alpha vectors per (robot cell, battery) stratum. Strata
/// are indexed cell * (battery budget + 1) + battery. Immutable once built.
class AlphaPolicy {
public:
    AlphaPolicy() = default;
    AlphaPolicy(sar::Scenario scenario, std::vector<std::vector<AlphaVector>> strata,
                SolveStats stats);

    const sar::Scenario& scenario() const noexcept { return scenario_; }
    const SolveStats& stats() const noexcept { return stats_; }
    const std::vector<std::vector<AlphaVector>>& strata() const noexcept { return strata_; }

    /// Vectors of a stratum; empty when the stratum is outside the solved set.
    std::span<const AlphaVector> stratum(sar::Cell robot, int battery) const;
    std::size_t num_vectors() const;

    bool operator==(const AlphaPolicy&) const = default;

private:
    sar::Scenario scenario_;
    std::vector<std::vector<AlphaVector>> strata_;
    SolveStats stats_;
};

struct SolveOptions {
    std::optional<double> epsilon;  // default 1e-3 * |r_target|
    std::int64_t max_iterations = 2'000'000;
    double max_seconds = 120.0;
};

double default_epsilon(const sar::Scenario& s);

/// Heuristic-search point-based value iteration with upper and lower bounds.
/// Returns the best policy found; stats().converged reports whether the gap at
/// the initial belief closed to epsilon before the budget ran out.
AlphaPolicy solve(const sar::Scenario& scenario, const SolveOptions& options = {});

/// Action of the maximizing alpha vector; ties go to the earlier action in
/// Up, Down, Left, Right order. Throws UnreachableStratum.
sar::Action policy_action(const AlphaPolicy& policy, const sar::SarBelief& b);

/// max over the stratum's vectors of alpha . b. Throws UnreachableStratum.
double policy_value(const AlphaPolicy& policy, const sar::SarBelief& b);

}  // namespace sarx::solver
