#pragma once

#include <cstdint>
#include <optional>

#include "sarx/features/rollout.hpp"
#include "sarx/sar/scenario.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::service {

/// A recorded closed-loop episode plus the seed that produced it.
struct Trace {
    std::uint64_t seed = 0;
    features::Episode episode;
};

/// Runs `policy` once. Without `true_target` the target is drawn from the
/// initial belief using the seeded generator, which then drives the
/// detections, so the result is a pure function of the arguments.
/// Throws ValidationError when the policy was solved for another scenario or
/// the target is off the grid, and UnreachableStratum if the policy has no
/// vectors for a visited belief.
Trace simulate(const solver::AlphaPolicy& policy, const sar::Scenario& scenario, std::uint64_t seed,
               std::optional<sar::Cell> true_target = std::nullopt);

}  // namespace sarx::service
