#include "sarx/service/simulate.hpp"

#include "sarx/errors.hpp"

namespace sarx::service {

Trace simulate(const solver::AlphaPolicy& policy, const sar::Scenario& scenario, std::uint64_t seed,
               std::optional<sar::Cell> true_target) {
    if (!(policy.scenario() == scenario))
        throw ValidationError("/policy", "policy was solved for a different scenario");
    const sar::SarModel model(scenario);
    if (true_target && !model.grid().contains(*true_target))
        throw ValidationError("/true-target", "cell outside the grid");

    const sar::SarBelief b0 = model.initial_belief();
    std::mt19937_64 rng(seed);
    const sar::Cell target = true_target ? *true_target : features::sample_target(b0, model, rng);

    Trace trace;
    trace.seed = seed;
    if (auto live = features::live_belief(b0, model)) {
        features::ClosedLoopTree tree(policy, model, std::move(*live));
        trace.episode = features::run_closed_loop(tree, b0, target, model, rng, true);
    } else {
        trace.episode = features::run_open_loop({}, b0, target, model, rng, true);
    }
    return trace;
}

}  // namespace sarx::service
