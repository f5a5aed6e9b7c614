#include "sarx/service/case_study.hpp"

#include "sarx/errors.hpp"

namespace sarx::service {

namespace {

void check_id(int id) {
    if (id != 1 && id != 2) throw ValidationError("/case", "case study must be 1 or 2");
}

}  // namespace

sar::Scenario case_study_scenario(int id) {
    check_id(id);
    sar::Scenario s;
    s.grid_size = 5;
    s.start = {1, 1};
    if (id == 1) {
        s.interests = {{{1, 5}, 3.0}};
        s.target_weight = 500.0;
        s.battery = 25;
    } else {
        s.interests = {{{5, 5}, 3.0}, {{4, 1}, 1.0}, {{3, 3}, 1.0}};
        s.target_weight = 100.0;
        s.battery = 12;
    }
    return s;
}

sar::Cell case_study_target(int id) {
    check_id(id);
    return id == 1 ? sar::Cell{5, 5} : sar::Cell{1, 5};
}

counterfactual::UserPath case_study_user_path(int id) {
    check_id(id);
    if (id == 1) return {{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 5}, {3, 5}, {4, 5}, {5, 5}}};
    return {{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 3}, {4, 4}, {5, 4}, {5, 5}}};
}

CaseStudy run_case_study(int id, const solver::SolveOptions& options, std::uint64_t seed) {
    CaseStudy cs;
    cs.id = id;
    cs.scenario = case_study_scenario(id);
    cs.policy = solver::solve(cs.scenario, options);
    cs.trace = simulate(cs.policy, cs.scenario, seed, case_study_target(id));
    cs.contrast = run_counterfactual(cs.policy, cs.scenario, case_study_user_path(id));
    cs.table = format_table(cs.contrast, sar::feature_labels(cs.scenario));
    return cs;
}

}  // namespace sarx::service
