#pragma once

#include <cstdint>
#include <string>

#include "sarx/service/simulate.hpp"
#include "sarx/service/workflow.hpp"

namespace sarx::service {

/// Built-in scenarios 1 (one observable cell of interest) and 2 (battery
/// limited, three cells of interest). Throws ValidationError for other ids.
sar::Scenario case_study_scenario(int id);
/// Target location revealed after the executed run.
sar::Cell case_study_target(int id);
/// Reference user path drawn after seeing the executed run.
counterfactual::UserPath case_study_user_path(int id);

struct CaseStudy {
    int id = 0;
    sar::Scenario scenario;
    solver::AlphaPolicy policy;
    Trace trace;
    CounterfactualResult contrast;
    std::string table;
};

CaseStudy run_case_study(int id, const solver::SolveOptions& options = {}, std::uint64_t seed = 1);

}  // namespace sarx::service
