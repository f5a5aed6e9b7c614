// sarx: batch front end for solving, simulating and explaining SAR scenarios.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sarx/errors.hpp"
#include "sarx/service/case_study.hpp"
#include "sarx/service/http_api.hpp"
#include "sarx/service/json_io.hpp"

namespace {

using namespace sarx;
using service::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct SolveFlags {
    double epsilon = 0.0;
    double budget = 0.0;
    std::string policy_file;

    void add(CLI::App* cmd) {
        cmd->add_option("--epsilon", epsilon, "Target value gap (default 1e-3 * |target weight|)");
        cmd->add_option("--budget", budget, "Solver time limit in seconds");
        cmd->add_option("--policy", policy_file, "Use a saved policy instead of solving");
    }

    solver::SolveOptions options() const {
        solver::SolveOptions o;
        if (epsilon > 0.0) o.epsilon = epsilon;
        if (budget > 0.0) o.max_seconds = budget;
        return o;
    }
};

json read_json(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw ValidationError("/", "cannot open " + file);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("/", file + ": " + e.what());
    }
}

solver::AlphaPolicy obtain_policy(const sar::Scenario& s, const SolveFlags& flags) {
    if (flags.policy_file.empty()) return solver::solve(s, flags.options());
    solver::AlphaPolicy p = service::policy_from_json(read_json(flags.policy_file));
    if (!(p.scenario() == s)) throw ValidationError("/policy", "policy was solved for a different scenario");
    return p;
}

void print_result(const service::CounterfactualResult& r, const sar::Scenario& s) {
    std::cout << service::format_table(r, sar::feature_labels(s));
    if (r.feasibility.cause != counterfactual::TruncationCause::None)
        std::cout << "user path truncated after " << r.feasibility.executed_length << " of "
                  << r.feasibility.original_length << " actions at " << sar::to_string(*r.feasibility.truncated_at)
                  << '\n';
    std::printf("value    optimal %.3f  user %.3f\n\n", r.value_optimal, r.value_user);
    for (const auto& sentence : r.explanation.sentences) std::cout << sentence << '\n';
}

service::HttpServer* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contrastive explanations for search-and-rescue POMDP policies"};
    app.require_subcommand(1);

    std::string scenario_file;
    SolveFlags flags;
    std::string out_file;
    auto* solve_cmd = app.add_subcommand("solve", "Solve a scenario and print the bounds");
    solve_cmd->add_option("scenario", scenario_file, "Scenario JSON file")->required();
    solve_cmd->add_option("--epsilon", flags.epsilon, "Target value gap");
    solve_cmd->add_option("--budget", flags.budget, "Solver time limit in seconds");
    solve_cmd->add_option("-o,--output", out_file, "Write the policy JSON here");

    std::uint64_t seed = 0;
    std::string target_text;
    auto* rollout_cmd = app.add_subcommand("rollout", "Simulate the solved policy once");
    rollout_cmd->add_option("scenario", scenario_file, "Scenario JSON file")->required();
    rollout_cmd->add_option("--seed", seed, "Random seed")->required();
    rollout_cmd->add_option("--target", target_text, "True target cell \"x,y\" (sampled if omitted)");
    flags.add(rollout_cmd);

    std::string path_text;
    bool as_json = false;
    auto* contrast_cmd = app.add_subcommand("contrast", "Contrast the solved policy with a user path");
    contrast_cmd->add_option("scenario", scenario_file, "Scenario JSON file")->required();
    contrast_cmd->add_option("--path", path_text, "Cells \"x,y;x,y;...\" starting at the start cell")->required();
    contrast_cmd->add_flag("--json", as_json, "Print the full JSON result");
    flags.add(contrast_cmd);

    int case_id = 1;
    auto* case_cmd = app.add_subcommand("case-study", "Run one of the built-in case studies");
    case_cmd->add_option("case", case_id, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    case_cmd->add_option("--seed", seed, "Seed for the executed run");
    case_cmd->add_flag("--json", as_json, "Print the full JSON result");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string data_dir = "sarx-data";
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    serve_cmd->add_option("--port", port, "TCP port");
    serve_cmd->add_option("--host", host, "Bind address");
    serve_cmd->add_option("--data-dir", data_dir, "Session storage directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*solve_cmd) {
            const sar::Scenario s = service::scenario_from_json(read_json(scenario_file));
            const solver::AlphaPolicy p = solver::solve(s, flags.options());
            json out = service::to_json(p.stats());
            out["vectors"] = p.num_vectors();
            std::cout << out.dump(2) << '\n';
            if (!out_file.empty()) {
                std::ofstream f(out_file);
                f << service::to_json(p).dump();
            }
            if (!p.stats().converged) std::cerr << "warning: stopped before the gap reached epsilon\n";
        } else if (*rollout_cmd) {
            const sar::Scenario s = service::scenario_from_json(read_json(scenario_file));
            std::optional<sar::Cell> target;
            if (!target_text.empty()) {
                const auto parsed = counterfactual::parse_path(target_text);
                if (parsed.cells.size() != 1) throw ValidationError("/target", "expected one cell \"x,y\"");
                target = parsed.cells.front();
            }
            const auto p = obtain_policy(s, flags);
            std::cout << service::to_json(service::simulate(p, s, seed, target)).dump(2) << '\n';
        } else if (*contrast_cmd) {
            const sar::Scenario s = service::scenario_from_json(read_json(scenario_file));
            const auto path = counterfactual::parse_path(path_text);
            const auto p = obtain_policy(s, flags);
            const auto r = service::run_counterfactual(p, s, path);
            if (as_json)
                std::cout << service::to_json(r).dump(2) << '\n';
            else
                print_result(r, s);
        } else if (*case_cmd) {
            const auto cs = service::run_case_study(case_id, {}, seed);
            if (as_json) {
                json out = {{"scenario", service::to_json(cs.scenario)},
                            {"stats", service::to_json(cs.policy.stats())},
                            {"trace", service::to_json(cs.trace)},
                            {"counterfactual", service::to_json(cs.contrast)},
                            {"table", cs.table}};
                std::cout << out.dump(2) << '\n';
            } else {
                const auto& st = cs.policy.stats();
                std::printf("case study %d: solved in %.2fs, value in [%.3f, %.3f]\n", case_id, st.seconds, st.lower,
                            st.upper);
                const auto& ep = cs.trace.episode;
                std::printf("executed run: target %s, %zu actions, %s, return %.3f\n\n",
                            sar::to_string(ep.target).c_str(), ep.steps.size() - 1,
                            std::string(sar::to_string(ep.cause)).c_str(), ep.discounted_return);
                print_result(cs.contrast, cs.scenario);
            }
        } else if (*serve_cmd) {
            service::SessionStore store(data_dir);
            service::Api api(store);
            service::HttpServer server(api);
            const int bound = server.bind(host, port);
            if (bound < 0) {
                std::cerr << "cannot bind " << host << ':' << port << '\n';
                return kExitFailure;
            }
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << host << ':' << bound << ", data in " << data_dir << '\n';
            server.run();
            g_server = nullptr;
        }
    } catch (const ValidationError& e) {
        for (const auto& f : e.errors()) std::cerr << "error: " << f.path << ": " << f.message << '\n';
        return kExitValidation;
    } catch (const PathError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitOk;
}
