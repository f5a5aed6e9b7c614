#include "sarx/service/http_api.hpp"

#include <functional>

#include <httplib.h>

#include "sarx/errors.hpp"
#include "sarx/service/json_io.hpp"
#include "sarx/service/simulate.hpp"
#include "sarx/service/workflow.hpp"

namespace sarx::service {

namespace {

ApiResponse error(int status, const std::string& kind, const std::string& message) {
    return {status, {{"error", kind}, {"message", message}}};
}

ApiResponse guarded(const std::function<ApiResponse()>& handler) {
    try {
        return handler();
    } catch (const json::parse_error& e) {
        return error(400, "malformed-json", e.what());
    } catch (const ValidationError& e) {
        return {422, to_json(e)};
    } catch (const PathError& e) {
        ApiResponse r = error(422, "invalid-path", e.what());
        r.body["errors"] = json::array({{{"path", "/path/" + std::to_string(e.index())}, {"message", e.what()}}});
        return r;
    } catch (const UnknownTemplateSet& e) {
        return error(422, "unknown-template-set", e.what());
    } catch (const BudgetExceeded& e) {
        return error(507, "budget-exceeded", e.what());
    } catch (const std::exception& e) {
        return error(500, "internal", e.what());
    }
}

json parse_object(const std::string& body) {
    if (body.empty()) return json::object();
    json j = json::parse(body);
    if (!j.is_object()) throw ValidationError("", "request body must be a JSON object");
    return j;
}

ApiResponse not_found(const std::string& id) { return error(404, "not-found", "no scenario with id " + id); }

}  // namespace

ApiResponse Api::create_scenario(const std::string& body) {
    return guarded([&] {
        const sar::Scenario s = scenario_from_json(json::parse(body));
        const std::string id = store_.put_scenario(s);
        return ApiResponse{201, {{"scenario-id", id}}};
    });
}

ApiResponse Api::get_scenario(const std::string& id) {
    return guarded([&] {
        const auto s = store_.scenario(id);
        if (!s) return not_found(id);
        std::shared_lock guard(store_.lock(id));
        json history = store_.history(id);
        json latest_trace = nullptr;
        json counterfactuals = json::array();
        for (const auto& entry : history) {
            if (entry["kind"] == "rollout") latest_trace = entry["trace"];
            if (entry["kind"] == "counterfactual") counterfactuals.push_back(entry);
        }
        const auto pid = store_.policy_id(id);
        return ApiResponse{200,
                           {{"scenario-id", id},
                            {"scenario", to_json(*s)},
                            {"session",
                             {{"policy-id", pid ? json(*pid) : json(nullptr)},
                              {"latest-trace", latest_trace},
                              {"counterfactuals", counterfactuals},
                              {"history", history}}}}};
    });
}

ApiResponse Api::solve(const std::string& id, const std::string& body) {
    return guarded([&] {
        const auto s = store_.scenario(id);
        if (!s) return not_found(id);
        const json req = parse_object(body);
        solver::SolveOptions options;
        std::vector<FieldError> errors;
        if (req.contains("epsilon")) {
            if (!req["epsilon"].is_number() || !(req["epsilon"].get<double>() > 0.0))
                errors.push_back({"/epsilon", "must be a positive number"});
            else
                options.epsilon = req["epsilon"].get<double>();
        }
        if (req.contains("budget")) {
            if (!req["budget"].is_number() || !(req["budget"].get<double>() > 0.0))
                errors.push_back({"/budget", "must be a positive number of seconds"});
            else
                options.max_seconds = req["budget"].get<double>();
        }
        if (req.contains("max-iterations")) {
            if (!req["max-iterations"].is_number_integer() || req["max-iterations"].get<std::int64_t>() < 1)
                errors.push_back({"/max-iterations", "must be a positive integer"});
            else
                options.max_iterations = req["max-iterations"].get<std::int64_t>();
        }
        if (!errors.empty()) throw ValidationError(std::move(errors));

        std::unique_lock guard(store_.lock(id));
        const solver::AlphaPolicy policy = solver::solve(*s, options);
        const std::string pid = store_.put_policy(id, policy);
        const auto& st = policy.stats();
        json out = {{"policy-id", pid},
                    {"value-lower", st.lower},
                    {"value-upper", st.upper},
                    {"gap", st.gap()},
                    {"epsilon", st.epsilon},
                    {"converged", st.converged},
                    {"budget-exhausted", st.budget_exhausted}};
        store_.append(id, "solve", {{"request", req}, {"response", out}});
        return ApiResponse{200, out};
    });
}

ApiResponse Api::rollout(const std::string& id, const std::string& body) {
    return guarded([&] {
        const auto s = store_.scenario(id);
        if (!s) return not_found(id);
        const json req = parse_object(body);
        if (!req.contains("seed") || !req["seed"].is_number_unsigned())
            throw ValidationError("/seed", "required non-negative integer");
        std::optional<sar::Cell> target;
        if (req.contains("true-target") && !req["true-target"].is_null())
            target = cell_from_json(req["true-target"], "/true-target");

        std::unique_lock guard(store_.lock(id));
        const auto policy = store_.policy(id);
        if (!policy) return error(409, "not-solved", "solve the scenario first");
        const json out = to_json(simulate(*policy, *s, req["seed"].get<std::uint64_t>(), target));
        store_.append(id, "rollout", {{"request", req}, {"trace", out}});
        return ApiResponse{200, out};
    });
}

ApiResponse Api::counterfactual(const std::string& id, const std::string& body) {
    return guarded([&] {
        const auto s = store_.scenario(id);
        if (!s) return not_found(id);
        const json req = parse_object(body);
        if (!req.contains("path")) throw ValidationError("/path", "required field is missing");
        const auto path = path_from_json(req["path"]);
        std::string template_set(explain::kDefaultTemplateSet);
        if (req.contains("template-set")) {
            if (!req["template-set"].is_string()) throw ValidationError("/template-set", "must be a string");
            template_set = req["template-set"].get<std::string>();
        }

        std::unique_lock guard(store_.lock(id));
        const auto policy = store_.policy(id);
        if (!policy) return error(409, "not-solved", "solve the scenario first");
        json out = to_json(run_counterfactual(*policy, *s, path, template_set));
        out["policy-id"] = *store_.policy_id(id);
        store_.append(id, "counterfactual", {{"request", req}, {"response", out}});
        return ApiResponse{200, out};
    });
}

struct HttpServer::Impl {
    httplib::Server server;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>()) {
    auto reply = [](httplib::Response& res, const ApiResponse& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    auto& svr = impl_->server;
    svr.Post("/scenarios", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.create_scenario(req.body));
    });
    svr.Get(R"(/scenarios/([^/]+))", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.get_scenario(req.matches[1]));
    });
    svr.Post(R"(/scenarios/([^/]+)/solve)", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.solve(req.matches[1], req.body));
    });
    svr.Post(R"(/scenarios/([^/]+)/rollout)", [&api, reply](const httplib::Request& req, httplib::Response& res) {
        reply(res, api.rollout(req.matches[1], req.body));
    });
    svr.Post(R"(/scenarios/([^/]+)/counterfactual)",
             [&api, reply](const httplib::Request& req, httplib::Response& res) {
                 reply(res, api.counterfactual(req.matches[1], req.body));
             });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return impl_->server.bind_to_any_port(host);
    return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
    if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace sarx::service
