#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "sarx/service/session_store.hpp"

namespace sarx::service {

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
};

/// Transport-independent handlers of the JSON API. Errors map to statuses:
/// 400 malformed JSON, 404 unknown scenario, 409 no solved policy yet,
/// 422 invalid input (field paths under "errors"), 507 solver budget exceeded.
class Api {
public:
    explicit Api(SessionStore& store) : store_(store) {}

    ApiResponse create_scenario(const std::string& body);
    ApiResponse get_scenario(const std::string& id);
    ApiResponse solve(const std::string& id, const std::string& body);
    ApiResponse rollout(const std::string& id, const std::string& body);
    ApiResponse counterfactual(const std::string& id, const std::string& body);

private:
    SessionStore& store_;
};

/// Serves an Api over HTTP:
///   POST /scenarios, GET /scenarios/{id}, POST /scenarios/{id}/solve,
///   POST /scenarios/{id}/rollout, POST /scenarios/{id}/counterfactual.
class HttpServer {
public:
    explicit HttpServer(Api& api);
    ~HttpServer();

    /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    bool run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace sarx::service
