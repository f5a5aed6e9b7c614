#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "sarx/sar/scenario.hpp"
#include "sarx/solver/solver.hpp"

namespace sarx::service {

/// Scenarios, their latest policy and an append-only history, kept as JSON
/// files under <data-dir>/<scenario-id>/. Safe to share between threads; the
/// per-scenario mutex returned by lock() gives callers single-writer,
/// many-reader access to one scenario's session.
class SessionStore {
public:
    explicit SessionStore(std::filesystem::path data_dir);

    const std::filesystem::path& data_dir() const noexcept { return dir_; }

    /// Idempotent: equal scenarios share an id.
    std::string put_scenario(const sar::Scenario& s);
    std::optional<sar::Scenario> scenario(const std::string& id);

    /// Stores the policy as the scenario's current one and returns its id.
    std::string put_policy(const std::string& scenario_id, const solver::AlphaPolicy& policy);
    std::shared_ptr<const solver::AlphaPolicy> policy(const std::string& scenario_id);
    std::optional<std::string> policy_id(const std::string& scenario_id);

    /// Appends one entry {"kind": kind, ...entry} to the history.
    void append(const std::string& scenario_id, const std::string& kind, nlohmann::json entry);
    nlohmann::json history(const std::string& scenario_id) const;

    std::shared_mutex& lock(const std::string& scenario_id);

private:
    std::filesystem::path folder(const std::string& id) const { return dir_ / id; }

    std::filesystem::path dir_;
    std::mutex mu_;  // guards the maps below
    std::unordered_map<std::string, std::unique_ptr<std::shared_mutex>> locks_;
    std::unordered_map<std::string, std::shared_ptr<const solver::AlphaPolicy>> policies_;
    std::unordered_map<std::string, std::string> policy_ids_;
};

}  // namespace sarx::service
