#include "sarx/service/session_store.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include "sarx/errors.hpp"
#include "sarx/service/json_io.hpp"

namespace sarx::service {

namespace fs = std::filesystem;

namespace {

bool valid_id(const std::string& id) {
    if (id.size() != 16) return false;
    for (char c : id)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'))) return false;
    return true;
}

void write_atomic(const fs::path& path, const std::string& text) {
    static std::atomic<std::uint64_t> counter{0};
    const fs::path tmp = path.string() + ".tmp" + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw Error("cannot write " + tmp.string());
    }
    fs::rename(tmp, path);
}

std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

SessionStore::SessionStore(fs::path data_dir) : dir_(std::move(data_dir)) { fs::create_directories(dir_); }

std::string SessionStore::put_scenario(const sar::Scenario& s) {
    const std::string id = scenario_id(s);
    std::unique_lock guard(lock(id));
    const fs::path file = folder(id) / "scenario.json";
    if (!fs::exists(file)) {
        fs::create_directories(folder(id));
        write_atomic(file, to_json(s).dump(2));
    }
    return id;
}

std::optional<sar::Scenario> SessionStore::scenario(const std::string& id) {
    if (!valid_id(id)) return std::nullopt;
    const auto text = read_file(folder(id) / "scenario.json");
    if (!text) return std::nullopt;
    return scenario_from_json(json::parse(*text));
}

std::string SessionStore::put_policy(const std::string& sid, const solver::AlphaPolicy& policy) {
    const json doc = to_json(policy);
    const std::string pid = service::policy_id(policy);
    write_atomic(folder(sid) / ("policy-" + pid + ".json"), doc.dump());
    write_atomic(folder(sid) / "current-policy", pid);
    std::lock_guard g(mu_);
    policies_[sid] = std::make_shared<const solver::AlphaPolicy>(policy);
    policy_ids_[sid] = pid;
    return pid;
}

std::optional<std::string> SessionStore::policy_id(const std::string& sid) {
    {
        std::lock_guard g(mu_);
        if (auto it = policy_ids_.find(sid); it != policy_ids_.end()) return it->second;
    }
    if (!valid_id(sid)) return std::nullopt;
    return read_file(folder(sid) / "current-policy");
}

std::shared_ptr<const solver::AlphaPolicy> SessionStore::policy(const std::string& sid) {
    {
        std::lock_guard g(mu_);
        if (auto it = policies_.find(sid); it != policies_.end()) return it->second;
    }
    const auto pid = policy_id(sid);
    if (!pid) return nullptr;
    const auto text = read_file(folder(sid) / ("policy-" + *pid + ".json"));
    if (!text) return nullptr;
    auto loaded = std::make_shared<const solver::AlphaPolicy>(policy_from_json(json::parse(*text)));
    std::lock_guard g(mu_);
    policies_[sid] = loaded;
    policy_ids_[sid] = *pid;
    return loaded;
}

void SessionStore::append(const std::string& sid, const std::string& kind, json entry) {
    json line = {{"kind", kind}};
    line.update(entry);
    std::ofstream out(folder(sid) / "history.jsonl", std::ios::binary | std::ios::app);
    out << line.dump() << '\n';
    if (!out) throw Error("cannot append to the history of " + sid);
}

json SessionStore::history(const std::string& sid) const {
    json out = json::array();
    std::ifstream in(folder(sid) / "history.jsonl", std::ios::binary);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

std::shared_mutex& SessionStore::lock(const std::string& sid) {
    std::lock_guard g(mu_);
    auto& slot = locks_[sid];
    if (!slot) slot = std::make_unique<std::shared_mutex>();
    return *slot;
}

}  // namespace sarx::service
