#include "sarx/service/json_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <set>

namespace sarx::service {

namespace {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

json optional_or_null(const auto& opt) {
    if (!opt) return nullptr;
    return to_json(*opt);
}

json labelled(std::span<const std::size_t> ids, const std::vector<std::string>& labels) {
    json out = json::array();
    for (std::size_t k : ids) out.push_back({{"feature", k}, {"label", labels[k]}});
    return out;
}

// Reads typed fields out of an object, recording every problem.
class Reader {
public:
    Reader(const json& j, std::vector<FieldError>& errors) : j_(j), errors_(errors) {}

    const json* field(const std::string& key, bool required) {
        auto it = j_.find(key);
        if (it == j_.end() || it->is_null()) {
            if (required) errors_.push_back({"/" + key, "required field is missing"});
            return nullptr;
        }
        return &*it;
    }

    void integer(const std::string& key, int& out, bool required) {
        if (const json* v = field(key, required)) {
            if (!v->is_number_integer())
                errors_.push_back({"/" + key, "must be an integer"});
            else
                out = v->get<int>();
        }
    }

    void number(const std::string& key, double& out, bool required) {
        if (const json* v = field(key, required)) {
            if (!v->is_number())
                errors_.push_back({"/" + key, "must be a number"});
            else
                out = v->get<double>();
        }
    }

    void cell(const std::string& key, sar::Cell& out, bool required) {
        if (const json* v = field(key, required)) {
            try {
                out = cell_from_json(*v, "/" + key);
            } catch (const ValidationError& e) {
                errors_.insert(errors_.end(), e.errors().begin(), e.errors().end());
            }
        }
    }

private:
    const json& j_;
    std::vector<FieldError>& errors_;
};

}  // namespace

json to_json(sar::Cell c) { return json::array({c.x, c.y}); }

sar::Cell cell_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ValidationError(path, "expected a cell [x, y] of two integers");
    return sar::Cell{j[0].get<int>(), j[1].get<int>()};
}

json to_json(const sar::Scenario& s) {
    json interests = json::array();
    for (const auto& l : s.interests) interests.push_back({{"cell", to_json(l.cell)}, {"weight", l.weight}});
    return {
        {"format-version", kFormatVersion},
        {"grid-size", s.grid_size},
        {"start", to_json(s.start)},
        {"cells-of-interest", std::move(interests)},
        {"target-weight", s.target_weight},
        {"battery", s.battery},
        {"p-detect", s.p_detect},
        {"detection-metric", std::string(sar::to_string(s.metric))},
        {"discount", s.discount},
        {"battery-weight", s.battery_weight},
    };
}

sar::Scenario scenario_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("", "scenario must be a JSON object");
    static const std::set<std::string> known = {
        "format-version", "grid-size", "start", "cells-of-interest", "target-weight", "battery",
        "p-detect", "detection-metric", "discount", "battery-weight"};
    std::vector<FieldError> errors;
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) errors.push_back({"/" + key, "unknown field"});

    sar::Scenario s;
    Reader r(j, errors);
    int version = kFormatVersion;
    r.integer("format-version", version, false);
    if (version != kFormatVersion)
        errors.push_back({"/format-version", "unsupported version " + std::to_string(version)});
    r.integer("grid-size", s.grid_size, true);
    r.cell("start", s.start, true);
    r.number("target-weight", s.target_weight, true);
    r.integer("battery", s.battery, true);
    r.number("p-detect", s.p_detect, false);
    r.number("discount", s.discount, false);
    r.number("battery-weight", s.battery_weight, false);

    if (const json* m = r.field("detection-metric", false)) {
        const auto parsed = m->is_string() ? sar::parse_metric(m->get<std::string>()) : std::nullopt;
        if (parsed)
            s.metric = *parsed;
        else
            errors.push_back({"/detection-metric", "must be \"chebyshev\" or \"manhattan\""});
    }

    if (const json* list = r.field("cells-of-interest", true)) {
        if (!list->is_array()) {
            errors.push_back({"/cells-of-interest", "must be an array"});
        } else {
            for (std::size_t i = 0; i < list->size(); ++i) {
                const json& item = (*list)[i];
                const std::string base = "/cells-of-interest/" + std::to_string(i);
                if (!item.is_object()) {
                    errors.push_back({base, "must be an object with cell and weight"});
                    continue;
                }
                sar::InterestCell l;
                std::vector<FieldError> inner;
                Reader ir(item, inner);
                ir.cell("cell", l.cell, true);
                ir.number("weight", l.weight, true);
                for (const auto& [key, value] : item.items())
                    if (key != "cell" && key != "weight") inner.push_back({"/" + key, "unknown field"});
                for (auto& e : inner) errors.push_back({base + e.path, e.message});
                s.interests.push_back(l);
            }
        }
    }

    if (!errors.empty()) throw ValidationError(std::move(errors));
    sar::validate(s);
    return s;
}

std::string scenario_id(const sar::Scenario& s) { return hex64(fnv1a(to_json(s).dump())); }

json to_json(const solver::SolveStats& st) {
    return {{"epsilon", st.epsilon},       {"lower", st.lower},
            {"upper", st.upper},           {"gap", st.gap()},
            {"iterations", st.iterations}, {"backups", st.backups},
            {"seconds", st.seconds},       {"converged", st.converged},
            {"budget-exhausted", st.budget_exhausted}};
}

json to_json(const solver::AlphaPolicy& policy) {
    json strata = json::array();
    for (const auto& stratum : policy.strata()) {
        json vectors = json::array();
        for (const auto& v : stratum)
            vectors.push_back({{"action", std::string(sar::to_string(v.action))}, {"alpha", v.coefficients}});
        strata.push_back(std::move(vectors));
    }
    return {{"format-version", kFormatVersion},
            {"scenario", to_json(policy.scenario())},
            {"stats", to_json(policy.stats())},
            {"strata", std::move(strata)}};
}

solver::AlphaPolicy policy_from_json(const json& j) {
    try {
        if (j.at("format-version").get<int>() != kFormatVersion)
            throw ValidationError("/format-version", "unsupported version");
        sar::Scenario scenario = scenario_from_json(j.at("scenario"));
        const json& st = j.at("stats");
        solver::SolveStats stats;
        stats.epsilon = st.at("epsilon").get<double>();
        stats.lower = st.at("lower").get<double>();
        stats.upper = st.at("upper").get<double>();
        stats.iterations = st.at("iterations").get<std::int64_t>();
        stats.backups = st.at("backups").get<std::int64_t>();
        stats.seconds = st.at("seconds").get<double>();
        stats.converged = st.at("converged").get<bool>();
        stats.budget_exhausted = st.at("budget-exhausted").get<bool>();

        std::vector<std::vector<solver::AlphaVector>> strata;
        for (const auto& stratum : j.at("strata")) {
            auto& out = strata.emplace_back();
            for (const auto& v : stratum) {
                const auto action = sar::parse_action(v.at("action").get<std::string>());
                if (!action) throw ValidationError("/strata", "unknown action");
                out.push_back({v.at("alpha").get<std::vector<double>>(), *action});
            }
        }
        return solver::AlphaPolicy(std::move(scenario), std::move(strata), stats);
    } catch (const json::exception& e) {
        throw ValidationError("", std::string("malformed policy document: ") + e.what());
    }
}

std::string policy_id(const solver::AlphaPolicy& policy) { return hex64(fnv1a(to_json(policy).dump())); }

json to_json(const sar::SarState& s) {
    return {{"robot", to_json(s.robot)},
            {"target", to_json(s.target)},
            {"battery", s.battery},
            {"terminal", std::string(sar::to_string(s.terminal))}};
}

json to_json(const sar::Observation& o) {
    if (!o.detected) return {{"kind", "no-detect"}};
    return {{"kind", "detect"}, {"cell", to_json(*o.detected)}};
}

json to_json(const sar::SarBelief& b) {
    const auto p = b.target.probabilities();
    return {{"robot", to_json(b.robot)}, {"battery", b.battery}, {"target", std::vector<double>(p.begin(), p.end())}};
}

json to_json(const Trace& trace) {
    const auto& ep = trace.episode;
    json steps = json::array();
    for (const auto& st : ep.steps) {
        json step = {{"t", st.t},
                     {"state", to_json(st.state)},
                     {"action", st.action ? json(std::string(sar::to_string(*st.action))) : json(nullptr)},
                     {"observation", optional_or_null(st.observation)},
                     {"reward", st.reward},
                     {"discounted-reward", st.discounted_reward},
                     {"belief", optional_or_null(st.belief)}};
        steps.push_back(std::move(step));
    }
    return {{"format-version", kFormatVersion},
            {"seed", trace.seed},
            {"target", to_json(ep.target)},
            {"terminal-cause", std::string(sar::to_string(ep.cause))},
            {"return", ep.discounted_return},
            {"discounted-features", ep.discounted_features.values},
            {"steps", std::move(steps)}};
}

counterfactual::UserPath path_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("/path", "must be an array of [x, y] cells");
    counterfactual::UserPath path;
    std::vector<FieldError> errors;
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            path.cells.push_back(cell_from_json(j[i], "/path/" + std::to_string(i)));
        } catch (const ValidationError& e) {
            errors.insert(errors.end(), e.errors().begin(), e.errors().end());
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return path;
}

json to_json(const counterfactual::UserPath& path) {
    json out = json::array();
    for (const auto& c : path.cells) out.push_back(to_json(c));
    return out;
}

json to_json(const counterfactual::FeasibilityReport& r) {
    json unreached = json::array();
    for (const auto& c : r.unreached) unreached.push_back(to_json(c));
    return {{"original-length", r.original_length},
            {"executed-length", r.executed_length},
            {"cause", std::string(counterfactual::to_string(r.cause))},
            {"truncated-at", optional_or_null(r.truncated_at)},
            {"unreached", std::move(unreached)}};
}

json to_json(const features::FeatureExpectation& mu) {
    json out = {{"mu", mu.mu.values},
                {"method", mu.method == features::Method::Exact ? "exact" : "monte-carlo"},
                {"truncation-residual-bound", mu.truncation_residual_bound}};
    if (mu.standard_errors) out["standard-errors"] = *mu.standard_errors;
    return out;
}

json to_json(const explain::ContrastReport& r) {
    json ratios = json::array();
    for (const auto& f : r.ratios)
        ratios.push_back({{"feature", f.feature},
                          {"label", r.labels[f.feature]},
                          {"ratio", f.ratio ? json(*f.ratio) : json(nullptr)},
                          {"bucket", std::string(explain::to_string(f.bucket))}});
    return {{"labels", r.labels},
            {"mu-optimal", r.mu_optimal.values},
            {"mu-user", r.mu_user.values},
            {"alpha", r.alpha.alpha},
            {"contributions-optimal", r.contributions_optimal},
            {"contributions-user", r.contributions_user},
            {"value-optimal", r.value_optimal},
            {"value-user", r.value_user},
            {"dominant-feature", {{"feature", r.dominant_feature}, {"label", r.labels[r.dominant_feature]}}},
            {"ratio-facts", std::move(ratios)},
            {"infeasible-features", labelled(r.infeasible_features, r.labels)},
            {"mentioned-features", labelled(r.mentioned_features, r.labels)},
            {"weighting-factor", r.weighting_factor},
            {"zero-gap", r.zero_gap}};
}

json to_json(const explain::ExplanationText& e) {
    json subs = json::array();
    for (const auto& s : e.substitutions) subs.push_back({{"slot", s.slot}, {"text", s.text}, {"source", s.source}});
    return {{"template-set", e.template_set},
            {"text", e.text()},
            {"sentences", e.sentences},
            {"template-ids", e.template_ids},
            {"substitutions", std::move(subs)}};
}

json to_json(const CounterfactualResult& r) {
    auto names = [](const std::vector<sar::Action>& actions) {
        json out = json::array();
        for (auto a : actions) out.push_back(std::string(sar::to_string(a)));
        return out;
    };
    return {{"path", to_json(r.path)},
            {"actions", names(r.actions)},
            {"executed-actions", names(r.executed_actions)},
            {"feasibility-report", to_json(r.feasibility)},
            {"mu-user", to_json(r.mu_user)},
            {"mu-optimal", to_json(r.mu_optimal)},
            {"value-user", r.value_user},
            {"value-optimal", r.value_optimal},
            {"contrast-report", to_json(r.report)},
            {"explanation-text", r.explanation.text()},
            {"explanation", to_json(r.explanation)}};
}

json to_json(const ValidationError& e) {
    json errors = json::array();
    for (const auto& f : e.errors()) errors.push_back({{"path", f.path}, {"message", f.message}});
    return {{"error", "validation"}, {"message", e.what()}, {"errors", std::move(errors)}};
}

}  // namespace sarx::service
