#include "sarx/explain/render.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "sarx/errors.hpp"

namespace sarx::explain {

namespace {

struct TemplateSet {
    std::string id;
    std::map<std::string, std::string, std::less<>> templates;
    std::map<RatioBucket, std::string> frequency;
};

const std::vector<TemplateSet>& builtin_sets() {
    static const std::vector<TemplateSet> sets = {
        {"default-v1",
         {
             {"feasibility", "The battery constraint makes it impossible for either policy to reach {features}."},
             {"dominant",
              "Over all possible target locations, the optimal policy {verb} {frequency} the user policy "
              "({mu_optimal} vs {mu_user})."},
             {"mention", "It also {verb} {frequency} the user policy ({mu_optimal} vs {mu_user})."},
             {"weighting", "Since {dominant} has a much higher weighting than {others}, {winner} outperforms {loser}."},
             {"conclusion",
              "The optimal policy has an expected reward of {value_optimal}, against {value_user} for the user "
              "policy."},
             {"zero-gap", "Both policies perform identically in expectation."},
         },
         {
             {RatioBucket::Neither, "as often as"},
             {RatioBucket::AlmostNever, "almost never, relative to"},
             {RatioBucket::MuchLess, "much less often than"},
             {RatioBucket::AboutHalf, "about half as often as"},
             {RatioBucket::Less, "less often than"},
             {RatioBucket::AboutSame, "about as often as"},
             {RatioBucket::More, "more often than"},
             {RatioBucket::AboutTwice, "about twice as often as"},
             {RatioBucket::ManyTimes, "many times as often as"},
         }},
    };
    return sets;
}

std::string number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out += (i + 1 == items.size()) ? (items.size() > 2 ? ", and " : " and ") : ", ";
        out += items[i];
    }
    return out;
}

class Renderer {
public:
    Renderer(const ContrastReport& r, const TemplateSet& set) : r_(r), set_(set) { out_.template_set = set.id; }

    ExplanationText run() {
        if (r_.zero_gap) {
            emit("zero-gap", {});
            return std::move(out_);
        }
        if (!r_.infeasible_features.empty()) {
            std::vector<std::string> names;
            for (std::size_t k : r_.infeasible_features) names.push_back(r_.labels[k]);
            emit("feasibility", {{"features", join(names), "infeasible_features"}});
        }
        frequency("dominant", r_.dominant_feature);
        for (std::size_t k : r_.mentioned_features) frequency("mention", k);
        weighting();
        emit("conclusion", {{"value_optimal", number(r_.value_optimal), "value_optimal"},
                            {"value_user", number(r_.value_user), "value_user"}});
        return std::move(out_);
    }

private:
    std::string verb(std::size_t k) const {
        if (k == r_.target_feature()) return "finds the target";
        if (k == r_.battery_feature()) return "exhausts its battery";
        return "visits " + r_.labels[k];
    }

    std::string noun(std::size_t k) const {
        if (k == r_.target_feature()) return "the target";
        if (k == r_.battery_feature()) return "battery exhaustion";
        return r_.labels[k];
    }

    void frequency(const std::string& id, std::size_t k) {
        const auto i = std::to_string(k);
        emit(id, {{"verb", verb(k), "labels[" + i + "]"},
                  {"frequency", set_.frequency.at(r_.ratios[k].bucket), "ratios[" + i + "]"},
                  {"mu_optimal", number(r_.mu_optimal[k]), "mu_optimal[" + i + "]"},
                  {"mu_user", number(r_.mu_user[k]), "mu_user[" + i + "]"}});
    }

    void weighting() {
        const std::size_t d = r_.dominant_feature;
        const double ad = std::abs(r_.alpha[d]);
        if (ad == 0.0 || r_.value_optimal == r_.value_user) return;
        std::vector<std::string> others;
        for (std::size_t k = 0; k < r_.alpha.size(); ++k) {
            if (k == d || r_.alpha[k] == 0.0) continue;
            if (ad < r_.weighting_factor * std::abs(r_.alpha[k])) return;
            others.push_back(noun(k));
        }
        if (others.empty()) return;
        const bool optimal_wins = r_.value_optimal > r_.value_user;
        emit("weighting", {{"dominant", noun(d), "alpha[" + std::to_string(d) + "]"},
                           {"others", join(others), "alpha"},
                           {"winner", optimal_wins ? "the optimal policy" : "the user policy",
                            "value_optimal,value_user"},
                           {"loser", optimal_wins ? "the user policy" : "the optimal policy",
                            "value_optimal,value_user"}});
    }

    void emit(const std::string& id, const std::vector<Substitution>& subs) {
        std::string text = set_.templates.find(id)->second;
        for (const auto& s : subs) {
            const std::string slot = "{" + s.slot + "}";
            for (auto pos = text.find(slot); pos != std::string::npos; pos = text.find(slot, pos + s.text.size()))
                text.replace(pos, slot.size(), s.text);
            out_.substitutions.push_back(s);
        }
        out_.sentences.push_back(std::move(text));
        out_.template_ids.push_back(id);
    }

    const ContrastReport& r_;
    const TemplateSet& set_;
    ExplanationText out_;
};

}  // namespace

std::string ExplanationText::text() const {
    std::string out;
    for (const auto& s : sentences) {
        if (!out.empty()) out += ' ';
        out += s;
    }
    return out;
}

std::vector<std::string> template_sets() {
    std::vector<std::string> ids;
    for (const auto& s : builtin_sets()) ids.push_back(s.id);
    return ids;
}

ExplanationText render_explanation(const ContrastReport& report, std::string_view template_set) {
    for (const auto& set : builtin_sets())
        if (set.id == template_set) return Renderer(report, set).run();
    throw UnknownTemplateSet("unknown template set \"" + std::string(template_set) + "\"");
}

}  // namespace sarx::explain
