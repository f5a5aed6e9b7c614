#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sarx/explain/contrast.hpp"

namespace sarx::explain {

inline constexpr std::string_view kDefaultTemplateSet = "default-v1";

/// Where a number in the text came from, e.g. "mu_optimal[1]".
struct Substitution {
    std::string slot;
    std::string text;
    std::string source;

    bool operator==(const Substitution&) const = default;
};

struct ExplanationText {
    std::string template_set;
    std::vector<std::string> sentences;
    std::vector<std::string> template_ids;  // one per sentence
    std::vector<Substitution> substitutions;

    /// Sentences joined with single spaces.
    std::string text() const;

    bool operator==(const ExplanationText&) const = default;
};

/// Ids of the built-in template sets.
std::vector<std::string> template_sets();

/// Fills the templates of `template_set` from `report`. Throws UnknownTemplateSet.
ExplanationText render_explanation(const ContrastReport& report,
                                   std::string_view template_set = kDefaultTemplateSet);

}  // namespace sarx::explain
