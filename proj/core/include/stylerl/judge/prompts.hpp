#pragma once

#include <string>
#include <string_view>

#include "stylerl/sample.hpp"
#include "stylerl/scale.hpp"

namespace stylerl::judge {

// A chat request: optional system message plus one user message.
struct PromptMessages {
  std::string system;  // empty = no system message
  std::string user;
};

// Renders `tmpl` with single-pass slot substitution. Recognized slots:
// {src}, {trans}, {think}, [src lang], [trg lang]. Substituted content is
// never re-scanned, so slot-shaped text inside the sample stays literal.
std::string render_template(std::string_view tmpl, const SourceSample& sample,
                            std::string_view translation,
                            std::string_view thought = {});

// The three judge prompts. Wording is frozen; golden-file tests pin the exact
// bytes, so any edit here must update tests/golden in the same change.
std::string render_format_prompt(const SourceSample& sample,
                                 std::string_view translation);
std::string render_thought_prompt(const SourceSample& sample,
                                  std::string_view thought);
PromptMessages render_translation_prompts(
    const SourceSample& sample, std::string_view translation,
    ScaleKind scale = ScaleKind::points100);

// Raw templates, exposed for the golden tests and for config-driven overrides.
std::string_view format_prompt_template();
std::string_view thought_prompt_template();
std::string_view translation_system_prompt(ScaleKind scale);
std::string_view translation_user_template();

// Stand-in general-rating template (GRF slot). NOT the published wording;
// deployments that need the canonical text must override it via
// JudgeEndpointConfig::grf_template.
std::string_view default_grf_template();

}  // namespace stylerl::judge
