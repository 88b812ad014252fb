#include "stylerl/judge/mock.hpp"

#include <cmath>

#include "stylerl/env.hpp"
#include "stylerl/policy.hpp"
#include "stylerl/rewards.hpp"

namespace stylerl::judge {

MockJudge::MockJudge(MockJudgeConfig config) : config_(std::move(config)) {}

FormatJudgment MockJudge::judge_format(const SourceSample&,
                                       const ParsedGeneration& parsed) {
  if (!parsed.structure_ok) return FormatJudgment{3};
  if (parsed.translation.find(config_.explanation_marker) !=
      std::string::npos) {
    return FormatJudgment{2};
  }
  return FormatJudgment{1};
}

ThoughtJudgment MockJudge::judge_thought(const SourceSample&,
                                         const ParsedGeneration& parsed) {
  const int tokens = count_thought_tokens(parsed.thought);
  if (tokens >= config_.detailed_threshold) {
    return ThoughtJudgment{ThoughtLabel::detailed};
  }
  if (tokens >= config_.slight_threshold) {
    return ThoughtJudgment{ThoughtLabel::slight};
  }
  return ThoughtJudgment{ThoughtLabel::lack};
}

TranslationJudgment MockJudge::judge_translation(
    const SourceSample& sample, const ParsedGeneration& parsed) {
  const auto action = policy::TemplateSequencePolicy::recover(parsed);
  if (!action) {
    throw UnparseableJudgment(
        "mock judge cannot recover a style action from the translation");
  }
  const double visible =
      env::judge_visible_score(sample, action->style, config_.classical_bias);
  TranslationJudgment out;
  out.score = rewards::quantize_translation_score(visible, config_.scale);
  out.reason = std::string(style_name(action->style)) +
               " style scores " + std::to_string(visible) + " on the rubric";
  out.clamped = false;
  return out;
}

}  // namespace stylerl::judge
