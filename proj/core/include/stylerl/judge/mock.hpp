#pragma once

#include <string>

#include "stylerl/judge/judge.hpp"
#include "stylerl/scale.hpp"

namespace stylerl::judge {

struct MockJudgeConfig {
  ScaleKind scale = ScaleKind::points100;
  double classical_bias = 10.0;
  // Thought token thresholds: >= detailed_threshold reads as detailed,
  // >= slight_threshold as slight, anything shorter as lack of analysis.
  int detailed_threshold = 40;
  int slight_threshold = 10;
  // A translation containing this substring counts as carrying an
  // explanation (format category 2).
  std::string explanation_marker = "(note:";
};

// Deterministic judge for StyleWorld sources. It recovers the style action
// from the template policy's markers and scores from the source's quality
// features through the judge_visible_score lens, then quantizes onto the
// configured scale. Pure: identical inputs always produce identical
// judgments.
class MockJudge final : public Judge {
 public:
  explicit MockJudge(MockJudgeConfig config = {});

  FormatJudgment judge_format(const SourceSample& sample,
                              const ParsedGeneration& parsed) override;
  ThoughtJudgment judge_thought(const SourceSample& sample,
                                const ParsedGeneration& parsed) override;
  TranslationJudgment judge_translation(const SourceSample& sample,
                                        const ParsedGeneration& parsed) override;

  const MockJudgeConfig& config() const { return config_; }

 private:
  MockJudgeConfig config_;
};

}  // namespace stylerl::judge
