#pragma once

#include <stdexcept>
#include <string>

namespace stylerl::judge {

// Raised when a judge reply carries no recognizable verdict.
struct UnparseableJudgment : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when the remote endpoint stays unreachable after all retries.
struct JudgeUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Verdict of the format check: 1 = only the translation, 2 = translation plus
// explanation, 3 = explanation only.
struct FormatJudgment {
  int category = 0;

  friend bool operator==(const FormatJudgment&, const FormatJudgment&) = default;
};

// Depth of analysis the judge saw in the thought segment. Numeric values are
// the thought reward directly.
enum class ThoughtLabel { lack = 0, slight = 1, detailed = 2 };

struct ThoughtJudgment {
  ThoughtLabel label = ThoughtLabel::lack;

  friend bool operator==(const ThoughtJudgment&, const ThoughtJudgment&) = default;
};

struct TranslationJudgment {
  std::string reason;
  int score = 0;         // on the active scale; [0,100] for the full rubric
  bool clamped = false;  // raw score fell outside [0,100] and was clamped
};

}  // namespace stylerl::judge
