#pragma once

#include <string_view>

#include "stylerl/judge/types.hpp"

namespace stylerl::judge {

// Extracts the last "Judgment result: N" verdict (N in 1..3). The phrase is
// matched case-insensitively; whitespace around the colon is arbitrary and
// both the ASCII colon and the full-width colon U+FF1A are accepted. Raises
// UnparseableJudgment when no verdict is present.
FormatJudgment parse_format_judgment(std::string_view reply);

// Finds the last occurrence of one of the three labels ("a lack of analysis",
// "slight analysis", "detailed analysis"), case-insensitively. The label whose
// occurrence starts last wins. Raises UnparseableJudgment when none occurs.
ThoughtJudgment parse_thought_judgment(std::string_view reply);

// Locates the first well-formed JSON object carrying an integer "score" field
// (an optional string "reason" is picked up too). Markdown fences and prose
// around the object are ignored, since the scan is brace-driven. Scores
// outside [0,100] are clamped and flagged. Raises UnparseableJudgment when no
// such object exists.
TranslationJudgment parse_translation_judgment(std::string_view reply);

// Parses the reply to a general-rating (GRF) prompt: the last standalone
// integer in [0,100] wins. Raises UnparseableJudgment when none occurs.
int parse_grf_score(std::string_view reply);

}  // namespace stylerl::judge
