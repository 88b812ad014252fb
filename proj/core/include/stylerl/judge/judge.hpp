#pragma once

#include <vector>

#include "stylerl/judge/types.hpp"
#include "stylerl/sample.hpp"
#include "stylerl/text.hpp"

namespace stylerl::judge {

// The three verdicts for one generation.
struct GenerationJudgments {
  FormatJudgment format;
  ThoughtJudgment thought;
  TranslationJudgment translation;
};

// One scoring request; pointers stay owned by the caller.
struct JudgeRequest {
  const SourceSample* sample = nullptr;
  const ParsedGeneration* parsed = nullptr;
};

// Judge abstraction over the three verdict kinds. Implementations must keep
// score_batch results in request order, whatever their internal concurrency.
class Judge {
 public:
  virtual ~Judge() = default;

  virtual FormatJudgment judge_format(const SourceSample& sample,
                                      const ParsedGeneration& parsed) = 0;
  virtual ThoughtJudgment judge_thought(const SourceSample& sample,
                                        const ParsedGeneration& parsed) = 0;
  virtual TranslationJudgment judge_translation(
      const SourceSample& sample, const ParsedGeneration& parsed) = 0;

  // Default implementation scores sequentially; remote judges override it to
  // run requests concurrently.
  virtual std::vector<GenerationJudgments> score_batch(
      const std::vector<JudgeRequest>& requests);
};

}  // namespace stylerl::judge
