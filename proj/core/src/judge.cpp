#include "stylerl/judge/judge.hpp"

#include <stdexcept>

namespace stylerl::judge {

std::vector<GenerationJudgments> Judge::score_batch(
    const std::vector<JudgeRequest>& requests) {
  std::vector<GenerationJudgments> out;
  out.reserve(requests.size());
  for (const JudgeRequest& req : requests) {
    if (req.sample == nullptr || req.parsed == nullptr) {
      throw std::invalid_argument("score_batch: null request");
    }
    GenerationJudgments j;
    j.format = judge_format(*req.sample, *req.parsed);
    j.thought = judge_thought(*req.sample, *req.parsed);
    j.translation = judge_translation(*req.sample, *req.parsed);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace stylerl::judge
